#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "csv.hpp"

namespace ftlab {

struct ConfigError : std::runtime_error {
  std::size_t line, column;
  ConfigError(std::size_t line_, std::size_t column_, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
};

// All experiment settings in one bag, shared by the config file and the
// command line (flags override file values). Zero-valued numeric fields mean
// "derive a default" where one exists.
struct Settings {
  std::string problem;         // onemax | leadingones | binval | mst
  std::size_t n = 0;           // problem dimension (bit count)
  std::size_t k = 0;           // target fitness; 0 = problem-dependent default
  std::string model = "sbm";   // rls | rls2 | sbm | shift | resample | fast | shift02
  double p = 0.0;              // mutation rate; 0 = 1/n
  double beta = 1.5;           // heavy-tail exponent
  std::size_t mu = 1;
  std::size_t lambda = 1;
  std::string init = "worst";  // worst | random
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;    // evaluation budget; 0 = derived from n
  std::string out;             // output path; empty = standard output
  std::string graph;           // edge-list file for the spanning-tree problem
  std::size_t s = 0;           // gap exponent for the binary-value problem
  double alpha = 0.0;          // free parameter of the binary-value upper bound; 0 = default
};

namespace detail {

inline const std::vector<std::string>& settings_keys() {
  static const std::vector<std::string> keys = {
      "problem", "n",    "k",    "model",  "p",   "beta", "mu",    "lambda",
      "init",    "runs", "seed", "budget", "out", "graph", "s",    "alpha"};
  return keys;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::string nearest_key(const std::string& key) {
  std::string best;
  std::size_t best_d = static_cast<std::size_t>(-1);
  for (const auto& candidate : settings_keys()) {
    std::size_t d = edit_distance(key, candidate);
    if (d < best_d) {
      best_d = d;
      best = candidate;
    }
  }
  return best_d <= std::max<std::size_t>(2, key.size() / 2) ? best : "";
}

inline std::string trim(const std::string& s, std::size_t* first_kept = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (first_kept) *first_kept = b;
  return s.substr(b, e - b);
}

template <class T>
T parse_unsigned(const std::string& value, std::size_t line, std::size_t col) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(line, col, "expected a nonnegative integer, got '" + value + "'");
  try {
    return static_cast<T>(std::stoull(value));
  } catch (const std::exception&) {
    throw ConfigError(line, col, "integer out of range: '" + value + "'");
  }
}

inline double parse_real(const std::string& value, std::size_t line, std::size_t col) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, col, "expected a number, got '" + value + "'");
  }
}

inline void assign_setting(Settings& s, const std::string& key, const std::string& value,
                           std::size_t line, std::size_t key_col, std::size_t value_col) {
  if (key == "problem") s.problem = value;
  else if (key == "n") s.n = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "k") s.k = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "model") s.model = value;
  else if (key == "p") s.p = parse_real(value, line, value_col);
  else if (key == "beta") s.beta = parse_real(value, line, value_col);
  else if (key == "mu") s.mu = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "lambda") s.lambda = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "init") s.init = value;
  else if (key == "runs") s.runs = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "seed") s.seed = parse_unsigned<std::uint64_t>(value, line, value_col);
  else if (key == "budget") s.budget = parse_unsigned<std::uint64_t>(value, line, value_col);
  else if (key == "out") s.out = value;
  else if (key == "graph") s.graph = value;
  else if (key == "s") s.s = parse_unsigned<std::size_t>(value, line, value_col);
  else if (key == "alpha") s.alpha = parse_real(value, line, value_col);
  else {
    std::string hint = nearest_key(key);
    std::string message = "unknown key '" + key + "'";
    if (!hint.empty()) message += " (did you mean '" + hint + "'?)";
    throw ConfigError(line, key_col, message);
  }
}

}  // namespace detail

// Parses the plain-text `key = value` format: one pair per line, '#' starts a
// comment, blank lines ignored. Errors carry 1-based line and column.
inline Settings parse_settings(std::istream& in, Settings base = {}) {
  Settings s = std::move(base);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::size_t lead = 0;
    std::string body = detail::trim(line, &lead);
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, lead + 1, "expected 'key = value'");
    std::size_t key_lead = 0, value_lead = 0;
    std::string key = detail::trim(body.substr(0, eq), &key_lead);
    std::string value = detail::trim(body.substr(eq + 1), &value_lead);
    if (key.empty()) throw ConfigError(lineno, lead + 1, "missing key before '='");
    std::size_t key_col = lead + key_lead + 1;
    std::size_t value_col = lead + eq + 1 + value_lead + 1;
    if (value.empty()) throw ConfigError(lineno, value_col, "missing value for '" + key + "'");
    detail::assign_setting(s, key, value, lineno, key_col, value_col);
  }
  return s;
}

inline Settings load_settings(const std::string& path, Settings base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_settings(in, std::move(base));
}

// Emits every field, in the documented key order; parsing the result yields
// an equal Settings value.
inline std::string serialize_settings(const Settings& s) {
  std::ostringstream out;
  if (!s.problem.empty()) out << "problem = " << s.problem << '\n';
  out << "n = " << s.n << '\n';
  out << "k = " << s.k << '\n';
  out << "model = " << s.model << '\n';
  out << "p = " << format_double(s.p) << '\n';
  out << "beta = " << format_double(s.beta) << '\n';
  out << "mu = " << s.mu << '\n';
  out << "lambda = " << s.lambda << '\n';
  out << "init = " << s.init << '\n';
  out << "runs = " << s.runs << '\n';
  out << "seed = " << s.seed << '\n';
  out << "budget = " << s.budget << '\n';
  if (!s.out.empty()) out << "out = " << s.out << '\n';
  if (!s.graph.empty()) out << "graph = " << s.graph << '\n';
  out << "s = " << s.s << '\n';
  out << "alpha = " << format_double(s.alpha) << '\n';
  return out.str();
}

// Returns the missing required fields (problem and n for the bit problems,
// problem and graph for the spanning-tree problem).
inline std::vector<std::string> missing_required(const Settings& s) {
  std::vector<std::string> missing;
  if (s.problem.empty()) missing.push_back("problem");
  if (s.problem == "mst") {
    if (s.graph.empty()) missing.push_back("graph");
  } else if (s.n == 0) {
    missing.push_back("n");
  }
  return missing;
}

}  // namespace ftlab
