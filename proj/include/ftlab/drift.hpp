#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "markov.hpp"
#include "quadrature.hpp"

namespace ftlab {

namespace detail {

// The drift theorems require h positive and monotone increasing on the
// integration domain; enforced on 1000 sampled points.
inline void check_h(const std::function<double(double)>& h, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("drift: empty potential domain");
  const int samples = 1000;
  double prev = 0.0;
  for (int t = 0; t <= samples; ++t) {
    double x = lo + (hi - lo) * static_cast<double>(t) / samples;
    double v = h(x);
    if (!(v > 0.0)) throw std::invalid_argument("drift: h must be positive on the domain");
    if (t > 0 && v < prev * (1.0 - 1e-9))
      throw std::invalid_argument("drift: h must be monotone increasing on the domain");
    prev = v;
  }
}

}  // namespace detail

// Piecewise-linear monotone interpolant through (xs, ys), clamped to the end
// values outside the node range. xs must be strictly increasing.
inline std::function<double(double)> make_interpolant(std::vector<double> xs,
                                                      std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("make_interpolant: need equally many nodes and values");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument("make_interpolant: nodes must be strictly increasing");
  return [xs = std::move(xs), ys = std::move(ys)](double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    double t = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return ys[hi - 1] + t * (ys[hi] - ys[hi - 1]);
  };
}

// Additive drift, upper: E[T] <= (X0 - E[X_T]) / delta, with delta a uniform
// lower bound on the per-step drift.
inline double additive_upper(double x0, double e_xt, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("additive_upper: delta must be positive");
  return (x0 - e_xt) / delta;
}

// Additive drift, lower: E[T] >= (X0 - E[X_T]) / delta, with delta a uniform
// upper bound on the per-step drift. Passing the target threshold k instead
// of E[X_T] gives the (often much weaker) overshoot-blind variant.
inline double additive_lower(double x0, double e_xt_or_k, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("additive_lower: delta must be positive");
  return (x0 - e_xt_or_k) / delta;
}

// Multiplicative drift, upper: E[T] <= (1 + ln(X0/k')) / delta.
inline double multiplicative_upper(double x0, double kprime, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("multiplicative_upper: delta must be positive");
  if (!(kprime > 0.0) || x0 < kprime)
    throw std::invalid_argument("multiplicative_upper: requires X0 >= k' > 0");
  return (1.0 + std::log(x0 / kprime)) / delta;
}

// Variable drift, upper: E[T] <= k'/h(k') + integral_{k'}^{X0} dz/h(z).
inline double variable_upper(const std::function<double(double)>& h, double kprime, double x0) {
  if (!(kprime > 0.0) || x0 < kprime)
    throw std::invalid_argument("variable_upper: requires X0 >= k' > 0");
  detail::check_h(h, kprime, x0);
  return kprime / h(kprime) + integrate([&h](double z) { return 1.0 / h(z); }, kprime, x0);
}

// Variable drift, lower: E[T] >= integral_{k}^{X0} dz/h(z), with h an upper
// envelope of the drift evaluated at the minimal reachable next value.
inline double variable_lower(const std::function<double(double)>& h, double k, double x0) {
  if (x0 < k) throw std::invalid_argument("variable_lower: requires X0 >= k");
  detail::check_h(h, k, x0);
  return integrate([&h](double z) { return 1.0 / h(z); }, k, x0);
}

// Overshoot-aware variable drift, upper:
// E[T] <= (k' - E[X_T])/h(k') + integral_{k'}^{X0} dz/h(z).
inline double overshoot_variable_upper(const std::function<double(double)>& h, double kprime,
                                       double x0, double e_xt) {
  if (!(kprime > 0.0) || x0 < kprime)
    throw std::invalid_argument("overshoot_variable_upper: requires X0 >= k' > 0");
  if (e_xt > kprime)
    throw std::invalid_argument("overshoot_variable_upper: requires E[X_T] <= k'");
  detail::check_h(h, kprime, x0);
  return (kprime - e_xt) / h(kprime) +
         integrate([&h](double z) { return 1.0 / h(z); }, kprime, x0);
}

// Overshoot-aware multiplicative drift, upper:
// E[T] <= (1/delta)(1 - E[X_T]/k' + ln(X0/k')).
inline double overshoot_multiplicative_upper(double delta, double kprime, double x0,
                                             double e_xt) {
  if (!(delta > 0.0))
    throw std::invalid_argument("overshoot_multiplicative_upper: delta must be positive");
  if (!(kprime > 0.0) || x0 < kprime)
    throw std::invalid_argument("overshoot_multiplicative_upper: requires X0 >= k' > 0");
  if (e_xt > kprime)
    throw std::invalid_argument("overshoot_multiplicative_upper: requires E[X_T] <= k'");
  return (1.0 - e_xt / kprime + std::log(x0 / kprime)) / delta;
}

// Two-state cautionary chain: potential 1 at the start state, one success
// move per step with probability 1/n landing at potential 1-n (done). The
// exact hitting time is n; plugging the threshold 0 into the additive bound
// instead of the true E[X_T] = 1-n collapses it to 1.
inline DenseChain example6_chain(std::size_t n) {
  if (n < 1) throw std::invalid_argument("example6_chain: n >= 1 required");
  DenseChain c;
  c.P = {{1.0, 0.0},
         {1.0 / static_cast<double>(n), 1.0 - 1.0 / static_cast<double>(n)}};
  c.potential = {1.0 - static_cast<double>(n), 1.0};
  c.absorbing = {1, 0};
  return c;
}

struct DriftTheoremResult {
  std::string name;
  BoundKind kind = BoundKind::upper;
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::string status;  // ok | violated | skipped | informational
  double margin = std::numeric_limits<double>::quiet_NaN();  // bound - exact
  std::string note;
};

struct DriftReport {
  double exact = 0.0;
  double start_potential = 0.0;
  double overshoot_oracle = 0.0;
  double threshold = 0.0;
  double max_expected_step = 0.0;  // informational, for the additive lower theorem
  std::vector<DriftTheoremResult> results;

  bool all_ok() const {
    for (const auto& r : results)
      if (r.status == "violated") return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["exact"] = exact;
    j["start_potential"] = start_potential;
    j["overshoot_oracle"] = overshoot_oracle;
    j["threshold"] = threshold;
    j["max_expected_step"] = max_expected_step;
    j["theorems"] = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json e;
      e["name"] = r.name;
      e["kind"] = to_string(r.kind);
      if (std::isnan(r.bound)) e["bound"] = nullptr; else e["bound"] = r.bound;
      e["exact"] = exact;
      e["status"] = r.status;
      if (std::isnan(r.margin)) e["margin"] = nullptr; else e["margin"] = r.margin;
      if (!r.note.empty()) e["note"] = r.note;
      j["theorems"].push_back(e);
    }
    return j;
  }

  std::string to_json_string(int indent = 2) const { return to_json().dump(indent); }
};

// Evaluates every drift theorem against the exact hitting time of a finite
// chain, deriving drift constants and envelopes from the chain itself:
// additive constants are the extreme per-state drifts, the variable-drift
// envelopes interpolate the per-state drifts against potential (upper
// theorems) or against the minimal reachable next potential (lower theorem),
// and the overshoot oracle E[X_T | start] comes from the absorption solve.
// Theorems whose preconditions cannot be met from the chain data are reported
// as skipped. `only` restricts to the named theorems (empty = all).
inline DriftReport verify_drift_on_chain(const DenseChain& chain, std::size_t start,
                                         double threshold,
                                         const std::vector<std::string>& only = {}) {
  chain.check();
  if (start >= chain.states())
    throw std::invalid_argument("verify_drift_on_chain: start state out of range");

  DriftReport report;
  report.threshold = threshold;
  report.start_potential = chain.potential[start];
  if (chain.absorbing[start]) {
    report.exact = 0.0;
    report.overshoot_oracle = chain.potential[start];
    return report;
  }
  std::vector<double> times = dense_hitting_times(chain);
  std::vector<double> values = dense_absorption_values(chain);
  report.exact = times[start];
  report.overshoot_oracle = values[start];

  std::size_t S = chain.states();
  std::vector<std::size_t> transient;
  for (std::size_t i = 0; i < S; ++i)
    if (!chain.absorbing[i]) transient.push_back(i);

  // per-state drift and minimal reachable next potential
  std::map<std::size_t, double> drift, reach_min;
  double delta_min = std::numeric_limits<double>::infinity();
  double delta_max = -std::numeric_limits<double>::infinity();
  double mult_min = std::numeric_limits<double>::infinity();
  double phi_min = std::numeric_limits<double>::infinity();
  double max_step = 0.0;
  bool transient_positive = true;
  for (std::size_t i : transient) {
    double next = 0.0, step = 0.0;
    double lowest = chain.potential[i];
    for (std::size_t j = 0; j < S; ++j) {
      if (chain.P[i][j] <= 0.0) continue;
      next += chain.P[i][j] * chain.potential[j];
      step += chain.P[i][j] * std::abs(chain.potential[j] - chain.potential[i]);
      lowest = std::min(lowest, chain.potential[j]);
    }
    double d = chain.potential[i] - next;
    drift[i] = d;
    reach_min[i] = lowest;
    delta_min = std::min(delta_min, d);
    delta_max = std::max(delta_max, d);
    phi_min = std::min(phi_min, chain.potential[i]);
    max_step = std::max(max_step, step);
    if (chain.potential[i] > 0.0)
      mult_min = std::min(mult_min, d / chain.potential[i]);
    else
      transient_positive = false;
  }
  report.max_expected_step = max_step;
  // the plain multiplicative/variable upper theorems assume a nonnegative
  // process; overshooting to a negative potential (the cautionary two-state
  // chain) invalidates them, and only the overshoot-aware variants apply
  bool phi_nonneg_everywhere = true;
  for (std::size_t i = 0; i < S; ++i)
    if (chain.potential[i] < 0.0) phi_nonneg_everywhere = false;

  double x0 = chain.potential[start];
  double e_xt = report.overshoot_oracle;
  double exact = report.exact;
  double tol = 1e-9 * std::max(1.0, std::abs(exact));

  auto wanted = [&only](const std::string& name) {
    if (only.empty()) return true;
    for (const auto& s : only)
      if (s == name) return true;
    return false;
  };
  auto push = [&](std::string name, BoundKind kind, double bound, std::string note,
                  bool informational = false) {
    DriftTheoremResult r;
    r.name = std::move(name);
    r.kind = kind;
    r.bound = bound;
    r.margin = bound - exact;
    r.note = std::move(note);
    if (informational) {
      r.status = "informational";
    } else if (kind == BoundKind::upper) {
      r.status = bound >= exact - tol ? "ok" : "violated";
    } else {
      r.status = bound <= exact + tol ? "ok" : "violated";
    }
    report.results.push_back(std::move(r));
  };
  auto skip = [&](std::string name, BoundKind kind, std::string why) {
    DriftTheoremResult r;
    r.name = std::move(name);
    r.kind = kind;
    r.status = "skipped";
    r.note = std::move(why);
    report.results.push_back(std::move(r));
  };

  // additive theorems
  if (wanted("additive_upper")) {
    if (delta_min > 0.0)
      push("additive_upper", BoundKind::upper, additive_upper(x0, e_xt, delta_min),
           "delta = min per-state drift; overshoot oracle E[X_T]");
    else
      skip("additive_upper", BoundKind::upper, "nonpositive drift at some state");
  }
  if (wanted("additive_upper_naive")) {
    if (delta_min > 0.0)
      push("additive_upper_naive", BoundKind::upper,
           additive_upper(x0, threshold, delta_min),
           "threshold plugged in for E[X_T]; cautionary, not a valid bound", true);
    else
      skip("additive_upper_naive", BoundKind::upper, "nonpositive drift at some state");
  }
  if (wanted("additive_lower")) {
    if (delta_max > 0.0)
      push("additive_lower", BoundKind::lower, additive_lower(x0, e_xt, delta_max),
           "delta = max per-state drift; expected step size <= " + std::to_string(max_step) +
               " (informational)");
    else
      skip("additive_lower", BoundKind::lower, "no positive drift anywhere");
  }

  // multiplicative theorems
  bool mult_defined = transient_positive && mult_min > 0.0 && phi_min > 0.0;
  if (wanted("multiplicative_upper")) {
    if (mult_defined && phi_nonneg_everywhere)
      push("multiplicative_upper", BoundKind::upper,
           multiplicative_upper(x0, phi_min, mult_min),
           "delta = min drift/potential; k' = min transient potential");
    else
      skip("multiplicative_upper", BoundKind::upper,
           "needs nonnegative potentials and positive multiplicative drift");
  }
  if (wanted("overshoot_multiplicative_upper")) {
    if (mult_defined && e_xt <= phi_min)
      push("overshoot_multiplicative_upper", BoundKind::upper,
           overshoot_multiplicative_upper(mult_min, phi_min, x0, e_xt),
           "overshoot oracle E[X_T]");
    else
      skip("overshoot_multiplicative_upper", BoundKind::upper,
           "needs positive transient potentials, positive multiplicative drift, E[X_T] <= k'");
  }

  // variable-drift envelopes from per-state data
  std::vector<double> phis;
  for (std::size_t i : transient) phis.push_back(chain.potential[i]);
  std::sort(phis.begin(), phis.end());
  phis.erase(std::unique(phis.begin(), phis.end()), phis.end());

  bool upper_env_ok = phi_min > 0.0;
  std::function<double(double)> h_upper;
  if (upper_env_ok) {
    // h(x) = min drift over transient states with potential >= x: increasing,
    // and under-estimates the drift everywhere, as the upper theorems need
    std::vector<double> hs(phis.size());
    for (std::size_t t = 0; t < phis.size(); ++t) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i : transient)
        if (chain.potential[i] >= phis[t] - 1e-15) m = std::min(m, drift.at(i));
      hs[t] = m;
      if (!(m > 0.0)) upper_env_ok = false;
    }
    if (upper_env_ok) h_upper = make_interpolant(phis, hs);
  }
  if (wanted("variable_upper")) {
    if (upper_env_ok && phi_nonneg_everywhere)
      push("variable_upper", BoundKind::upper, variable_upper(h_upper, phi_min, x0),
           "h = running-min drift envelope over potential");
    else
      skip("variable_upper", BoundKind::upper,
           "needs nonnegative potentials and positive drift envelope");
  }
  if (wanted("overshoot_variable_upper")) {
    if (upper_env_ok && e_xt <= phi_min)
      push("overshoot_variable_upper", BoundKind::upper,
           overshoot_variable_upper(h_upper, phi_min, x0, e_xt),
           "h = running-min drift envelope; overshoot oracle E[X_T]");
    else
      skip("overshoot_variable_upper", BoundKind::upper,
           "needs positive drift envelope and E[X_T] <= k'");
  }
  if (wanted("variable_lower")) {
    // h(x) = max drift over states whose minimal reachable next potential is
    // <= x: increasing, and over-estimates the drift at c(X_t), as the lower
    // theorem needs
    std::vector<double> cs;
    for (std::size_t i : transient) cs.push_back(reach_min.at(i));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<double> hs(cs.size());
    bool ok = true;
    for (std::size_t t = 0; t < cs.size(); ++t) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i : transient)
        if (reach_min.at(i) <= cs[t] + 1e-15) m = std::max(m, drift.at(i));
      hs[t] = m;
      if (!(m > 0.0)) ok = false;
    }
    if (ok && threshold < x0) {
      auto h_lower = make_interpolant(cs, hs);
      push("variable_lower", BoundKind::lower, variable_lower(h_lower, threshold, x0),
           "h = running-max drift envelope over minimal reachable potential");
    } else if (ok) {
      skip("variable_lower", BoundKind::lower, "start already at or below the threshold");
    } else {
      skip("variable_lower", BoundKind::lower, "drift envelope not positive");
    }
  }
  return report;
}

}  // namespace ftlab
