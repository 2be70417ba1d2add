#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmonic.hpp"
#include "markov.hpp"
#include "mutation.hpp"

namespace ftlab {

// Fitness-level description of an elitist process over levels 0..m-1 (level
// m-1 is the target). Rates describe the probability of leaving level i
// upward: p[i] is a lower estimate (upper-bound theorem), u[i] an upper
// estimate (lower-bound theorem), s[i] a lower estimate for the refined
// upper-bound theorem. gamma[i][j] is the probability of landing on level j
// when leaving level i; chi is the viscosity parameter shared by the refined
// theorems. All indices are 0-based.
struct LevelSpec {
  std::size_t m = 0;
  std::vector<double> p, u, s;              // each of size m-1 when used
  double chi = 0.0;                         // in [0, 1]
  std::vector<std::vector<double>> gamma;   // gamma[i][j], nonzero for j > i
  std::vector<double> start;                // distribution over levels, size m

  void check_basic() const {
    if (m < 2) throw std::invalid_argument("LevelSpec: need at least two levels");
    if (start.size() != m) throw std::invalid_argument("LevelSpec: start size mismatch");
    double total = 0.0;
    for (double v : start) {
      if (v < -1e-15) throw std::invalid_argument("LevelSpec: negative start mass");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("LevelSpec: start distribution does not sum to one");
    if (chi < 0.0 || chi > 1.0) throw std::invalid_argument("LevelSpec: chi outside [0, 1]");
    if (!gamma.empty()) {
      if (gamma.size() != m) throw std::invalid_argument("LevelSpec: gamma row count mismatch");
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (gamma[i].size() != m) throw std::invalid_argument("LevelSpec: gamma row size mismatch");
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          if (j <= i && gamma[i][j] != 0.0)
            throw std::invalid_argument("LevelSpec: gamma mass not above the diagonal");
          row += gamma[i][j];
        }
        if (std::abs(row - 1.0) > 1e-12)
          throw std::invalid_argument("LevelSpec: gamma row " + std::to_string(i) +
                                      " does not sum to one");
      }
    }
  }
};

namespace detail {

inline void check_rates(const std::vector<double>& r, std::size_t m, const char* name) {
  if (r.size() != m - 1)
    throw std::invalid_argument(std::string("LevelSpec: rates ") + name + " must have m-1 entries");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!(r[i] > 0.0) || r[i] > 1.0)
      throw std::invalid_argument(std::string("LevelSpec: rate ") + name + "[" +
                                  std::to_string(i) + "] outside (0, 1]");
}

inline double gamma_tail(const LevelSpec& spec, std::size_t i, std::size_t j) {
  double t = 0.0;
  for (std::size_t k = j; k < spec.m; ++k) t += spec.gamma[i][k];
  return t;
}

// Lower-bound theorem condition: landing mass may not be front-loaded,
// gamma[i][j] >= chi * sum_{k>=j} gamma[i][k] for all i < j <= m-1.
inline void check_gamma_lower(const LevelSpec& spec) {
  if (spec.gamma.empty()) throw std::invalid_argument("LevelSpec: gamma required");
  for (std::size_t i = 0; i + 1 < spec.m; ++i) {
    double tail = 0.0;
    for (std::size_t j = spec.m; j-- > i + 1;) {
      tail += spec.gamma[i][j];
      if (spec.gamma[i][j] < spec.chi * tail - 1e-12)
        throw std::runtime_error("level condition violated (lower theorem) at (i=" +
                                 std::to_string(i) + ", j=" + std::to_string(j) + ")");
    }
  }
}

// Refined-upper theorem conditions: gamma[i][j] <= chi * sum_{k>=j}
// gamma[i][k] for all i < j < m-1, and (1-chi) s[i] <= s[i+1].
inline void check_gamma_refined_upper(const LevelSpec& spec) {
  if (spec.gamma.empty()) throw std::invalid_argument("LevelSpec: gamma required");
  for (std::size_t i = 0; i + 1 < spec.m; ++i) {
    double tail = spec.gamma[i][spec.m - 1];
    for (std::size_t j = spec.m - 1; j-- > i + 1;) {
      tail += spec.gamma[i][j];
      if (spec.gamma[i][j] > spec.chi * tail + 1e-12)
        throw std::runtime_error("level condition violated (refined upper theorem) at (i=" +
                                 std::to_string(i) + ", j=" + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i + 1 < spec.s.size(); ++i)
    if ((1.0 - spec.chi) * spec.s[i] > spec.s[i + 1] + 1e-12)
      throw std::runtime_error("level condition violated (refined upper theorem) at rate pair (" +
                               std::to_string(i) + ", " + std::to_string(i + 1) + ")");
}

inline double viscous_sum(const LevelSpec& spec, const std::vector<double>& r) {
  // sum_i start(i) (1/r_i + chi sum_{j>i} 1/r_j), accumulated from the top
  detail::CompensatedSum tail;  // sum_{j>i} 1/r_j over rate indices
  double total = 0.0;
  for (std::size_t i = spec.m - 1; i-- > 0;) {
    double own = 1.0 / r[i];
    total += spec.start[i] * (own + spec.chi * tail.sum);
    tail.add(own);
  }
  return total;
}

}  // namespace detail

// Upper-bound fitness-level theorem: sum_i start(i) sum_{j=i}^{m-2} 1/p_j.
inline double fl_upper(const LevelSpec& spec) {
  spec.check_basic();
  detail::check_rates(spec.p, spec.m, "p");
  detail::CompensatedSum tail;
  double total = 0.0;
  for (std::size_t i = spec.m - 1; i-- > 0;) {
    tail.add(1.0 / spec.p[i]);
    total += spec.start[i] * tail.sum;
  }
  return total;
}

// Lower-bound fitness-level theorem with viscosity chi:
// sum_i start(i) (1/u_i + chi sum_{j=i+1}^{m-2} 1/u_j).
inline double fl_lower(const LevelSpec& spec) {
  spec.check_basic();
  detail::check_rates(spec.u, spec.m, "u");
  detail::check_gamma_lower(spec);
  return detail::viscous_sum(spec, spec.u);
}

// Refined upper-bound fitness-level theorem, same sum with rates s.
inline double fl_upper_refined(const LevelSpec& spec) {
  spec.check_basic();
  detail::check_rates(spec.s, spec.m, "s");
  detail::check_gamma_refined_upper(spec);
  return detail::viscous_sum(spec, spec.s);
}

// Collapses all levels >= cut into a single target level: rates and landing
// rows for i < cut are preserved, with gamma'[i][cut] = sum_{k>=cut}
// gamma[i][k]; the start mass above the cut pools on the new top.
inline LevelSpec merge_levels(const LevelSpec& spec, std::size_t cut) {
  spec.check_basic();
  if (cut < 2 || cut > spec.m - 1) {
    if (cut == spec.m) return spec;  // merging at the top is the identity
    throw std::invalid_argument("merge_levels: cut must be in [2, m]");
  }
  LevelSpec out;
  out.m = cut + 1;
  out.chi = spec.chi;
  auto shrink = [&](const std::vector<double>& r) {
    return r.empty() ? r : std::vector<double>(r.begin(), r.begin() + cut);
  };
  out.p = shrink(spec.p);
  out.u = shrink(spec.u);
  out.s = shrink(spec.s);
  out.start.assign(cut + 1, 0.0);
  for (std::size_t i = 0; i < cut; ++i) out.start[i] = spec.start[i];
  for (std::size_t i = cut; i < spec.m; ++i) out.start[cut] += spec.start[i];
  if (!spec.gamma.empty()) {
    out.gamma.assign(cut + 1, std::vector<double>(cut + 1, 0.0));
    for (std::size_t i = 0; i < cut; ++i) {
      for (std::size_t j = i + 1; j < cut; ++j) out.gamma[i][j] = spec.gamma[i][j];
      out.gamma[i][cut] = detail::gamma_tail(spec, i, cut);
    }
  }
  return out;
}

// Level description of the (1+1) elitist process on the prefix-counting
// problem from a uniform random start: levels are fitness values 0..n, all
// rate families equal the exact level rates, landing mass halves per level
// (gamma[i][j] = 2^(i-j), top row doubled), chi = 1/2.
inline LevelSpec leadingones_level_spec(std::size_t n, const MutationModel& model) {
  LevelSpec spec;
  spec.m = n + 1;
  spec.chi = 0.5;
  spec.p = leadingones_level_rates(n, model);
  spec.u = spec.p;
  spec.s = spec.p;
  spec.start = leadingones_uniform_init(n);
  spec.gamma.assign(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double g = 1.0;
    for (std::size_t j = i + 1; j <= n; ++j) {
      g *= 0.5;
      spec.gamma[i][j] = (j < n ? g : 2.0 * g);
    }
  }
  return spec;
}

// Level description of the same process on the one-bit-counting problem from
// the all-zeros start, for the plain upper-bound theorem: p_i = q (n-i).
inline LevelSpec onemax_level_spec_worst(std::size_t n, double q) {
  LevelSpec spec;
  spec.m = n + 1;
  spec.p.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    spec.p[i] = std::min(1.0, q * static_cast<double>(n - i));
  spec.start.assign(n + 1, 0.0);
  spec.start[0] = 1.0;
  return spec;
}

}  // namespace ftlab
