#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "harmonic.hpp"
#include "markov.hpp"
#include "mutation.hpp"

namespace ftlab {

enum class BoundKind { lower, upper, exact };
enum class BoundStatus { applicable, precondition_violated, asymptotic_disregarded };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    default: return "exact";
  }
}

inline const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::applicable: return "applicable";
    case BoundStatus::precondition_violated: return "precondition_violated";
    default: return "asymptotic_disregarded";
  }
}

// One evaluated bound. Formulas derived with vanishing-error factors set
// those factors to one and say so via status; a violated precondition yields
// NaN, never a silent number. Values count generations (add the
// initialization evaluations to compare with evaluation counts).
struct BoundResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  BoundKind kind = BoundKind::upper;
  BoundStatus status = BoundStatus::applicable;
  std::string note;

  bool usable() const { return status != BoundStatus::precondition_violated; }
};

namespace detail {

inline BoundResult violated(BoundKind kind, std::string note) {
  BoundResult r;
  r.kind = kind;
  r.status = BoundStatus::precondition_violated;
  r.note = std::move(note);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-bit-counting problem (maximize the number of ones)
// ---------------------------------------------------------------------------

// Upper bound from the all-zeros start: (H_n - H_{n-k})/q, where q is the
// probability of flipping exactly one prescribed bit. Exact for single-bit
// local search.
inline BoundResult om_upper_worst(double q, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) return detail::violated(BoundKind::upper, "requires 1 <= k <= n");
  if (!(q > 0.0) || q > 1.0) return detail::violated(BoundKind::upper, "requires q in (0, 1]");
  BoundResult r;
  r.kind = BoundKind::upper;
  r.value = harmonic_diff(n, n - k) / q;
  r.note = "worst-start upper bound; exact for single-bit local search";
  return r;
}

// Upper bound from a uniform random start, valid for targets above
// n/2 + 2 sqrt(n ln n): (H_{n/2} - H_{n-k} - 1/(2n))/q with the vanishing
// correction of the 1/(2n) term set to zero.
inline BoundResult om_upper_random(double q, std::size_t n, std::size_t k) {
  if (!(q > 0.0) || q > 1.0) return detail::violated(BoundKind::upper, "requires q in (0, 1]");
  if (k > n) return detail::violated(BoundKind::upper, "requires k <= n");
  double nd = static_cast<double>(n);
  double threshold = nd / 2.0 + 2.0 * std::sqrt(nd * std::log(nd));
  if (static_cast<double>(k) < threshold)
    return detail::violated(BoundKind::upper, "requires k >= n/2 + 2 sqrt(n ln n)");
  BoundResult r;
  r.kind = BoundKind::upper;
  r.status = BoundStatus::asymptotic_disregarded;
  r.value = (harmonic(n / 2) - harmonic(n - k) - 1.0 / (2.0 * nd)) / q;
  r.note = "random-start upper bound; vanishing correction factor set to one";
  return r;
}

// Starting band of the fitness-level lower bound: levels below
// l = ceil(n - min{n/ln n, 1/(p^2 n ln n)}) are passed too quickly to count.
inline std::size_t om_lower_levels_start(double p, std::size_t n) {
  double nd = static_cast<double>(n);
  double band = std::min(nd / std::log(nd), 1.0 / (p * p * nd * std::log(nd)));
  return static_cast<std::size_t>(std::ceil(nd - band));
}

// Fitness-level lower bound for standard bit mutation with rate p:
// (1 - 3.6/((1-p)^2 ln n)) (H_{n-l} - H_{n-k}) / (p(1-p)^{n-1}).
inline BoundResult om_lower_levels(double p, std::size_t n, std::size_t k) {
  if (n < 2 || !(p > 0.0) || p >= 1.0)
    return detail::violated(BoundKind::lower, "requires n >= 2 and p in (0, 1)");
  double nd = static_cast<double>(n);
  if (p > 1.0 / (std::sqrt(nd) * std::log(nd)))
    return detail::violated(BoundKind::lower, "requires p <= 1/(sqrt(n) ln n)");
  std::size_t l = om_lower_levels_start(p, n);
  if (k < l || k > n)
    return detail::violated(BoundKind::lower, "requires l <= k <= n with l = " + std::to_string(l));
  BoundResult r;
  r.kind = BoundKind::lower;
  double lead = 1.0 - 3.6 / ((1.0 - p) * (1.0 - p) * std::log(nd));
  r.value = lead * harmonic_diff(n - l, n - k) / (p * pow_one_minus(p, n - 1));
  r.note = "fitness-level lower bound from level " + std::to_string(l);
  return r;
}

// Lower bound e n ln(n/(n-k)) - 2n ln ln n - 16n for mutation rate 1/n,
// clamped at zero; positive only for targets very close to n. The formula
// diverges at k = n, so that target is rejected.
inline BoundResult om_lower_lengler(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) return detail::violated(BoundKind::lower, "requires 1 <= k < n");
  if (n < 3) return detail::violated(BoundKind::lower, "requires ln ln n > 0");
  double nd = static_cast<double>(n);
  double v = std::exp(1.0) * nd * std::log(nd / static_cast<double>(n - k)) -
             2.0 * nd * std::log(std::log(nd)) - 16.0 * nd;
  BoundResult r;
  r.kind = BoundKind::lower;
  r.value = std::max(0.0, v);
  r.note = v < 0.0 ? "clamped at zero" : "";
  return r;
}

// Drift function of the drift-based lower bound, with x counting the missing
// ones: h(x) = (x + 2 sqrt(x))/(e n) (1 + (16 x + 32 sqrt(x))/n).
inline double onemax_drift_h(std::size_t n, double x) {
  double nd = static_cast<double>(n);
  double s = std::sqrt(x);
  return (x + 2.0 * s) / (std::exp(1.0) * nd) * (1.0 + (16.0 * x + 32.0 * s) / nd);
}

// Antiderivative of 1/h: e n (2 ln(sqrt(x)+2) - ln(n + 16x + 32 sqrt(x))
// + 8 atan((4 sqrt(x)+4)/sqrt(n-16))/sqrt(n-16)); needs n > 16.
inline double onemax_drift_antiderivative(std::size_t n, double x) {
  if (n <= 16) throw std::invalid_argument("onemax_drift_antiderivative: requires n > 16");
  double nd = static_cast<double>(n);
  double s = std::sqrt(x);
  double root = std::sqrt(nd - 16.0);
  return std::exp(1.0) * nd *
         (2.0 * std::log(s + 2.0) - std::log(nd + 16.0 * x + 32.0 * s) +
          8.0 * std::atan((4.0 * s + 4.0) / root) / root);
}

// Drift-based lower bound for mutation rate 1/n and targets 2n/3 < k < n:
// e n (2 ln((sqrt(n/3)+2)/(sqrt(n-k)+2))
//      + ln((n+16(n-k)+32 sqrt(n-k))/(n+16n/3+32 sqrt(n/3)))).
// This drops the increasing arctangent part of the antiderivative, which only
// weakens a lower bound.
inline BoundResult om_lower_drift(std::size_t n, std::size_t k) {
  double nd = static_cast<double>(n);
  if (!(static_cast<double>(k) > 2.0 * nd / 3.0) || k >= n)
    return detail::violated(BoundKind::lower, "requires 2n/3 < k < n");
  auto g = [nd](double x) {
    double s = std::sqrt(x);
    return std::exp(1.0) * nd * (2.0 * std::log(s + 2.0) - std::log(nd + 16.0 * x + 32.0 * s));
  };
  BoundResult r;
  r.kind = BoundKind::lower;
  r.status = BoundStatus::asymptotic_disregarded;
  r.value = g(nd / 3.0) - g(static_cast<double>(n - k));
  r.note = "drift lower bound from random start; leading vanishing factor set to one";
  return r;
}

// Upper bound for the population variant with mu parents and standard bit
// mutation, with b = floor(n(1 - 1/mu)):
// mu + (mu/(1-p)^n)(2k - 1 - (n-k) ln(n/(n-k+1)))
//    + (mu/(p(1-p)^{n-1})) * { k/n                              if k <= b+1,
//                              (b+1)/n + (H_{n-b-1} - H_{n-k})/mu otherwise }.
inline BoundResult om_mu1_upper(std::size_t mu, double p, std::size_t n, std::size_t k) {
  if (mu < 1) return detail::violated(BoundKind::upper, "requires mu >= 1");
  if (k < 1 || k > n) return detail::violated(BoundKind::upper, "requires 1 <= k <= n");
  if (!(p > 0.0) || p >= 1.0) return detail::violated(BoundKind::upper, "requires p in (0, 1)");
  double nd = static_cast<double>(n), mud = static_cast<double>(mu), kd = static_cast<double>(k);
  std::size_t b = static_cast<std::size_t>(std::floor(nd * (1.0 - 1.0 / mud)));
  double inv_stay = 1.0 / pow_one_minus(p, n);
  double inv_q = 1.0 / (p * pow_one_minus(p, n - 1));
  double middle = 2.0 * kd - 1.0 -
                  static_cast<double>(n - k) * std::log(nd / static_cast<double>(n - k + 1));
  double tail;
  if (k <= b + 1) {
    tail = kd / nd;
  } else {
    tail = static_cast<double>(b + 1) / nd + harmonic_diff(n - b - 1, n - k) / mud;
  }
  BoundResult r;
  r.kind = BoundKind::upper;
  r.value = mud + mud * inv_stay * middle + mud * inv_q * tail;
  r.note = "population size treated as polynomially bounded (unchecked)";
  return r;
}

// Random-start upper bound for the resampling strategy:
// (1-(1-p)^n)/(p(1-p)^{n-1}) (H_{n/2} - H_{n-k}), for k > n/2 + sqrt(n) ln n.
inline BoundResult om_upper_random_resample(double p, std::size_t n, std::size_t k) {
  if (!(p > 0.0) || p >= 1.0) return detail::violated(BoundKind::upper, "requires p in (0, 1)");
  if (k > n) return detail::violated(BoundKind::upper, "requires k <= n");
  double nd = static_cast<double>(n);
  if (!(static_cast<double>(k) > nd / 2.0 + std::sqrt(nd) * std::log(nd)))
    return detail::violated(BoundKind::upper, "requires k > n/2 + sqrt(n) ln n");
  BoundResult r;
  r.kind = BoundKind::upper;
  r.status = BoundStatus::asymptotic_disregarded;
  r.value = -std::expm1(static_cast<double>(n) * std::log1p(-p)) /
            (p * pow_one_minus(p, n - 1)) * (harmonic(n / 2) - harmonic(n - k));
  r.note = "vanishing factor set to one";
  return r;
}

// Lower bounds for the resampling strategy with p = O(n^{-2/3-eps}) (recorded,
// not checkable numerically); pt = max(1/n, p). Near-optimal targets
// (k >= n - n pt ln^2 n):
//   (1-(1-p)^n)/(p(1-p)^{n-1}) ln(1/(4 pt^3 n^2 ln^3 n));
// easier targets (k <= n - n pt ln^2 n):
//   (1-(1-p)^n)/(p(1-p)^{n-1}) ln(1/(4 pt^2 n (n-k) ln n)).
inline BoundResult om_lower_resample(double p, std::size_t n, std::size_t k) {
  if (!(p > 0.0) || p >= 1.0) return detail::violated(BoundKind::lower, "requires p in (0, 1)");
  if (k < 1 || k > n) return detail::violated(BoundKind::lower, "requires 1 <= k <= n");
  double nd = static_cast<double>(n);
  double pt = std::max(1.0 / nd, p);
  double ln = std::log(nd);
  double split = nd - nd * pt * ln * ln;
  double prefix =
      -std::expm1(nd * std::log1p(-p)) / (p * pow_one_minus(p, n - 1));
  BoundResult r;
  r.kind = BoundKind::lower;
  r.status = BoundStatus::asymptotic_disregarded;
  double logarg;
  if (static_cast<double>(k) >= split) {
    logarg = 1.0 / (4.0 * pt * pt * pt * nd * nd * ln * ln * ln);
    r.note = "near-optimal-target branch; vanishing factor set to one; "
             "requires small mutation rate (unchecked)";
  } else {
    logarg = 1.0 / (4.0 * pt * pt * nd * static_cast<double>(n - k) * ln);
    r.note = "easier-target branch; vanishing factor set to one; requires small "
             "mutation rate and n-k small against 1/(2 pt^2 n ln n) (unchecked)";
  }
  r.value = std::max(0.0, prefix * std::log(logarg));
  if (prefix * std::log(logarg) < 0.0) r.note += "; clamped at zero";
  return r;
}

// ---------------------------------------------------------------------------
// Prefix-counting problem (maximize the number of leading ones)
// ---------------------------------------------------------------------------

// Exact expected generations from a uniform random start to a prefix of
// length at least k: (1/2) sum_{i<k} 1/q_i, with the level rates q_i in
// closed form per mutation model.
inline BoundResult lo_exact(const MutationModel& model, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) return detail::violated(BoundKind::exact, "requires 1 <= k <= n");
  model.validate(n);
  BoundResult r;
  r.kind = BoundKind::exact;
  double nd = static_cast<double>(n), kd = static_cast<double>(k);
  double p = model.p;
  switch (model.kind) {
    case MutationKind::rls:
      r.value = kd * nd / 2.0;
      break;
    case MutationKind::sbm:
      r.value = (pow_one_minus(p, 1.0 - kd) - (1.0 - p)) / (2.0 * p * p);
      break;
    case MutationKind::resample:
      r.value = (pow_one_minus(p, 1.0 - kd) - (1.0 - p)) / (2.0 * p * p) *
                (-std::expm1(nd * std::log1p(-p)));
      break;
    case MutationKind::shift: {
      detail::CompensatedSum acc;
      double stay = pow_one_minus(p, n) / nd;
      for (std::size_t i = 0; i < k; ++i)
        acc.add(1.0 / (p * pow_one_minus(p, static_cast<double>(i)) + stay));
      r.value = acc.sum / 2.0;
      break;
    }
    case MutationKind::fast: {
      HeavyTailConstants c = HeavyTailConstants::compute(n, model.beta);
      std::size_t half = n / 2;
      detail::CompensatedSum acc;
      for (std::size_t i = 0; i < k; ++i) {
        detail::CompensatedSum inner;
        for (std::size_t j = 1; j <= half; ++j) {
          double rate = static_cast<double>(j) / nd;
          inner.add(std::pow(static_cast<double>(j), -model.beta) * rate *
                    pow_one_minus(rate, static_cast<double>(i)));
        }
        acc.add(1.0 / inner.sum);
      }
      r.value = c.normalization * acc.sum / 2.0;
      break;
    }
    default:
      return detail::violated(BoundKind::exact,
                              "no closed form for this mutation model; use the chain solver");
  }
  return r;
}

// Generic exact expression (1/2) sum_{i<k} 1/q_i with numerically computed
// level rates; agrees with lo_exact and covers the two-bit variants.
inline BoundResult lo_exact_general(const MutationModel& model, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) return detail::violated(BoundKind::exact, "requires 1 <= k <= n");
  std::vector<double> q = leadingones_level_rates(n, model);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(q[i] > 0.0))
      return detail::violated(BoundKind::exact, "level " + std::to_string(i) + " has zero rate");
    acc.add(1.0 / q[i]);
  }
  BoundResult r;
  r.kind = BoundKind::exact;
  r.value = acc.sum / 2.0;
  return r;
}

// Upper bound for the population variant: mu + 3 e k max{mu ln(e n), n}.
inline BoundResult lo_mu1_upper(std::size_t mu, std::size_t n, std::size_t k) {
  if (mu < 1) return detail::violated(BoundKind::upper, "requires mu >= 1");
  if (k > n) return detail::violated(BoundKind::upper, "requires k <= n");
  double nd = static_cast<double>(n), mud = static_cast<double>(mu);
  BoundResult r;
  r.kind = BoundKind::upper;
  r.value = mud + 3.0 * std::exp(1.0) * static_cast<double>(k) *
                      std::max(mud * (1.0 + std::log(nd)), nd);
  r.note = "population size treated as polynomially bounded (unchecked)";
  return r;
}

// ---------------------------------------------------------------------------
// Binary-value problem (maximize the binary number the string encodes)
// ---------------------------------------------------------------------------

// Gap-exponent convention: reaching a target in [2^n - 2^{s+1}, 2^n - 2^s)
// means optimizing the heaviest bits down to position s; the bound parameters
// are n- = n-(s+1) and n+ = n-s.
inline BoundResult binval_lower(double p, std::size_t n, std::size_t s) {
  if (!(p > 0.0) || p >= 1.0) return detail::violated(BoundKind::lower, "requires p in (0, 1)");
  if (s + 2 >= n) return detail::violated(BoundKind::lower, "requires n- = n-(s+1) >= 2");
  std::size_t nm = n - (s + 1);
  double nmd = static_cast<double>(nm), nd = static_cast<double>(n);
  double prefix = -std::expm1(nd * std::log1p(-p)) / (p * pow_one_minus(p, nm));
  double logterm = std::min(std::log(nmd), std::log(1.0 / (p * p * p * nmd * nmd)));
  BoundResult r;
  r.kind = BoundKind::lower;
  r.status = BoundStatus::asymptotic_disregarded;
  r.value = std::max(0.0, prefix * logterm);
  r.note = "vanishing factor set to one; requires small mutation rate (unchecked)";
  if (prefix * logterm < 0.0) r.note += "; clamped at zero";
  return r;
}

inline double binval_default_alpha(std::size_t n_plus) {
  return std::max(2.0, std::log(std::log(static_cast<double>(n_plus))));
}

// Upper bound with free parameter alpha > 1 (default max(2, ln ln n+)):
// [p n+ a^2 (1-p)^{1-n+} + a(ln(1/p) + (n+-1) ln(1-p) + 1)]
//   * (1-(1-p)^n) / ((1-p)^{n+-1} p (a-1)).
inline BoundResult binval_upper(double p, std::size_t n, std::size_t s, double alpha = 0.0) {
  if (!(p > 0.0) || p >= 1.0) return detail::violated(BoundKind::upper, "requires p in (0, 1)");
  if (s + 2 >= n) return detail::violated(BoundKind::upper, "requires n- = n-(s+1) >= 2");
  std::size_t np = n - s;
  if (alpha == 0.0) alpha = binval_default_alpha(np);
  if (!(alpha > 1.0)) return detail::violated(BoundKind::upper, "requires alpha > 1");
  double npd = static_cast<double>(np), nd = static_cast<double>(n);
  double numerator = p * npd * alpha * alpha * pow_one_minus(p, 1.0 - npd) +
                     alpha * (std::log(1.0 / p) + (npd - 1.0) * std::log1p(-p) + 1.0);
  double denominator = pow_one_minus(p, npd - 1.0) * p * (alpha - 1.0);
  BoundResult r;
  r.kind = BoundKind::upper;
  r.status = BoundStatus::asymptotic_disregarded;
  r.value = numerator / denominator * (-std::expm1(nd * std::log1p(-p)));
  r.note = "alpha = " + std::to_string(alpha) + "; requires small mutation rate (unchecked)";
  return r;
}

inline BoundResult binval_bound(double p, std::size_t n, std::size_t s, BoundKind direction,
                                double alpha = 0.0) {
  if (direction == BoundKind::lower) return binval_lower(p, n, s);
  if (direction == BoundKind::upper) return binval_upper(p, n, s, alpha);
  return detail::violated(BoundKind::exact, "no exact expression; choose lower or upper");
}

// ---------------------------------------------------------------------------
// Minimum spanning tree (penalty encoding, minimize)
// ---------------------------------------------------------------------------

// Expected generations until the selected subgraph has at most k connected
// components: (1/q)(1 + ln((m-1)/k)), where m is the number of edges and q
// the probability of flipping exactly one prescribed bit.
inline BoundResult mst_components_upper(double q, std::size_t m, std::size_t k) {
  if (!(q > 0.0) || q > 1.0) return detail::violated(BoundKind::upper, "requires q in (0, 1]");
  if (m < 2) return detail::violated(BoundKind::upper, "requires m >= 2");
  if (k < 1 || k > m - 1) return detail::violated(BoundKind::upper, "requires 1 <= k <= m-1");
  BoundResult r;
  r.kind = BoundKind::upper;
  r.value = (1.0 + std::log(static_cast<double>(m - 1) / static_cast<double>(k))) / q;
  return r;
}

// Expected generations, starting from any spanning tree, until the tree
// weight exceeds the optimum by at most t: (1/q2)(1 + ln((n_v-1) w_max/(t+1))),
// where q2 is the probability of flipping exactly one prescribed pair of bits.
inline BoundResult mst_weight_upper(double q2, std::size_t n_v, std::int64_t w_max,
                                    std::int64_t t) {
  if (!(q2 > 0.0) || q2 > 1.0) return detail::violated(BoundKind::upper, "requires q2 in (0, 1]");
  if (n_v < 2 || w_max < 1)
    return detail::violated(BoundKind::upper, "requires n_v >= 2 and w_max >= 1");
  if (t < 0) return detail::violated(BoundKind::upper, "requires t >= 0");
  BoundResult r;
  r.kind = BoundKind::upper;
  r.value = (1.0 + std::log(static_cast<double>(n_v - 1) * static_cast<double>(w_max) /
                            static_cast<double>(t + 1))) /
            q2;
  return r;
}

}  // namespace ftlab
