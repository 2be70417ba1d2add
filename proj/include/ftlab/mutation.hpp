#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitstring.hpp"
#include "harmonic.hpp"
#include "rng.hpp"

namespace ftlab {

// (1-p)^k evaluated in log space; stable for tiny p and large k.
inline double pow_one_minus(double p, double k) {
  return std::exp(k * std::log1p(-p));
}

// Mutation strength models. An operator draws a flip count l from its model
// and then flips l pairwise-distinct uniformly chosen positions.
//   rls       - always one bit
//   rls2      - always two bits (the classic 2-opt move on edge selections)
//   sbm       - standard bit mutation, l ~ Binomial(n, p)
//   shift     - standard bit mutation with the l=0 mass moved to l=1
//   resample  - standard bit mutation conditioned on l > 0
//   fast      - heavy-tailed: l ~ Binomial(n, a/n) with a power-law on a
//   shift02   - standard bit mutation with the l=0 mass moved to l=2
enum class MutationKind { rls, rls2, sbm, shift, resample, fast, shift02 };

struct MutationModel {
  MutationKind kind = MutationKind::rls;
  double p = 0.0;     // per-bit rate (sbm, shift, resample, shift02)
  double beta = 0.0;  // power-law exponent (fast)

  static MutationModel rls() { return {MutationKind::rls, 0.0, 0.0}; }
  static MutationModel rls2() { return {MutationKind::rls2, 0.0, 0.0}; }
  static MutationModel sbm(double p) { return {MutationKind::sbm, p, 0.0}; }
  static MutationModel shift(double p) { return {MutationKind::shift, p, 0.0}; }
  static MutationModel resample(double p) { return {MutationKind::resample, p, 0.0}; }
  static MutationModel fast(double beta) { return {MutationKind::fast, 0.0, beta}; }
  static MutationModel shift02(double p) { return {MutationKind::shift02, p, 0.0}; }

  bool uses_rate() const {
    return kind == MutationKind::sbm || kind == MutationKind::shift ||
           kind == MutationKind::resample || kind == MutationKind::shift02;
  }

  const char* name() const {
    switch (kind) {
      case MutationKind::rls: return "rls";
      case MutationKind::rls2: return "rls2";
      case MutationKind::sbm: return "sbm";
      case MutationKind::shift: return "shift";
      case MutationKind::resample: return "resample";
      case MutationKind::fast: return "fast";
      case MutationKind::shift02: return "shift02";
    }
    return "?";
  }

  void validate(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("mutation model: dimension must be positive");
    if (uses_rate() && !(p > 0.0 && p < 1.0))
      throw std::invalid_argument("mutation model: p must lie in (0,1)");
    if (kind == MutationKind::fast) {
      if (!(beta > 1.0)) throw std::invalid_argument("mutation model: beta must exceed 1");
      if (n < 2) throw std::invalid_argument("mutation model: fast requires n >= 2");
    }
    if ((kind == MutationKind::rls2 || kind == MutationKind::shift02) && n < 2)
      throw std::invalid_argument("mutation model: two-bit moves require n >= 2");
  }
};

// Power-law normalization C = sum_{i=1}^{floor(n/2)} i^-beta and the companion
// sum gamma = sum_{i=1}^{floor(n/2)} i^(1-beta) (1 - i/n)^(n-1), which is the
// n-fold of the one-bit success probability. gamma stays within [1/e, 2pi^2/3]
// for every n >= 2 and beta > 1.
struct HeavyTailConstants {
  double normalization = 0.0;
  double gamma_sum = 0.0;

  static HeavyTailConstants compute(std::size_t n, double beta) {
    if (n < 2) throw std::invalid_argument("HeavyTailConstants: n >= 2 required");
    if (!(beta > 1.0)) throw std::invalid_argument("HeavyTailConstants: beta > 1 required");
    detail::CompensatedSum c, g;
    std::size_t half = n / 2;
    for (std::size_t i = 1; i <= half; ++i) {
      double w = std::pow(static_cast<double>(i), -beta);
      c.add(w);
      g.add(w * static_cast<double>(i) *
            pow_one_minus(static_cast<double>(i) / static_cast<double>(n),
                          static_cast<double>(n - 1)));
    }
    return {c.sum, g.sum};
  }
};

namespace detail {

// Binomial(n, p) pmf. Uses the forward multiplicative recurrence when the
// l=0 mass is representable; otherwise anchors at the mode via lgamma so that
// central masses stay accurate even when the tails underflow.
inline std::vector<double> binomial_pmf(std::size_t n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  double log0 = static_cast<double>(n) * std::log1p(-p);
  double odds = p / (1.0 - p);
  if (log0 > -700.0) {
    pmf[0] = std::exp(log0);
    for (std::size_t l = 0; l < n; ++l)
      pmf[l + 1] = pmf[l] * (static_cast<double>(n - l) / static_cast<double>(l + 1)) * odds;
    return pmf;
  }
  std::size_t mode = static_cast<std::size_t>((static_cast<double>(n) + 1.0) * p);
  if (mode > n) mode = n;
  double logmode = std::lgamma(static_cast<double>(n) + 1.0) -
                   std::lgamma(static_cast<double>(mode) + 1.0) -
                   std::lgamma(static_cast<double>(n - mode) + 1.0) +
                   static_cast<double>(mode) * std::log(p) +
                   static_cast<double>(n - mode) * std::log1p(-p);
  pmf[mode] = std::exp(logmode);
  for (std::size_t l = mode; l < n; ++l)
    pmf[l + 1] = pmf[l] * (static_cast<double>(n - l) / static_cast<double>(l + 1)) * odds;
  for (std::size_t l = mode; l > 0; --l)
    pmf[l - 1] = pmf[l] * (static_cast<double>(l) / static_cast<double>(n - l + 1)) / odds;
  return pmf;
}

}  // namespace detail

// Exact distribution of the number of flipped bits for one model at one
// dimension. Building the heavy-tailed mixture costs O(n^2); construct once
// and reuse (the evolutionary loop and the chain builders do).
class FlipCountDistribution {
 public:
  FlipCountDistribution(const MutationModel& model, std::size_t n) : n_(n) {
    model.validate(n);
    switch (model.kind) {
      case MutationKind::rls:
        pmf_.assign(n + 1, 0.0);
        pmf_[1] = 1.0;
        break;
      case MutationKind::rls2:
        pmf_.assign(n + 1, 0.0);
        pmf_[2] = 1.0;
        break;
      case MutationKind::sbm:
        pmf_ = detail::binomial_pmf(n, model.p);
        break;
      case MutationKind::shift:
        pmf_ = detail::binomial_pmf(n, model.p);
        pmf_[1] += pmf_[0];
        pmf_[0] = 0.0;
        break;
      case MutationKind::shift02:
        pmf_ = detail::binomial_pmf(n, model.p);
        pmf_[2] += pmf_[0];
        pmf_[0] = 0.0;
        break;
      case MutationKind::resample: {
        pmf_ = detail::binomial_pmf(n, model.p);
        double positive = -std::expm1(static_cast<double>(n) * std::log1p(-model.p));
        pmf_[0] = 0.0;
        for (auto& v : pmf_) v /= positive;
        break;
      }
      case MutationKind::fast: {
        pmf_.assign(n + 1, 0.0);
        HeavyTailConstants hc = HeavyTailConstants::compute(n, model.beta);
        std::size_t half = n / 2;
        for (std::size_t a = 1; a <= half; ++a) {
          double w = std::pow(static_cast<double>(a), -model.beta) / hc.normalization;
          std::vector<double> comp =
              detail::binomial_pmf(n, static_cast<double>(a) / static_cast<double>(n));
          for (std::size_t l = 0; l <= n; ++l) pmf_[l] += w * comp[l];
        }
        break;
      }
    }
    cdf_.resize(pmf_.size());
    detail::CompensatedSum acc;
    for (std::size_t l = 0; l < pmf_.size(); ++l) {
      acc.add(pmf_[l]);
      cdf_[l] = acc.sum;
    }
    last_positive_ = 0;
    for (std::size_t l = 0; l < pmf_.size(); ++l)
      if (pmf_[l] > 0.0) last_positive_ = l;
  }

  std::size_t n() const { return n_; }
  const std::vector<double>& pmf() const { return pmf_; }

  std::size_t sample(Rng& rng) const {
    double u = rng.next_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t l = static_cast<std::size_t>(it - cdf_.begin());
    return l <= last_positive_ ? l : last_positive_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t last_positive_ = 0;
  std::vector<double> pmf_, cdf_;
};

inline std::vector<double> flip_count_pmf(const MutationModel& model, std::size_t n) {
  return FlipCountDistribution(model, n).pmf();
}

inline std::size_t sample_flip_count(const MutationModel& model, std::size_t n, Rng& rng) {
  return FlipCountDistribution(model, n).sample(rng);
}

// Flips exactly l distinct positions of x, chosen uniformly among the
// l-subsets. Small l uses Floyd's sampling with a linear-scan set; large l
// falls back to a partial Fisher-Yates shuffle.
inline void flip_distinct_bits(BitString& x, std::size_t l, Rng& rng) {
  std::size_t n = x.size();
  if (l > n) throw std::invalid_argument("flip_distinct_bits: l exceeds dimension");
  if (l == 0) return;
  if (l <= 64 && l * 16 <= n + 64) {
    std::array<std::uint32_t, 64> chosen{};
    std::size_t count = 0;
    for (std::size_t j = n - l; j < n; ++j) {
      std::uint32_t t = static_cast<std::uint32_t>(rng.next_below(j + 1));
      bool dup = false;
      for (std::size_t c = 0; c < count; ++c)
        if (chosen[c] == t) { dup = true; break; }
      std::uint32_t pick = dup ? static_cast<std::uint32_t>(j) : t;
      chosen[count++] = pick;
      x.flip(pick);
    }
    return;
  }
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < l; ++i) {
    std::size_t j = i + rng.next_below(n - i);
    std::swap(idx[i], idx[j]);
    x.flip(idx[i]);
  }
}

inline BitString mutate(const BitString& x, const FlipCountDistribution& dist, Rng& rng) {
  BitString y = x;
  flip_distinct_bits(y, dist.sample(rng), rng);
  return y;
}

inline BitString mutate(const BitString& x, const MutationModel& model, Rng& rng) {
  return mutate(x, FlipCountDistribution(model, x.size()), rng);
}

// Probability that one mutation flips one specific bit and nothing else.
// Closed forms per model; equals flip_count_pmf(model, n)[1] / n for all of
// them, which the tests assert.
inline double one_bit_q(const MutationModel& model, std::size_t n) {
  model.validate(n);
  double nd = static_cast<double>(n);
  switch (model.kind) {
    case MutationKind::rls:
      return 1.0 / nd;
    case MutationKind::rls2:
      return 0.0;
    case MutationKind::sbm:
      return model.p * pow_one_minus(model.p, nd - 1.0);
    case MutationKind::shift:
      return model.p * pow_one_minus(model.p, nd - 1.0) + pow_one_minus(model.p, nd) / nd;
    case MutationKind::shift02:
      return model.p * pow_one_minus(model.p, nd - 1.0);
    case MutationKind::resample:
      return model.p * pow_one_minus(model.p, nd - 1.0) /
             (-std::expm1(nd * std::log1p(-model.p)));
    case MutationKind::fast: {
      HeavyTailConstants hc = HeavyTailConstants::compute(n, model.beta);
      return hc.gamma_sum / (hc.normalization * nd);
    }
  }
  return 0.0;
}

// Probability that one mutation flips one specific pair of bits and nothing
// else: flip_count_pmf(model, m)[2] / C(m,2). Closed forms where they exist;
// the heavy-tailed model uses its exact mixture mass at two flips.
inline double two_bit_q(const MutationModel& model, std::size_t m) {
  model.validate(m);
  if (m < 2) throw std::invalid_argument("two_bit_q: m >= 2 required");
  double md = static_cast<double>(m);
  double pairs = md * (md - 1.0) / 2.0;
  switch (model.kind) {
    case MutationKind::rls:
      return 0.0;
    case MutationKind::rls2:
      return 1.0 / pairs;
    case MutationKind::sbm:
    case MutationKind::shift:
      return model.p * model.p * pow_one_minus(model.p, md - 2.0);
    case MutationKind::shift02:
      return model.p * model.p * pow_one_minus(model.p, md - 2.0) +
             pow_one_minus(model.p, md) / pairs;
    case MutationKind::resample:
      return model.p * model.p * pow_one_minus(model.p, md - 2.0) /
             (-std::expm1(md * std::log1p(-model.p)));
    case MutationKind::fast:
      return FlipCountDistribution(model, m).pmf()[2] / pairs;
  }
  return 0.0;
}

}  // namespace ftlab
