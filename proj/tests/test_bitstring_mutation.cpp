#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "ftlab/bitstring.hpp"
#include "ftlab/harmonic.hpp"
#include "ftlab/mutation.hpp"
#include "ftlab/rng.hpp"

using namespace ftlab;

TEST_CASE("rng is deterministic and seed mixing separates runs") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  REQUIRE(mix_seed(1, 0) != mix_seed(1, 1));
  REQUIRE(mix_seed(1, 0) != mix_seed(2, 0));
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    double u = c.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    std::uint64_t v = c.next_below(13);
    REQUIRE(v < 13);
  }
}

TEST_CASE("bitstring operations") {
  BitString x = BitString::zeros(130);
  REQUIRE(x.size() == 130);
  REQUIRE(x.count_ones() == 0);
  x.flip(0);
  x.flip(64);
  x.flip(129);
  REQUIRE(x.count_ones() == 3);
  REQUIRE(x.test(64));
  x.set(64, false);
  REQUIRE(!x.test(64));
  REQUIRE(x.count_ones() == 2);

  BitString y = BitString::ones(67);
  REQUIRE(y.count_ones() == 67);
  REQUIRE(y.leading_ones() == 67);
  y.set(3, false);
  REQUIRE(y.leading_ones() == 3);
  REQUIRE(y.hamming_distance(BitString::ones(67)) == 1);

  Rng rng(11);
  BitString r = BitString::random(200, rng);
  REQUIRE(r.size() == 200);
  std::size_t ones = r.count_ones();
  REQUIRE(ones > 60);
  REQUIRE(ones < 140);
}

TEST_CASE("flip count distributions are normalized with the right support") {
  const std::size_t n = 40;
  struct Case {
    MutationModel model;
    const char* name;
  };
  const Case cases[] = {
      {MutationModel::rls(), "rls"},
      {MutationModel::rls2(), "rls2"},
      {MutationModel::sbm(0.05), "sbm"},
      {MutationModel::shift(0.05), "shift"},
      {MutationModel::resample(0.05), "resample"},
      {MutationModel::fast(1.5), "fast"},
      {MutationModel::shift02(0.05), "shift02"},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    std::vector<double> pmf = flip_count_pmf(c.model, n);
    REQUIRE(pmf.size() == n + 1);
    double total = 0.0;
    for (double v : pmf) {
      REQUIRE(v >= 0.0);
      total += v;
    }
    REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }

  std::vector<double> rls = flip_count_pmf(MutationModel::rls(), n);
  REQUIRE(rls[1] == 1.0);
  std::vector<double> rls2 = flip_count_pmf(MutationModel::rls2(), n);
  REQUIRE(rls2[2] == 1.0);

  // shift moves the zero-flip mass to one flip, shift02 moves it to two
  std::vector<double> sbm = flip_count_pmf(MutationModel::sbm(0.05), n);
  std::vector<double> sh = flip_count_pmf(MutationModel::shift(0.05), n);
  std::vector<double> sh2 = flip_count_pmf(MutationModel::shift02(0.05), n);
  REQUIRE(sh[0] == 0.0);
  REQUIRE(sh2[0] == 0.0);
  REQUIRE_THAT(sh[1], Catch::Matchers::WithinRel(sbm[1] + sbm[0], 1e-12));
  REQUIRE_THAT(sh2[2], Catch::Matchers::WithinRel(sbm[2] + sbm[0], 1e-12));
  REQUIRE_THAT(sh[2], Catch::Matchers::WithinRel(sbm[2], 1e-12));
  REQUIRE_THAT(sh2[1], Catch::Matchers::WithinRel(sbm[1], 1e-12));

  // conditioning on at least one flip rescales everything else
  std::vector<double> rs = flip_count_pmf(MutationModel::resample(0.05), n);
  REQUIRE(rs[0] == 0.0);
  for (std::size_t l = 1; l <= n; ++l)
    REQUIRE_THAT(rs[l], Catch::Matchers::WithinRel(sbm[l] / (1.0 - sbm[0]), 1e-12));

  // heavy tail: draw a with P(a) proportional to a^(-beta) on [1, n/2],
  // then flip Binomial(n, a/n) bits -- so the pmf is a binomial mixture
  std::vector<double> fast = flip_count_pmf(MutationModel::fast(1.5), n);
  const std::size_t half = n / 2;
  double norm = 0.0;
  for (std::size_t a = 1; a <= half; ++a) norm += std::pow(static_cast<double>(a), -1.5);
  std::vector<double> mix(n + 1, 0.0);
  for (std::size_t a = 1; a <= half; ++a) {
    double w = std::pow(static_cast<double>(a), -1.5) / norm;
    double p = static_cast<double>(a) / static_cast<double>(n);
    std::vector<double> b(n + 1, 0.0);
    b[0] = std::pow(1.0 - p, static_cast<double>(n));
    for (std::size_t l = 0; l < n; ++l)
      b[l + 1] = b[l] * static_cast<double>(n - l) / static_cast<double>(l + 1) * p / (1.0 - p);
    for (std::size_t l = 0; l <= n; ++l) mix[l] += w * b[l];
  }
  REQUIRE(fast[0] > 0.0);  // the underlying binomial may flip nothing
  REQUIRE(fast[n] > 0.0);
  for (std::size_t l = 0; l <= n; ++l)
    REQUIRE_THAT(fast[l], Catch::Matchers::WithinRel(mix[l], 1e-9));
}

TEST_CASE("single-bit and two-bit hit probabilities match the flip pmf") {
  const std::size_t n = 25;
  const MutationModel models[] = {
      MutationModel::rls(),          MutationModel::rls2(),         MutationModel::sbm(0.07),
      MutationModel::shift(0.07),    MutationModel::resample(0.07), MutationModel::fast(1.7),
      MutationModel::shift02(0.07),
  };
  for (const auto& m : models) {
    std::vector<double> pmf = flip_count_pmf(m, n);
    double nn = static_cast<double>(n);
    REQUIRE_THAT(one_bit_q(m, n), Catch::Matchers::WithinAbs(pmf[1] / nn, 1e-15));
    REQUIRE_THAT(two_bit_q(m, n),
                 Catch::Matchers::WithinAbs(pmf[2] / (nn * (nn - 1.0) / 2.0), 1e-15));
  }
  // closed forms for the canonical models
  double p = 0.07;
  REQUIRE_THAT(one_bit_q(MutationModel::rls(), n), Catch::Matchers::WithinRel(1.0 / 25.0, 1e-15));
  REQUIRE_THAT(one_bit_q(MutationModel::sbm(p), n),
               Catch::Matchers::WithinRel(p * std::pow(1.0 - p, 24.0), 1e-12));
  REQUIRE_THAT(one_bit_q(MutationModel::shift(p), n),
               Catch::Matchers::WithinRel(
                   p * std::pow(1.0 - p, 24.0) + std::pow(1.0 - p, 25.0) / 25.0, 1e-12));
  REQUIRE_THAT(one_bit_q(MutationModel::resample(p), n),
               Catch::Matchers::WithinRel(
                   p * std::pow(1.0 - p, 24.0) / (1.0 - std::pow(1.0 - p, 25.0)), 1e-12));
  REQUIRE(one_bit_q(MutationModel::rls2(), n) == 0.0);
  REQUIRE(two_bit_q(MutationModel::rls(), n) == 0.0);
}

TEST_CASE("sampled flip counts follow the pmf") {
  const std::size_t n = 30;
  MutationModel m = MutationModel::fast(1.5);
  std::vector<double> pmf = flip_count_pmf(m, n);
  Rng rng(202);
  const int trials = 200000;
  std::map<std::size_t, int> freq;
  for (int i = 0; i < trials; ++i) ++freq[sample_flip_count(m, n, rng)];
  for (std::size_t l = 1; l <= 4; ++l) {
    double expected = pmf[l] * trials;
    double se = std::sqrt(pmf[l] * (1 - pmf[l]) * trials);
    REQUIRE(std::abs(freq[l] - expected) <= 5 * se + 1);
  }
  Rng r2(5);
  for (int i = 0; i < 100; ++i)
    REQUIRE(sample_flip_count(MutationModel::rls(), n, r2) == 1);
}

TEST_CASE("mutation flips exactly the sampled number of distinct bits") {
  Rng rng(99);
  const std::size_t n = 64;
  BitString x = BitString::random(n, rng);
  for (int i = 0; i < 200; ++i) {
    BitString y = mutate(x, MutationModel::rls2(), rng);
    REQUIRE(x.hamming_distance(y) == 2);
  }
  for (int i = 0; i < 200; ++i) {
    BitString y = mutate(x, MutationModel::shift(0.01), rng);
    REQUIRE(x.hamming_distance(y) >= 1);
  }
}

TEST_CASE("binomially weighted harmonic numbers collapse to the closed form") {
  // frozen value at n = 2: (1/4)(H_0 + 2 H_1 + H_2) = 0.875
  REQUIRE_THAT(binomial_weighted_harmonic(2), Catch::Matchers::WithinAbs(0.875, 1e-15));
  for (unsigned n = 1; n <= 60; ++n) {
    INFO(n);
    REQUIRE_THAT(binomial_weighted_harmonic(n),
                 Catch::Matchers::WithinAbs(harmonic_minus_geometric(n), 1e-12));
  }
}

TEST_CASE("harmonic numbers and differences") {
  REQUIRE(harmonic(0) == 0.0);
  REQUIRE(harmonic(1) == 1.0);
  REQUIRE_THAT(harmonic(10), Catch::Matchers::WithinRel(2.9289682539682538, 1e-15));
  REQUIRE_THAT(harmonic_diff(100, 40),
               Catch::Matchers::WithinRel(harmonic(100) - harmonic(40), 1e-12));
  std::vector<double> table = harmonic_table(50);
  for (std::size_t i = 0; i <= 50; ++i)
    REQUIRE_THAT(table[i], Catch::Matchers::WithinRel(harmonic(i), 1e-14));
}
