#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ftlab {

namespace detail {

// Kahan-compensated accumulator; keeps long harmonic sums accurate to a few ulp.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

// H_n = sum_{i=1}^n 1/i, with H_0 = 0.
inline double harmonic(std::uint64_t n) {
  detail::CompensatedSum s;
  for (std::uint64_t i = 1; i <= n; ++i) s.add(1.0 / static_cast<double>(i));
  return s.sum;
}

// H_a - H_b for a >= b, summed directly over (b, a] so small differences do
// not suffer cancellation.
inline double harmonic_diff(std::uint64_t a, std::uint64_t b) {
  if (a < b) throw std::invalid_argument("harmonic_diff: requires a >= b");
  detail::CompensatedSum s;
  for (std::uint64_t i = b + 1; i <= a; ++i) s.add(1.0 / static_cast<double>(i));
  return s.sum;
}

// Prefix table H_0..H_n.
inline std::vector<double> harmonic_table(std::size_t n) {
  std::vector<double> h(n + 1, 0.0);
  detail::CompensatedSum s;
  for (std::size_t i = 1; i <= n; ++i) {
    s.add(1.0 / static_cast<double>(i));
    h[i] = s.sum;
  }
  return h;
}

// Two closed forms of the same quantity, the expected harmonic number of a
// Binomial(n, 1/2) draw. Exposing both routes lets tests pin their agreement.
//   binomial_weighted_harmonic:  2^-n * sum_i C(n,i) H_i
//   harmonic_minus_geometric:    H_n - sum_k 1/(k 2^k)
inline double binomial_weighted_harmonic(unsigned n) {
  std::vector<double> h = harmonic_table(n);
  detail::CompensatedSum s;
  // weight C(n,i)/2^n tracked by the multiplicative recurrence
  double w = 1.0;
  for (unsigned i = 0; i < n; ++i) w *= 0.5;
  for (unsigned i = 0; i <= n; ++i) {
    s.add(w * h[i]);
    w = w * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return s.sum;
}

inline double harmonic_minus_geometric(unsigned n) {
  detail::CompensatedSum s;
  double pow2 = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    pow2 *= 0.5;
    s.add(pow2 / static_cast<double>(k));
  }
  return harmonic(n) - s.sum;
}

}  // namespace ftlab
