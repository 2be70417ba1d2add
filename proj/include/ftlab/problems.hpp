#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitstring.hpp"

namespace ftlab {

// Fixed-width unsigned integer on 64-bit little-endian words; just enough
// arithmetic for exact weighted-binary fitness values and their targets.
struct BigUint {
  std::vector<std::uint64_t> words;

  static BigUint zero(std::size_t bits) {
    return BigUint{std::vector<std::uint64_t>((bits + 63) / 64, 0)};
  }

  static BigUint from_u64(std::uint64_t v, std::size_t bits) {
    BigUint x = zero(bits ? bits : 64);
    x.words[0] = v;
    return x;
  }

  // 2^hi - 2^lo, i.e. ones exactly at bit positions [lo, hi).
  static BigUint ones_in_range(std::size_t lo, std::size_t hi) {
    if (lo > hi) throw std::invalid_argument("BigUint::ones_in_range: lo > hi");
    BigUint x = zero(hi ? hi : 1);
    for (std::size_t b = lo; b < hi; ++b) x.words[b >> 6] |= 1ull << (b & 63);
    return x;
  }

  std::strong_ordering operator<=>(const BigUint& o) const {
    std::size_t top = std::max(words.size(), o.words.size());
    for (std::size_t wi = top; wi-- > 0;) {
      std::uint64_t a = wi < words.size() ? words[wi] : 0;
      std::uint64_t b = wi < o.words.size() ? o.words[wi] : 0;
      if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  bool operator==(const BigUint& o) const { return (*this <=> o) == 0; }

  double to_double() const {
    double v = 0.0;
    for (std::size_t wi = words.size(); wi-- > 0;)
      v = v * 0x1.0p64 + static_cast<double>(words[wi]);
    return v;
  }

  std::string to_decimal() const {
    std::vector<std::uint64_t> w = words;
    std::string digits;
    auto all_zero = [&] {
      for (auto x : w)
        if (x) return false;
      return true;
    };
    if (all_zero()) return "0";
    while (!all_zero()) {
      // divide w by 10^9, collecting the remainder
      std::uint64_t rem = 0;
      for (std::size_t wi = w.size(); wi-- > 0;) {
        unsigned __int128 cur = (static_cast<unsigned __int128>(rem) << 64) | w[wi];
        w[wi] = static_cast<std::uint64_t>(cur / 1000000000u);
        rem = static_cast<std::uint64_t>(cur % 1000000000u);
      }
      for (int d = 0; d < 9; ++d) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    return std::string(digits.rbegin(), digits.rend());
  }
};

// Count of one-bits; maximized. Optimum n.
struct OneMax {
  std::size_t n;
  using Fitness = std::int64_t;
  static constexpr bool maximizing = true;

  std::size_t dimension() const { return n; }
  Fitness evaluate(const BitString& x) const {
    return static_cast<Fitness>(x.count_ones());
  }
  Fitness optimum() const { return static_cast<Fitness>(n); }
  static std::string fitness_label(const Fitness& f) { return std::to_string(f); }
  static double fitness_value(const Fitness& f) { return static_cast<double>(f); }
};

// Length of the all-ones prefix; maximized. Optimum n.
struct LeadingOnes {
  std::size_t n;
  using Fitness = std::int64_t;
  static constexpr bool maximizing = true;

  std::size_t dimension() const { return n; }
  Fitness evaluate(const BitString& x) const {
    return static_cast<Fitness>(x.leading_ones());
  }
  Fitness optimum() const { return static_cast<Fitness>(n); }
  static std::string fitness_label(const Fitness& f) { return std::to_string(f); }
  static double fitness_value(const Fitness& f) { return static_cast<double>(f); }
};

// Weighted binary value: bit i (0-based) carries weight 2^i, so the fitness
// equals the string read as an integer. Kept exact at any n; comparing two
// fitness values is comparing the strings as integers. Maximized, optimum
// 2^n - 1.
struct BinVal {
  std::size_t n;
  using Fitness = BigUint;
  static constexpr bool maximizing = true;

  std::size_t dimension() const { return n; }
  Fitness evaluate(const BitString& x) const {
    BigUint f;
    f.words = x.words();
    return f;
  }
  Fitness optimum() const { return BigUint::ones_in_range(0, n); }
  // Canonical target with gap 2^s below the optimum: 2^n - 2^s.
  Fitness target_for_gap_exponent(std::size_t s) const {
    if (s >= n) throw std::invalid_argument("BinVal: gap exponent must satisfy s < n");
    return BigUint::ones_in_range(s, n);
  }
  static std::string fitness_label(const Fitness& f) { return f.to_decimal(); }
  static double fitness_value(const Fitness& f) { return f.to_double(); }
};

}  // namespace ftlab
