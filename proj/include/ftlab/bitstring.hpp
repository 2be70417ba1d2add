#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace ftlab {

// Packed bit string x_1..x_n. Bit index i (0-based) is stored in word i/64 at
// position i%64; unused high bits of the last word are kept at zero, which the
// counting and comparison routines rely on.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitString zeros(std::size_t n) { return BitString(n); }

  static BitString ones(std::size_t n) {
    BitString x(n);
    for (auto& w : x.words_) w = ~0ull;
    x.trim();
    return x;
  }

  static BitString random(std::size_t n, Rng& rng) {
    BitString x(n);
    for (auto& w : x.words_) w = rng.next_u64();
    x.trim();
    return x;
  }

  // Parses "0"/"1" characters; the first character is bit 0 (i.e. x_1).
  static BitString from_string(const std::string& s) {
    BitString x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        x.set(i, true);
      else if (s[i] != '0')
        throw std::invalid_argument("BitString::from_string: expected '0' or '1'");
    }
    return x;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    std::uint64_t mask = 1ull << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

  std::size_t count_ones() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Length of the all-ones prefix x_1, x_2, ...
  std::size_t leading_ones() const {
    std::size_t c = 0;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      int t = std::countr_one(words_[wi]);
      c += static_cast<std::size_t>(t);
      if (t < 64) break;
    }
    return c < n_ ? c : n_;
  }

  std::size_t hamming_distance(const BitString& other) const {
    std::size_t c = 0;
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
      c += static_cast<std::size_t>(std::popcount(words_[wi] ^ other.words_[wi]));
    return c;
  }

  // Compares the strings as integers with bit i carrying weight 2^i.
  std::strong_ordering compare_as_integer(const BitString& other) const {
    for (std::size_t wi = words_.size(); wi-- > 0;) {
      if (words_[wi] != other.words_[wi])
        return words_[wi] < other.words_[wi] ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  bool operator==(const BitString& other) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

 private:
  void trim() {
    if (n_ & 63) words_.back() &= (~0ull) >> (64 - (n_ & 63));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ftlab
