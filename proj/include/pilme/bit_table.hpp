#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pilme/error.hpp"

namespace pilme {

/// Hard ceiling on the number of variables/qubits of any table.
inline constexpr unsigned kAbsoluteMaxN = 24;
/// Default cap for table-producing operations (overridable per call).
inline constexpr unsigned kDefaultMaxN = 24;

inline void check_arity(unsigned n, unsigned max_n = kDefaultMaxN) {
  const unsigned cap = std::min(max_n, kAbsoluteMaxN);
  if (n > cap) {
    throw arity_error("arity " + std::to_string(n) + " exceeds maximum " +
                      std::to_string(cap));
  }
}

/// Fixed-length bit sequence of 2^n entries, packed 64 per word.
/// Bit i lives in word i/64 at position i%64. Unused high bits of the last
/// word (only when n < 6) are always zero.
class BitTable {
public:
  using word_type = std::uint64_t;

  BitTable() : BitTable(0) {}

  explicit BitTable(unsigned n)
      : n_(n), words_(word_count_for(n), word_type{0}) {
    check_arity(n, kAbsoluteMaxN);
  }

  BitTable(unsigned n, std::vector<word_type> words) : n_(n), words_(std::move(words)) {
    check_arity(n, kAbsoluteMaxN);
    if (words_.size() != word_count_for(n)) {
      throw range_error("bit table needs " + std::to_string(word_count_for(n)) +
                        " words, got " + std::to_string(words_.size()));
    }
    words_.back() &= tail_mask();
  }

  static constexpr std::size_t word_count_for(unsigned n) {
    return n <= 6 ? 1 : (std::size_t{1} << (n - 6));
  }

  unsigned arity() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

  bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::uint64_t i, bool value) noexcept {
    const word_type bit = word_type{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  void flip(std::uint64_t i) noexcept { words_[i >> 6] ^= word_type{1} << (i & 63); }

  std::uint64_t popcount() const noexcept {
    std::uint64_t total = 0;
    for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
  }

  std::span<const word_type> words() const noexcept { return words_; }
  std::span<word_type> words() noexcept { return words_; }

  /// Mask of the valid bits in the last word.
  word_type tail_mask() const noexcept {
    return n_ >= 6 ? ~word_type{0} : ((word_type{1} << (1u << n_)) - 1);
  }

  friend bool operator==(const BitTable&, const BitTable&) = default;

private:
  unsigned n_;
  std::vector<word_type> words_;
};

namespace detail {

/// Word-sized masks selecting positions whose index has bit k set (k < 6).
inline constexpr BitTable::word_type kVarMask[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

/// Truth table of the projection onto variable k (0-based) over n variables.
inline BitTable projection(unsigned k, unsigned n) {
  BitTable t(n);
  auto words = t.words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (k < 6) {
      words[j] = kVarMask[k];
    } else {
      words[j] = ((j >> (k - 6)) & 1u) ? ~BitTable::word_type{0} : 0;
    }
  }
  words.back() &= t.tail_mask();
  return t;
}

/// In-place Moebius transform over GF(2): the butterfly a[i | 2^k] ^= a[i].
/// It is an involution, so the same routine maps ANF coefficients back to a
/// truth table.
inline void moebius_in_place(BitTable& t) {
  const unsigned n = t.arity();
  auto words = t.words();
  for (unsigned k = 0; k < n && k < 6; ++k) {
    const unsigned shift = 1u << k;
    for (auto& w : words) w ^= (w << shift) & kVarMask[k];
  }
  for (unsigned k = 6; k < n; ++k) {
    const std::size_t stride = std::size_t{1} << (k - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * stride) {
      for (std::size_t j = base; j < base + stride; ++j) words[j + stride] ^= words[j];
    }
  }
  words.back() &= t.tail_mask();
}

} // namespace detail
} // namespace pilme
