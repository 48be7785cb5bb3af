#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pilme/bit_table.hpp"
#include "pilme/error.hpp"

namespace pilme {

/// Truth table of f: {0,1}^n -> {0,1}. Bit i of the table is f(i), where
/// bit k of i (least significant first) is the value of variable x_{k+1}.
class BooleanFunction {
public:
  explicit BooleanFunction(unsigned arity) : table_(arity) {
    if (arity == 0) throw arity_error("a Boolean function needs at least one variable");
  }

  explicit BooleanFunction(BitTable table) : table_(std::move(table)) {
    if (table_.arity() == 0) throw arity_error("a Boolean function needs at least one variable");
  }

  /// Function on n <= 6 variables from the low 2^n bits of `bits`.
  static BooleanFunction from_word(unsigned arity, std::uint64_t bits) {
    if (arity == 0 || arity > 6) throw arity_error("from_word supports 1..6 variables");
    return BooleanFunction(BitTable(arity, {bits}));
  }

  static BooleanFunction constant(unsigned arity, bool value) {
    BooleanFunction f(arity);
    if (value) {
      for (auto& w : f.table_.words()) w = ~BitTable::word_type{0};
      f.table_.words().back() &= f.table_.tail_mask();
    }
    return f;
  }

  unsigned arity() const noexcept { return table_.arity(); }
  std::uint64_t size() const noexcept { return table_.size(); }
  const BitTable& table() const noexcept { return table_; }

  /// Unchecked single-point query.
  bool operator()(std::uint64_t assignment) const noexcept { return table_.test(assignment); }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
  BitTable table_;
};

inline bool evaluate(const BooleanFunction& f, std::uint64_t assignment) {
  if (assignment >= f.size()) {
    throw range_error("assignment " + std::to_string(assignment) + " out of range for " +
                      std::to_string(f.arity()) + " variables");
  }
  return f(assignment);
}

enum class FunctionKind { constant0, constant1, balanced, neither };

inline std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant0: return "constant0";
    case FunctionKind::constant1: return "constant1";
    case FunctionKind::balanced: return "balanced";
    case FunctionKind::neither: return "neither";
  }
  return "neither";
}

struct ClassificationResult {
  FunctionKind kind;
  std::uint64_t satisfying_count;

  friend bool operator==(const ClassificationResult&, const ClassificationResult&) = default;
};

inline ClassificationResult classify(const BooleanFunction& f) {
  const std::uint64_t count = f.table().popcount();
  FunctionKind kind = FunctionKind::neither;
  if (count == 0) {
    kind = FunctionKind::constant0;
  } else if (count == f.size()) {
    kind = FunctionKind::constant1;
  } else if (count == f.size() / 2) {
    kind = FunctionKind::balanced;
  }
  return {kind, count};
}

/// Smallest satisfying assignment, if any.
inline std::optional<std::uint64_t> sat_brute(const BooleanFunction& f) {
  const auto words = f.table().words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (words[j] != 0) {
      return (std::uint64_t{j} << 6) + static_cast<std::uint64_t>(std::countr_zero(words[j]));
    }
  }
  return std::nullopt;
}

/// g(x_1..x_{n+count}) = f(x_1..x_n) AND x_{n+1} AND ... AND x_{n+count}.
/// The fresh variables occupy the high index bits, so g is f's table placed
/// in the top 2^n block and zero elsewhere.
inline BooleanFunction conjoin_fresh(const BooleanFunction& f, unsigned count,
                                     unsigned max_n = kDefaultMaxN) {
  if (count != 1 && count != 2) throw range_error("conjoin_fresh supports 1 or 2 fresh variables");
  const unsigned n = f.arity();
  check_arity(n + count, max_n);
  BitTable g(n + count);
  const std::uint64_t offset = g.size() - f.size();
  if (n >= 6) {
    const auto src = f.table().words();
    std::copy(src.begin(), src.end(), g.words().begin() + static_cast<std::ptrdiff_t>(offset >> 6));
  } else {
    for (std::uint64_t i = 0; i < f.size(); ++i) {
      if (f(i)) g.set(offset + i, true);
    }
  }
  return BooleanFunction(std::move(g));
}

// ---------------------------------------------------------------------------
// Truth-table hex: 2^n bits little-endian (bit i of byte i/8 is f(i)), bytes
// in increasing order, each byte as two lowercase hex digits.

inline std::string to_hex(const BitTable& t) {
  static constexpr char digits[] = "0123456789abcdef";
  const std::uint64_t bytes = t.size() <= 8 ? 1 : t.size() / 8;
  std::string out;
  out.reserve(bytes * 2);
  const auto words = t.words();
  for (std::uint64_t b = 0; b < bytes; ++b) {
    const auto byte = static_cast<unsigned>((words[b >> 3] >> ((b & 7) * 8)) & 0xffu);
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

inline std::string to_hex(const BooleanFunction& f) { return to_hex(f.table()); }

/// Parses the hex table format for n variables. For n <= 2 a single hex digit
/// is accepted as well as the two-digit byte. Bits beyond 2^n must be zero.
inline BitTable bit_table_from_hex(std::string_view text, unsigned n) {
  check_arity(n, kAbsoluteMaxN);
  BitTable t(n);
  std::string padded(text);
  if (padded.size() == 1 && n <= 2) padded.insert(padded.begin(), '0');
  const std::uint64_t bytes = t.size() <= 8 ? 1 : t.size() / 8;
  if (padded.size() != bytes * 2) {
    throw parse_error("hex table for n=" + std::to_string(n) + " needs " +
                      std::to_string(bytes * 2) + " digits, got " + std::to_string(text.size()));
  }
  auto nibble = [&](std::size_t pos) -> unsigned {
    const char c = padded[pos];
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw parse_error(std::string("invalid hex digit '") + c + "'", pos);
  };
  auto words = t.words();
  for (std::uint64_t b = 0; b < bytes; ++b) {
    const std::uint64_t byte = (nibble(2 * b) << 4) | nibble(2 * b + 1);
    words[b >> 3] |= byte << ((b & 7) * 8);
  }
  if ((words.back() & ~t.tail_mask()) != 0) {
    throw parse_error("hex table sets bits beyond 2^" + std::to_string(n) + " entries");
  }
  return t;
}

inline BooleanFunction function_from_hex(std::string_view text, unsigned n) {
  return BooleanFunction(bit_table_from_hex(text, n));
}

} // namespace pilme
