#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"

namespace pilme {

/// Real equally weighted state (1/sqrt(2^n)) sum_i (-1)^{s_i} |i>, stored as
/// its sign bits: bit i set means the amplitude of |i> is negative.
class PiLmeState {
public:
  explicit PiLmeState(BitTable signs) : signs_(std::move(signs)) {
    if (signs_.arity() == 0) throw arity_error("a state needs at least one qubit");
  }

  unsigned qubit_count() const noexcept { return signs_.arity(); }
  std::uint64_t dimension() const noexcept { return signs_.size(); }
  const BitTable& signs() const noexcept { return signs_; }

  bool negative(std::uint64_t basis) const noexcept { return signs_.test(basis); }
  int sign(std::uint64_t basis) const noexcept { return negative(basis) ? -1 : +1; }

  /// Signs as a string of '+'/'-', basis index 0 first.
  std::string sign_string() const {
    std::string out(dimension(), '+');
    for (std::uint64_t i = 0; i < dimension(); ++i) {
      if (negative(i)) out[i] = '-';
    }
    return out;
  }

  friend bool operator==(const PiLmeState&, const PiLmeState&) = default;

private:
  BitTable signs_;
};

/// The sign vector is the truth table itself.
inline PiLmeState state_from_function(const BooleanFunction& f) { return PiLmeState(f.table()); }

inline PiLmeState state_from_signs(std::string_view pm) {
  const auto size = pm.size();
  if (size < 2 || (size & (size - 1)) != 0) {
    throw range_error("sign string length must be a power of two >= 2");
  }
  BitTable t(static_cast<unsigned>(std::countr_zero(size)));
  for (std::size_t i = 0; i < size; ++i) {
    if (pm[i] == '-') {
      t.set(i, true);
    } else if (pm[i] != '+') {
      throw parse_error(std::string("expected '+' or '-', got '") + pm[i] + "'", i);
    }
  }
  return PiLmeState(std::move(t));
}

enum class Factor : std::uint8_t { plus, minus };

/// Witness of membership in the set +-{|+>,|->}^{(x)n}.
struct FactorDecomposition {
  int global_sign;              // +1 or -1
  std::vector<Factor> factors;  // indexed by qubit 0..n-1

  /// Sign of basis state i implied by the decomposition.
  int sign(std::uint64_t i) const noexcept {
    int s = global_sign;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (factors[k] == Factor::minus && ((i >> k) & 1u)) s = -s;
    }
    return s;
  }

  PiLmeState reconstruct() const {
    BitTable t(static_cast<unsigned>(factors.size()));
    for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, sign(i) < 0);
    return PiLmeState(std::move(t));
  }

  friend bool operator==(const FactorDecomposition&, const FactorDecomposition&) = default;
};

/// NP witness (k, l, m) that a state is not a product of |+>/|-> states.
struct Certificate {
  unsigned k;
  std::uint64_t l;
  std::uint64_t m;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

namespace detail {

/// Compares the first 2^k signs against the next 2^k. Returns the XOR pattern
/// class: 0 identical, 1 exactly opposite, -1 neither.
inline int compare_level(const BitTable& signs, unsigned k) {
  using word = BitTable::word_type;
  const auto words = signs.words();
  if (k < 6) {
    const unsigned width = 1u << k;
    const word mask = width == 64 ? ~word{0} : ((word{1} << width) - 1);
    const word d = (words[0] ^ (words[0] >> width)) & mask;
    if (d == 0) return 0;
    if (d == mask) return 1;
    return -1;
  }
  const std::size_t half = std::size_t{1} << (k - 6);
  const word first = words[0] ^ words[half];
  if (first != 0 && first != ~word{0}) return -1;
  for (std::size_t j = 1; j < half; ++j) {
    if ((words[j] ^ words[half + j]) != first) return -1;
  }
  return first == 0 ? 0 : 1;
}

} // namespace detail

/// Membership in +-{|+>,|->}^{(x)n} by the block-sign test: for every level
/// k the first 2^k signs must equal, or be the exact negation of, the next
/// 2^k signs. Checking only the leading block per level suffices: level n-1
/// forces v = (a, +-a), and the lower levels recursively constrain a.
inline bool is_osm(const PiLmeState& state) {
  for (unsigned k = 0; k < state.qubit_count(); ++k) {
    if (detail::compare_level(state.signs(), k) < 0) return false;
  }
  return true;
}

inline FactorDecomposition factorize(const PiLmeState& state) {
  if (!is_osm(state)) throw domain_error("state is not a product of |+>/|-> states");
  FactorDecomposition out{state.sign(0), {}};
  out.factors.reserve(state.qubit_count());
  for (unsigned k = 0; k < state.qubit_count(); ++k) {
    out.factors.push_back(state.negative(0) == state.negative(std::uint64_t{1} << k) ? Factor::plus
                                                                                   : Factor::minus);
  }
  return out;
}

/// Canonical certificate: smallest failing level k, l = 0, and m the smallest
/// index above l whose difference bit d(m) = s(m) ^ s(2^k + m) differs from d(l).
inline std::optional<Certificate> find_certificate(const PiLmeState& state) {
  const auto& s = state.signs();
  for (unsigned k = 0; k < state.qubit_count(); ++k) {
    if (detail::compare_level(s, k) >= 0) continue;
    const std::uint64_t offset = std::uint64_t{1} << k;
    auto d = [&](std::uint64_t i) { return s.test(i) != s.test(offset + i); };
    const std::uint64_t l = 0;
    for (std::uint64_t m = l + 1; m < offset; ++m) {
      if (d(m) != d(l)) return Certificate{k, l, m};
    }
  }
  return std::nullopt;
}

/// Checks a certificate with exactly four queries of `eval` (at l, m, 2^k+l,
/// 2^k+m). `eval` is any callable std::uint64_t -> bool.
template <typename Eval>
bool verify_certificate(Eval&& eval, unsigned arity, const Certificate& cert) {
  if (cert.k >= arity) {
    throw range_error("certificate level k=" + std::to_string(cert.k) + " out of range for n=" +
                      std::to_string(arity));
  }
  const std::uint64_t offset = std::uint64_t{1} << cert.k;
  if (cert.l >= offset || cert.m >= offset) {
    throw range_error("certificate indices l, m must be below 2^k = " + std::to_string(offset));
  }
  const bool fl = eval(cert.l);
  const bool fm = eval(cert.m);
  const bool gl = eval(offset + cert.l);
  const bool gm = eval(offset + cert.m);
  return (fl != gl) != (fm != gm);
}

inline bool verify_certificate(const BooleanFunction& f, const Certificate& cert) {
  return verify_certificate([&f](std::uint64_t i) { return f(i); }, f.arity(), cert);
}

/// Entanglement is equivalent to failing the product test; it is undefined
/// for a single qubit.
inline bool is_entangled(const PiLmeState& state) {
  if (state.qubit_count() < 2) throw domain_error("entanglement is not defined for a single qubit");
  return !is_osm(state);
}

/// 2^{n+1}: the product states, global sign included.
inline std::uint64_t product_state_count(unsigned n) {
  if (n > 62) throw range_error("product_state_count supports n <= 62");
  return std::uint64_t{1} << (n + 1);
}

/// C(2^n, 2^{n-1}): sign vectors with exactly half the signs negative. Exact
/// for n <= 6.
inline std::uint64_t balanced_state_count(unsigned n) {
  if (n == 0 || n > 6) throw range_error("balanced_state_count supports 1 <= n <= 6");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t half = total / 2;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= half; ++i) c = c * (half + i) / i;
  return static_cast<std::uint64_t>(c);
}

inline constexpr unsigned kMaxCensusQubits = 4;

/// Number of product states among all 2^{2^n} sign vectors, by enumeration.
inline std::uint64_t count_osm_states(unsigned n) {
  if (n == 0 || n > kMaxCensusQubits) {
    throw range_error("exhaustive census supports 1 <= n <= " + std::to_string(kMaxCensusQubits));
  }
  const std::uint64_t vectors = std::uint64_t{1} << (1u << n);
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < vectors; ++bits) {
    if (is_osm(PiLmeState(BitTable(n, {bits})))) ++count;
  }
  return count;
}

} // namespace pilme
