#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"
#include "pilme/lme_state.hpp"
#include "pilme/reductions.hpp"

namespace pilme {

/// Default cap on simulated input qubits (the ancilla comes on top).
inline constexpr unsigned kDefaultSimMaxN = 20;

inline constexpr double kNormTolerance = 1e-12;

/// Real-amplitude statevector. Qubit k is bit k of the basis index.
class StateVector {
public:
  StateVector(unsigned qubit_count, std::vector<double> amplitudes)
      : n_(qubit_count), amps_(std::move(amplitudes)) {
    if (qubit_count > kAbsoluteMaxN) throw arity_error("too many qubits for a statevector");
    if (amps_.size() != (std::size_t{1} << n_)) {
      throw range_error("statevector of " + std::to_string(n_) + " qubits needs " +
                        std::to_string(std::size_t{1} << n_) + " amplitudes");
    }
  }

  static StateVector basis(unsigned qubit_count, std::uint64_t index) {
    std::vector<double> amps(std::size_t{1} << qubit_count, 0.0);
    if (index >= amps.size()) throw range_error("basis index out of range");
    amps[index] = 1.0;
    return StateVector(qubit_count, std::move(amps));
  }

  unsigned qubit_count() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  const std::vector<double>& amplitudes() const noexcept { return amps_; }
  double operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (double a : amps_) s += a * a;
    return s;
  }

  /// Probability that qubit q reads 1.
  double probability_one(unsigned q) const {
    if (q >= n_) throw range_error("qubit index out of range");
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i >> q) & 1u) p += amps_[i] * amps_[i];
    }
    return p;
  }

private:
  unsigned n_;
  std::vector<double> amps_;
};

inline StateVector hadamard(const StateVector& sv, unsigned q) {
  if (q >= sv.qubit_count()) throw range_error("qubit index out of range");
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<double> out = sv.amplitudes();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i & bit) continue;
    const double a = out[i];
    const double b = out[i | bit];
    out[i] = (a + b) * inv_sqrt2;
    out[i | bit] = (a - b) * inv_sqrt2;
  }
  return StateVector(sv.qubit_count(), std::move(out));
}

inline StateVector pauli_x(const StateVector& sv, unsigned q) {
  if (q >= sv.qubit_count()) throw range_error("qubit index out of range");
  std::vector<double> out = sv.amplitudes();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(i & bit)) std::swap(out[i], out[i | bit]);
  }
  return StateVector(sv.qubit_count(), std::move(out));
}

/// H on qubits [0, count).
inline StateVector hadamard_layer(StateVector sv, unsigned count) {
  for (unsigned q = 0; q < count; ++q) sv = hadamard(sv, q);
  return sv;
}

/// U_f |x>|y> = |x>|y XOR f(x)>. The input register is every qubit except
/// `ancilla_index`, in increasing order.
inline StateVector apply_uf(const StateVector& sv, const BooleanFunction& f, unsigned ancilla_index) {
  if (sv.qubit_count() != f.arity() + 1) {
    throw range_error("U_f needs " + std::to_string(f.arity() + 1) + " qubits, state has " +
                      std::to_string(sv.qubit_count()));
  }
  if (ancilla_index > f.arity()) throw range_error("ancilla index out of range");
  const std::uint64_t low_mask = (std::uint64_t{1} << ancilla_index) - 1;
  const std::size_t anc = std::size_t{1} << ancilla_index;
  std::vector<double> out(sv.dimension());
  for (std::size_t i = 0; i < sv.dimension(); ++i) {
    const std::uint64_t x = (i & low_mask) | ((i >> 1) & ~low_mask);
    out[f(x) ? (i ^ anc) : i] = sv[i];
  }
  return StateVector(sv.qubit_count(), std::move(out));
}

/// |psi_f> obtained as U_f |+...+>|->. The ancilla (qubit n) factors out as
/// |->, so the input register is read off exactly as (a(x,0) - a(x,1))/sqrt 2.
inline StateVector prepare_psi_f(const BooleanFunction& f, unsigned sim_max_n = kDefaultSimMaxN) {
  const unsigned n = f.arity();
  if (n > sim_max_n) {
    throw arity_error("arity " + std::to_string(n) + " exceeds simulation limit " +
                      std::to_string(sim_max_n));
  }
  StateVector sv = StateVector::basis(n + 1, 0);
  sv = hadamard_layer(std::move(sv), n);
  sv = hadamard(pauli_x(sv, n), n);
  sv = apply_uf(sv, f, n);

  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::size_t half = std::size_t{1} << n;
  std::vector<double> reduced(half);
  for (std::size_t x = 0; x < half; ++x) {
    const double a0 = sv[x];
    const double a1 = sv[x | half];
    if (std::abs(a0 + a1) > kNormTolerance) {
      throw domain_error("ancilla did not decouple from the input register");
    }
    reduced[x] = (a0 - a1) * inv_sqrt2;
  }
  return StateVector(n, std::move(reduced));
}

/// Sign pattern of a real statevector (negative amplitude -> bit set).
inline PiLmeState sign_pattern(const StateVector& sv) {
  BitTable t(sv.qubit_count());
  for (std::size_t i = 0; i < sv.dimension(); ++i) t.set(i, sv[i] < 0.0);
  return PiLmeState(std::move(t));
}

enum class DjOutcome { constant, balanced };

struct DeutschJozsaResult {
  DjOutcome outcome;
  double p_zero;  // probability of reading |0...0> after the final H layer
};

/// Deutsch-Jozsa on a function promised to be constant or balanced; the
/// promise is checked up front.
inline DeutschJozsaResult deutsch_jozsa(const BooleanFunction& f, unsigned sim_max_n = kDefaultSimMaxN) {
  if (classify(f).kind == FunctionKind::neither) {
    throw domain_error("Deutsch-Jozsa promise violated: f is neither constant nor balanced");
  }
  const StateVector out = hadamard_layer(prepare_psi_f(f, sim_max_n), f.arity());
  const double p0 = out[0] * out[0];
  return {p0 > 0.5 ? DjOutcome::constant : DjOutcome::balanced, p0};
}

/// The four-step quantum pipeline with the product-state test performed
/// classically on the simulated amplitudes.
inline SatVerdict algorithm1_end_to_end(const BooleanFunction& f, unsigned sim_max_n = kDefaultSimMaxN) {
  SatVerdict v;
  unsigned uf_calls = 0;

  const StateVector psi = prepare_psi_f(f, sim_max_n);
  ++uf_calls;
  v.trace.push_back({"1:prepare_psi_f", 0, uf_calls, "prepared"});

  if (!is_osm(sign_pattern(psi))) {
    v.trace.push_back({"2:osm", 1, uf_calls, "not-product"});
    v.satisfiable = true;
    detail::attach_brute_witness(v, f);
    return v;
  }
  v.trace.push_back({"2:osm", 1, uf_calls, "product"});

  const auto dj = deutsch_jozsa(f, sim_max_n);
  ++uf_calls;
  if (dj.outcome == DjOutcome::balanced) {
    v.trace.push_back({"3:deutsch_jozsa", 1, uf_calls, "balanced"});
    v.satisfiable = true;
    detail::attach_brute_witness(v, f);
    return v;
  }
  v.trace.push_back({"3:deutsch_jozsa", 1, uf_calls, "constant"});

  const StateVector readout = apply_uf(StateVector::basis(f.arity() + 1, 0), f, f.arity());
  ++uf_calls;
  const bool ancilla_one = readout.probability_one(f.arity()) > 0.5;
  v.trace.push_back({"4:measure_ancilla", 1, uf_calls, ancilla_one ? "1" : "0"});
  v.satisfiable = ancilla_one;
  if (ancilla_one) v.witness = 0;
  return v;
}

// ---------------------------------------------------------------------------
// Discrimination

/// <psi_a|psi_b> = 1 - 2 hamming(a, b) / 2^n.
inline double overlap(const PiLmeState& a, const PiLmeState& b) {
  if (a.qubit_count() != b.qubit_count()) throw range_error("overlap of states with different qubit counts");
  const auto wa = a.signs().words();
  const auto wb = b.signs().words();
  std::uint64_t hamming = 0;
  for (std::size_t j = 0; j < wa.size(); ++j) hamming += static_cast<std::uint64_t>(std::popcount(wa[j] ^ wb[j]));
  return 1.0 - 2.0 * static_cast<double>(hamming) / static_cast<double>(a.dimension());
}

/// One-shot, equal-prior minimum error for telling two pure states apart.
inline double helstrom_error_from_overlap(double ov) {
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - ov * ov)));
}

inline double helstrom_error(const PiLmeState& a, const PiLmeState& b) {
  return helstrom_error_from_overlap(overlap(a, b));
}

/// Helstrom error given `copies` identical copies of the unknown state; the
/// overlap of the N-fold tensor power is overlap^N.
inline double helstrom_error_copies(const PiLmeState& a, const PiLmeState& b, unsigned copies) {
  if (copies == 0) throw range_error("at least one copy is required");
  return helstrom_error_from_overlap(std::pow(overlap(a, b), static_cast<double>(copies)));
}

/// |+...+> (no satisfying assignment) and the state with only the sign of
/// |0...0> flipped (unique satisfying assignment at the all-zeros string).
inline std::pair<PiLmeState, PiLmeState> unique_sat_pair(unsigned n, unsigned sim_max_n = kDefaultSimMaxN) {
  if (n == 0 || n > sim_max_n) {
    throw arity_error("unique-SAT pair needs 1 <= n <= " + std::to_string(sim_max_n));
  }
  BitTable none(n);
  BitTable unique(n);
  unique.set(0, true);
  return {PiLmeState(std::move(none)), PiLmeState(std::move(unique))};
}

} // namespace pilme
