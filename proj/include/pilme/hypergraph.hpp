#pragma once

#include <algorithm>
#include <bit>

#include "pilme/anf.hpp"
#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/lme_state.hpp"

namespace pilme {

/// Hypergraph state: |+...+> acted on by one multi-controlled Z per hyperedge,
/// with the constant bit as a global sign.
inline PiLmeState state_from_hypergraph(const Hypergraph& h, unsigned max_n = kDefaultMaxN) {
  return state_from_function(from_anf(h, max_n));
}

/// True iff some hyperedge acts on two or more qubits. Size-1 edges are local
/// Z phases and never entangle.
inline bool entangling_edge_exists(const Hypergraph& h) {
  return std::any_of(h.edges().begin(), h.edges().end(),
                     [](EdgeMask e) { return std::popcount(e) >= 2; });
}

/// Hypergraph of f via its ANF. Exponential in n (O(n 2^n)), not polynomial
/// in the size of a formula for f.
inline Hypergraph hypergraph_of(const BooleanFunction& f, unsigned max_n = kDefaultMaxN) {
  check_arity(f.arity(), max_n);
  return anf(f);
}

} // namespace pilme
