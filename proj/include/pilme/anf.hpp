#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"

namespace pilme {

/// Vertex set of a hyperedge as a bit mask over {0..n-1}.
using EdgeMask = std::uint32_t;

inline std::vector<unsigned> vertices_of(EdgeMask edge) {
  std::vector<unsigned> out;
  for (unsigned v = 0; edge != 0; ++v, edge >>= 1) {
    if (edge & 1u) out.push_back(v);
  }
  return out;
}

/// Canonical edge order: by size, then lexicographically by sorted vertices.
inline bool edge_less(EdgeMask a, EdgeMask b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const auto va = vertices_of(a);
  const auto vb = vertices_of(b);
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

/// Algebraic normal form of a Boolean function read as a hypergraph:
/// f(s) = c XOR (XOR over edges E of AND_{k in E} s_k).
/// Edges are kept distinct, non-empty and in canonical order.
class Hypergraph {
public:
  explicit Hypergraph(unsigned vertex_count, bool constant_bit = false,
                      std::vector<EdgeMask> edges = {})
      : n_(vertex_count), c_(constant_bit), edges_(std::move(edges)) {
    if (n_ == 0) throw arity_error("a hypergraph needs at least one vertex");
    check_arity(n_, kAbsoluteMaxN);
    const EdgeMask full = static_cast<EdgeMask>((std::uint64_t{1} << n_) - 1);
    for (EdgeMask e : edges_) {
      if (e == 0) throw range_error("hyperedges must be non-empty");
      if ((e & ~full) != 0) throw range_error("hyperedge vertex outside 0.." + std::to_string(n_ - 1));
    }
    std::sort(edges_.begin(), edges_.end(), edge_less);
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw range_error("duplicate hyperedge");
    }
  }

  /// Builds from explicit vertex lists, e.g. {{0}, {1, 2}}.
  static Hypergraph from_vertex_lists(unsigned vertex_count, bool constant_bit,
                                      const std::vector<std::vector<unsigned>>& lists) {
    std::vector<EdgeMask> edges;
    edges.reserve(lists.size());
    for (const auto& list : lists) {
      EdgeMask e = 0;
      for (unsigned v : list) {
        if (v >= vertex_count || v >= 32) {
          throw range_error("hyperedge vertex " + std::to_string(v) + " out of range");
        }
        e |= EdgeMask{1} << v;
      }
      edges.push_back(e);
    }
    return Hypergraph(vertex_count, constant_bit, std::move(edges));
  }

  unsigned vertex_count() const noexcept { return n_; }
  bool constant_bit() const noexcept { return c_; }
  const std::vector<EdgeMask>& edges() const noexcept { return edges_; }

  std::vector<std::vector<unsigned>> edge_lists() const {
    std::vector<std::vector<unsigned>> out;
    out.reserve(edges_.size());
    for (EdgeMask e : edges_) out.push_back(vertices_of(e));
    return out;
  }

  unsigned max_degree() const noexcept {
    unsigned d = 0;
    for (EdgeMask e : edges_) d = std::max(d, static_cast<unsigned>(std::popcount(e)));
    return d;
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
  unsigned n_;
  bool c_;
  std::vector<EdgeMask> edges_;
};

/// ANF via the Moebius transform over the subset lattice, O(n 2^n).
inline Hypergraph anf(const BooleanFunction& f) {
  BitTable coeffs = f.table();
  detail::moebius_in_place(coeffs);
  std::vector<EdgeMask> edges;
  const auto words = coeffs.words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    for (auto w = words[j]; w != 0; w &= w - 1) {
      const auto index = (std::uint64_t{j} << 6) + static_cast<std::uint64_t>(std::countr_zero(w));
      if (index != 0) edges.push_back(static_cast<EdgeMask>(index));
    }
  }
  return Hypergraph(f.arity(), coeffs.test(0), std::move(edges));
}

inline BooleanFunction from_anf(const Hypergraph& h, unsigned max_n = kDefaultMaxN) {
  check_arity(h.vertex_count(), max_n);
  BitTable t(h.vertex_count());
  t.set(0, h.constant_bit());
  for (EdgeMask e : h.edges()) t.set(e, true);
  detail::moebius_in_place(t);
  return BooleanFunction(std::move(t));
}

// ---------------------------------------------------------------------------
// ANF text format: "c <0|1>" followed by one monomial per line as
// space-separated 0-based variable indices. Blank lines and lines starting
// with '#' are ignored.

inline std::string to_anf_text(const Hypergraph& h) {
  std::ostringstream out;
  out << "c " << (h.constant_bit() ? 1 : 0) << '\n';
  for (const auto& edge : h.edge_lists()) {
    for (std::size_t i = 0; i < edge.size(); ++i) out << (i ? " " : "") << edge[i];
    out << '\n';
  }
  return out.str();
}

/// Parses ANF text. With vertex_count == 0 the count is inferred as
/// (largest index + 1), or 1 for an edgeless form.
inline Hypergraph parse_anf_text(std::string_view text, unsigned vertex_count = 0) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_constant = false;
  bool constant = false;
  std::vector<std::vector<unsigned>> lists;
  unsigned max_index = 0;
  bool any_vertex = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line.substr(first));
    if (!have_constant) {
      std::string tag;
      int value = -1;
      fields >> tag >> value;
      std::string extra;
      if (tag != "c" || (value != 0 && value != 1) || (fields >> extra)) {
        throw parse_error("expected 'c 0' or 'c 1' on line " + std::to_string(line_no));
      }
      have_constant = true;
      constant = value == 1;
      continue;
    }
    std::vector<unsigned> edge;
    std::string token;
    while (fields >> token) {
      if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos ||
          token.size() > 2) {
        throw parse_error("invalid vertex index '" + token + "' on line " + std::to_string(line_no));
      }
      const unsigned v = static_cast<unsigned>(std::stoul(token));
      if (v >= kAbsoluteMaxN) {
        throw parse_error("vertex index " + token + " exceeds limit on line " + std::to_string(line_no));
      }
      if (std::find(edge.begin(), edge.end(), v) != edge.end()) {
        throw parse_error("repeated vertex in monomial on line " + std::to_string(line_no));
      }
      edge.push_back(v);
      max_index = std::max(max_index, v);
      any_vertex = true;
    }
    lists.push_back(std::move(edge));
  }
  if (!have_constant) throw parse_error("ANF text is missing the 'c <0|1>' line");

  if (vertex_count == 0) vertex_count = any_vertex ? max_index + 1 : 1;
  if (any_vertex && max_index >= vertex_count) {
    throw range_error("vertex index " + std::to_string(max_index) + " out of range for n=" +
                      std::to_string(vertex_count));
  }
  return Hypergraph::from_vertex_lists(vertex_count, constant, lists);
}

} // namespace pilme
