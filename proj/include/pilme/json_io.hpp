#pragma once

#include "json.hpp"

#include "pilme/anf.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/lme_state.hpp"
#include "pilme/quantum_sim.hpp"
#include "pilme/reductions.hpp"

namespace pilme {

using json = nlohmann::ordered_json;

inline json to_json(const ClassificationResult& c, unsigned n) {
  return {{"n", n}, {"kind", std::string(to_string(c.kind))}, {"satisfying_count", c.satisfying_count}};
}

inline json to_json(const Hypergraph& h) {
  json edges = json::array();
  for (const auto& e : h.edge_lists()) edges.push_back(e);
  return {{"n", h.vertex_count()}, {"c", h.constant_bit() ? 1 : 0}, {"edges", std::move(edges)}};
}

inline json to_json(const FactorDecomposition& d) {
  json factors = json::array();
  for (Factor f : d.factors) factors.push_back(f == Factor::plus ? "+" : "-");
  return {{"global", d.global_sign > 0 ? "+" : "-"}, {"factors", std::move(factors)}};
}

inline json to_json(const Certificate& c) { return {{"k", c.k}, {"l", c.l}, {"m", c.m}}; }

/// {"n", "osm", "decomposition" | null, "certificate" | null}
inline json separability_json(const PiLmeState& state) {
  const bool osm = is_osm(state);
  json out = {{"n", state.qubit_count()}, {"osm", osm}};
  out["decomposition"] = osm ? to_json(factorize(state)) : json(nullptr);
  const auto cert = find_certificate(state);
  out["certificate"] = cert ? to_json(*cert) : json(nullptr);
  return out;
}

inline json to_json(const SatVerdict& v) {
  json trace = json::array();
  for (const auto& s : v.trace) {
    trace.push_back({{"step", s.step},
                     {"oracle_calls", s.oracle_calls},
                     {"evaluations", s.evaluations},
                     {"verdict", s.verdict}});
  }
  return {{"satisfiable", v.satisfiable},
          {"witness", v.witness ? json(*v.witness) : json(nullptr)},
          {"witness_oracle_assisted", v.witness_oracle_assisted},
          {"oracle_calls", v.oracle_calls()},
          {"evaluations", v.evaluations()},
          {"trace", std::move(trace)}};
}

/// Failures are listed as hex truth tables; empty lists stay arrays.
inline json to_json(const ReductionReport& r) {
  auto tables = [&](const std::vector<std::uint64_t>& ids) {
    json out = json::array();
    for (auto bits : ids) out.push_back(to_hex(BooleanFunction::from_word(r.n, bits)));
    return out;
  };
  return {{"n", r.n},
          {"functions", r.functions},
          {"turing_failures", tables(r.turing_failures)},
          {"karp_failures", tables(r.karp_failures)}};
}

inline json amplitudes_json(const StateVector& sv) { return json(sv.amplitudes()); }

} // namespace pilme
