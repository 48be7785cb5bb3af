#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"
#include "pilme/lme_state.hpp"

namespace pilme {

/// One step of a SAT pipeline. Counters are cumulative up to and including
/// this step.
struct TraceStep {
  std::string step;
  unsigned oracle_calls = 0;
  unsigned evaluations = 0;
  std::string verdict;
};

struct SatVerdict {
  bool satisfiable = false;
  std::optional<std::uint64_t> witness;
  /// The witness came from exhaustive search, not from the pipeline itself.
  bool witness_oracle_assisted = false;
  std::vector<TraceStep> trace;

  unsigned oracle_calls() const noexcept { return trace.empty() ? 0 : trace.back().oracle_calls; }
  unsigned evaluations() const noexcept { return trace.empty() ? 0 : trace.back().evaluations; }
};

/// The decision problem cOSM*: is |psi_f> in +-{|+>,|->}^{(x)n}?
inline bool cosm_star(const BooleanFunction& f) { return is_osm(state_from_function(f)); }

namespace detail {

inline void attach_brute_witness(SatVerdict& v, const BooleanFunction& f) {
  v.witness = sat_brute(f);
  v.witness_oracle_assisted = true;
  v.trace.push_back({"witness", v.oracle_calls(), v.evaluations(), "oracle-assisted"});
}

} // namespace detail

/// Decides SAT with at most two cOSM* queries and one evaluation of f:
///  (a) f not a product          -> satisfiable
///  (b) g' = f AND x_{n+1} not a product -> f balanced -> satisfiable
///  (c) f constant; evaluate f(0).
/// `cosm` is any callable BooleanFunction -> bool answering cOSM*.
template <typename CosmOracle>
SatVerdict turing_reduce_sat(const BooleanFunction& f, CosmOracle&& cosm) {
  SatVerdict v;
  unsigned calls = 0;

  ++calls;
  if (!cosm(f)) {
    v.trace.push_back({"a:cosm(f)", calls, 0, "not-product"});
    v.satisfiable = true;
    detail::attach_brute_witness(v, f);
    return v;
  }
  v.trace.push_back({"a:cosm(f)", calls, 0, "product"});

  const BooleanFunction gadget = conjoin_fresh(f, 1, kAbsoluteMaxN);
  ++calls;
  if (!cosm(gadget)) {
    v.trace.push_back({"b:cosm(f&x_{n+1})", calls, 0, "not-product:balanced"});
    v.satisfiable = true;
    detail::attach_brute_witness(v, f);
    return v;
  }
  v.trace.push_back({"b:cosm(f&x_{n+1})", calls, 0, "product:constant"});

  const bool value = f(0);
  v.trace.push_back({"c:evaluate(f,0)", calls, 1, value ? "tautology" : "contradiction"});
  v.satisfiable = value;
  if (value) v.witness = 0;
  return v;
}

inline SatVerdict turing_reduce_sat(const BooleanFunction& f) {
  return turing_reduce_sat(f, [](const BooleanFunction& g) { return cosm_star(g); });
}

/// g = f AND x_{n+1} AND x_{n+2}; SAT(f) iff g is not a product state.
inline BooleanFunction karp_reduce(const BooleanFunction& f, unsigned max_n = kDefaultMaxN) {
  return conjoin_fresh(f, 2, max_n);
}

inline constexpr unsigned kMaxExhaustiveArity = 3;

/// Functions for which a reduction disagreed with brute-force SAT, identified
/// by their truth table word.
struct ReductionReport {
  unsigned n = 0;
  std::uint64_t functions = 0;
  std::vector<std::uint64_t> turing_failures;
  std::vector<std::uint64_t> karp_failures;

  bool passed() const noexcept { return turing_failures.empty() && karp_failures.empty(); }
};

/// Runs both reductions on every function of n <= 3 variables against
/// sat_brute. The function index space is split over `jobs` threads.
inline ReductionReport verify_reductions_exhaustive(unsigned n, unsigned jobs = 1) {
  if (n == 0 || n > kMaxExhaustiveArity) {
    throw range_error("exhaustive verification supports 1 <= n <= " +
                      std::to_string(kMaxExhaustiveArity));
  }
  const std::uint64_t total = std::uint64_t{1} << (1u << n);
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(total));

  struct Partial {
    std::vector<std::uint64_t> turing, karp;
  };
  std::vector<Partial> partials(jobs);
  auto sweep = [&](unsigned worker) {
    auto& out = partials[worker];
    for (std::uint64_t bits = worker; bits < total; bits += jobs) {
      const auto f = BooleanFunction::from_word(n, bits);
      const bool sat = sat_brute(f).has_value();
      if (turing_reduce_sat(f).satisfiable != sat) out.turing.push_back(bits);
      if (!cosm_star(karp_reduce(f)) != sat) out.karp.push_back(bits);
    }
  };
  if (jobs == 1) {
    sweep(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) workers.emplace_back(sweep, w);
  }

  ReductionReport report{n, total, {}, {}};
  for (auto& p : partials) {
    report.turing_failures.insert(report.turing_failures.end(), p.turing.begin(), p.turing.end());
    report.karp_failures.insert(report.karp_failures.end(), p.karp.begin(), p.karp.end());
  }
  std::sort(report.turing_failures.begin(), report.turing_failures.end());
  std::sort(report.karp_failures.begin(), report.karp_failures.end());
  return report;
}

} // namespace pilme
