#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pilme/json_io.hpp"
#include "pilme/pilme.hpp"

namespace pilme::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

enum class InputFormat { formula, dimacs, table_hex, anf };

struct RunConfig {
  std::string input;
  InputFormat format = InputFormat::formula;
  std::optional<unsigned> arity;
  unsigned max_n = kDefaultMaxN;
  bool text = false;
};

/// Error raised while reading or validating input; maps to the usage exit code.
class usage_error : public error {
public:
  using error::error;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::string read_source(const RunConfig& cfg, std::istream& in) {
  if (cfg.input == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(cfg.input, ec)) {
    std::ifstream file(cfg.input, std::ios::binary);
    if (!file) throw usage_error("cannot open " + cfg.input);
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  // Formulas and hex tables may be given inline.
  if (cfg.format == InputFormat::formula || cfg.format == InputFormat::table_hex) return cfg.input;
  throw usage_error("no such file: " + cfg.input);
}

inline BooleanFunction load_function(const RunConfig& cfg, std::istream& in) {
  if (cfg.input.empty()) throw usage_error("missing input (path, '-' for stdin, or inline text)");
  const std::string text = read_source(cfg, in);
  try {
    switch (cfg.format) {
      case InputFormat::formula: {
        const Formula f = cfg.arity ? parse_formula(trim(text), *cfg.arity) : parse_formula(trim(text));
        return compile(f, f.arity(), cfg.max_n);
      }
      case InputFormat::dimacs: {
        Formula f = parse_dimacs(text);
        if (cfg.arity) {
          if (*cfg.arity < f.arity()) {
            throw usage_error("--n " + std::to_string(*cfg.arity) + " is below the declared variable count");
          }
          f.set_arity(*cfg.arity);
        }
        return compile(f, f.arity(), cfg.max_n);
      }
      case InputFormat::table_hex: {
        if (!cfg.arity) throw usage_error("table-hex input requires --n");
        check_arity(*cfg.arity, cfg.max_n);
        return function_from_hex(trim(text), *cfg.arity);
      }
      case InputFormat::anf:
        return from_anf(parse_anf_text(text, cfg.arity.value_or(0)), cfg.max_n);
    }
  } catch (const parse_error& e) {
    throw usage_error(e.what());
  } catch (const range_error& e) {
    throw usage_error(e.what());
  } catch (const arity_error& e) {
    throw usage_error(e.what());
  }
  throw usage_error("unsupported input format");
}

/// Human-readable rendering: one "path: value" line per JSON leaf, so both
/// output modes carry the same facts.
inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    if (j.empty()) out << prefix << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << '\n';
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

inline void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  if (cfg.text) {
    flatten(j, "", out);
  } else {
    out << j.dump() << '\n';
  }
}

inline std::optional<unsigned> env_max_n() {
  const char* raw = std::getenv("PILME_MAX_N");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > static_cast<long>(kAbsoluteMaxN)) {
    throw usage_error("PILME_MAX_N must be an integer in 1.." + std::to_string(kAbsoluteMaxN));
  }
  return static_cast<unsigned>(value);
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability of real equally weighted (hypergraph) states and SAT reductions", "pilme"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<unsigned> max_n_flag;
  const std::map<std::string, InputFormat> formats{{"formula", InputFormat::formula},
                                                   {"dimacs", InputFormat::dimacs},
                                                   {"table-hex", InputFormat::table_hex},
                                                   {"anf", InputFormat::anf}};

  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) {
      sub->add_option("input", cfg.input, "Path, '-' for stdin, or inline formula/hex");
      sub->add_option("--format,-f", cfg.format, "Input format")
          ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    }
    sub->add_option("--n", cfg.arity, "Number of variables (required for table-hex)");
    sub->add_option("--max-n", max_n_flag, "Cap on table arity (default 24, or PILME_MAX_N)")
        ->check(CLI::Range(1u, kAbsoluteMaxN));
    sub->add_flag("--text", cfg.text, "Human-readable output instead of JSON");
    sub->add_flag("--json", "JSON output (the default)");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Constant/balanced classification");
  add_common(classify_cmd, true);

  bool amplitudes = false;
  auto* state_cmd = app.add_subcommand("state", "Sign vector of |psi_f>");
  add_common(state_cmd, true);
  state_cmd->add_flag("--amplitudes", amplitudes, "Include simulated amplitudes");

  bool require_product = false;
  auto* separable_cmd = app.add_subcommand("separable", "Product test with decomposition or certificate");
  add_common(separable_cmd, true);
  separable_cmd->add_flag("--require-product", require_product, "Fail (exit 1) unless the state is a product");

  auto* anf_cmd = app.add_subcommand("anf", "Algebraic normal form");
  add_common(anf_cmd, true);

  auto* hypergraph_cmd = app.add_subcommand("hypergraph", "Hypergraph view and edge criterion");
  add_common(hypergraph_cmd, true);

  auto* karp_cmd = app.add_subcommand("reduce-karp", "Karp reduction f -> f & x_{n+1} & x_{n+2}");
  add_common(karp_cmd, true);

  auto* sat_cmd = app.add_subcommand("sat", "SAT through the classical product-test pipeline");
  add_common(sat_cmd, true);

  unsigned sim_max_n = kDefaultSimMaxN;
  auto* satq_cmd = app.add_subcommand("sat-quantum", "SAT through the simulated quantum pipeline");
  add_common(satq_cmd, true);
  satq_cmd->add_option("--sim-max-n", sim_max_n, "Simulation qubit cap")->check(CLI::Range(1u, 23u));

  auto* dj_cmd = app.add_subcommand("dj", "Deutsch-Jozsa on a constant or balanced function");
  add_common(dj_cmd, true);
  dj_cmd->add_option("--sim-max-n", sim_max_n, "Simulation qubit cap")->check(CLI::Range(1u, 23u));

  bool unique_pair = false;
  std::string other;
  unsigned copies = 1;
  auto* helstrom_cmd = app.add_subcommand("helstrom", "Helstrom error for two states");
  add_common(helstrom_cmd, true);
  helstrom_cmd->add_flag("--unique-sat-pair", unique_pair, "Use |+...+> vs. the unique-SAT state");
  helstrom_cmd->add_option("--other", other, "Second state (same format as input)");
  helstrom_cmd->add_option("--copies", copies, "Number of copies")->check(CLI::PositiveNumber);

  unsigned jobs = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustive check of both SAT reductions");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::Range(1u, 64u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    cfg.max_n = max_n_flag.value_or(detail::env_max_n().value_or(kDefaultMaxN));
    if (cfg.arity && (*cfg.arity == 0 || *cfg.arity > kAbsoluteMaxN)) {
      throw usage_error("--n must be in 1.." + std::to_string(kAbsoluteMaxN));
    }

    if (*verify_cmd) {
      if (!cfg.arity) throw usage_error("verify requires --n");
      const auto report = verify_reductions_exhaustive(*cfg.arity, jobs);
      detail::emit(cfg, to_json(report), out);
      return report.passed() ? kExitOk : kExitDomain;
    }

    if (*helstrom_cmd) {
      std::optional<PiLmeState> a, b;
      if (unique_pair) {
        if (!cfg.arity) throw usage_error("--unique-sat-pair requires --n");
        auto pair = unique_sat_pair(*cfg.arity);
        a = std::move(pair.first);
        b = std::move(pair.second);
      } else {
        if (other.empty()) throw usage_error("helstrom needs --unique-sat-pair or an input and --other");
        a = state_from_function(detail::load_function(cfg, in));
        RunConfig second = cfg;
        second.input = other;
        b = state_from_function(detail::load_function(second, in));
      }
      const double ov = overlap(*a, *b);
      json j = {{"n", a->qubit_count()},
                {"copies", copies},
                {"overlap", ov},
                {"p_err", helstrom_error_copies(*a, *b, copies)}};
      detail::emit(cfg, j, out);
      return kExitOk;
    }

    const BooleanFunction f = detail::load_function(cfg, in);
    const unsigned n = f.arity();

    if (*classify_cmd) {
      detail::emit(cfg, to_json(classify(f), n), out);
    } else if (*state_cmd) {
      const PiLmeState s = state_from_function(f);
      json j = {{"n", n}, {"table", to_hex(f)}, {"signs", s.sign_string()}};
      if (amplitudes) j["amplitudes"] = amplitudes_json(prepare_psi_f(f));
      detail::emit(cfg, j, out);
    } else if (*separable_cmd) {
      const PiLmeState s = state_from_function(f);
      if (require_product && !is_osm(s)) {
        (void)factorize(s);  // throws domain_error
      }
      detail::emit(cfg, separability_json(s), out);
    } else if (*anf_cmd) {
      const Hypergraph h = anf(f);
      if (cfg.text) {
        out << to_anf_text(h);
      } else {
        out << to_json(h).dump() << '\n';
      }
    } else if (*hypergraph_cmd) {
      const Hypergraph h = hypergraph_of(f, cfg.max_n);
      json j = {{"hypergraph", to_json(h)},
                {"max_degree", h.max_degree()},
                {"entangling_edge", entangling_edge_exists(h)}};
      detail::emit(cfg, j, out);
    } else if (*karp_cmd) {
      const BooleanFunction g = karp_reduce(f, cfg.max_n);
      const bool product = cosm_star(g);
      json j = {{"n", n},
                {"g_n", g.arity()},
                {"g_table", to_hex(g)},
                {"g_satisfying_count", classify(g).satisfying_count},
                {"cosm_star_g", product},
                {"satisfiable", !product}};
      detail::emit(cfg, j, out);
    } else if (*sat_cmd) {
      json j = to_json(turing_reduce_sat(f));
      j["n"] = n;
      detail::emit(cfg, j, out);
    } else if (*satq_cmd) {
      json j = to_json(algorithm1_end_to_end(f, sim_max_n));
      j["n"] = n;
      detail::emit(cfg, j, out);
    } else if (*dj_cmd) {
      const auto dj = deutsch_jozsa(f, sim_max_n);
      json j = {{"n", n},
                {"outcome", dj.outcome == DjOutcome::constant ? "constant" : "balanced"},
                {"p0", dj.p_zero}};
      detail::emit(cfg, j, out);
    }
    return kExitOk;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

} // namespace pilme::cli
