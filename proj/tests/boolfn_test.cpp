#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pilme/anf.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/formula.hpp"

using namespace pilme;

namespace {

std::vector<bool> bits(const BooleanFunction& f) {
  std::vector<bool> out(f.size());
  for (std::uint64_t i = 0; i < f.size(); ++i) out[i] = f(i);
  return out;
}

BooleanFunction fn(std::string_view formula, unsigned n) { return compile(parse_formula(formula, n)); }

BooleanFunction random_function(unsigned n, std::mt19937_64& rng) {
  std::vector<BitTable::word_type> words(BitTable::word_count_for(n));
  for (auto& w : words) w = rng();
  return BooleanFunction(BitTable(n, std::move(words)));
}

const BooleanFunction kGhz = BooleanFunction::from_word(3, 0xD1);

} // namespace

TEST(ParseFormula, GrammarCases) {
  EXPECT_EQ(parse_formula("x1 & x2", 2).to_string(), "AND(x1,x2)");
  EXPECT_EQ(parse_formula("!x1 ^ (x2 | 1)", 2).to_string(), "XOR(NOT(x1),OR(x2,1))");
}

TEST(ParseFormula, Precedence) {
  EXPECT_EQ(parse_formula("x1 | x2 & x3", 3).to_string(), "OR(x1,AND(x2,x3))");
  EXPECT_EQ(parse_formula("x1 ^ x2 | x3", 3).to_string(), "OR(XOR(x1,x2),x3)");
  EXPECT_EQ(parse_formula("x1 & x2 ^ x3", 3).to_string(), "XOR(AND(x1,x2),x3)");
  EXPECT_EQ(parse_formula("x1 -> x2 -> x3", 3).to_string(), "IMPLIES(x1,IMPLIES(x2,x3))");
  EXPECT_EQ(parse_formula("x1 <-> x2 <-> x3", 3).to_string(), "IFF(IFF(x1,x2),x3)");
  EXPECT_EQ(parse_formula("x1 | x2 -> x3 <-> x1", 3).to_string(), "IFF(IMPLIES(OR(x1,x2),x3),x1)");
  EXPECT_EQ(parse_formula("!!x1 & x2", 2).to_string(), "AND(NOT(NOT(x1)),x2)");
}

TEST(ParseFormula, Errors) {
  EXPECT_THROW(parse_formula("x3", 2), range_error);
  EXPECT_THROW(parse_formula("", 1), parse_error);
  EXPECT_THROW(parse_formula("x1 &", 1), parse_error);
  EXPECT_THROW(parse_formula("(x1", 1), parse_error);
  EXPECT_THROW(parse_formula("x0", 1), parse_error);
  EXPECT_THROW(parse_formula("x1 x2", 2), parse_error);
  EXPECT_THROW(parse_formula("x1 - x2", 2), parse_error);
  try {
    parse_formula("x1 & $", 1);
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(ParseFormula, InferredArity) {
  EXPECT_EQ(parse_formula("x4 | x2").arity(), 4u);
  EXPECT_EQ(parse_formula("1").arity(), 1u);
}

TEST(ParseDimacs, Examples) {
  const Formula single = parse_dimacs("p cnf 2 1\n1 2 0");
  EXPECT_EQ(single.to_string(), "OR(x1,x2)");
  EXPECT_EQ(single.arity(), 2u);

  const Formula contradiction = parse_dimacs("p cnf 1 2\n1 0\n-1 0");
  EXPECT_EQ(contradiction.to_string(), "AND(x1,NOT(x1))");
  EXPECT_EQ(contradiction.arity(), 1u);

  EXPECT_THROW(parse_dimacs("p cnf 2 1\n3 0"), parse_error);
}

TEST(ParseDimacs, CommentsEmptyClauseAndDuplicates) {
  const Formula f = parse_dimacs("c a comment\np cnf 2 2\nc mid\n1 1 -2 0\n0\n");
  EXPECT_EQ(f.to_string(), "AND(OR(OR(x1,x1),NOT(x2)),0)");
  EXPECT_EQ(parse_dimacs("p cnf 3 0\n").to_string(), "1");
  // clauses may span lines
  EXPECT_EQ(parse_dimacs("p cnf 3 1\n1\n2 3\n0\n").to_string(), "OR(OR(x1,x2),x3)");
}

TEST(ParseDimacs, Errors) {
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0"), parse_error);
  EXPECT_THROW(parse_dimacs("p dnf 1 1\n1 0"), parse_error);
  EXPECT_THROW(parse_dimacs("1 0"), parse_error);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2"), parse_error);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 a 0"), parse_error);
}

TEST(ParseDimacs, SerializeRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Cnf cnf;
    cnf.num_vars = 1 + rng() % 8;
    const auto clauses = rng() % 6;
    for (unsigned c = 0; c < clauses; ++c) {
      std::vector<int> clause;
      const auto width = rng() % 4;
      for (unsigned w = 0; w < width; ++w) {
        const int v = 1 + static_cast<int>(rng() % cnf.num_vars);
        clause.push_back(rng() % 2 ? v : -v);
      }
      cnf.clauses.push_back(clause);
    }
    EXPECT_EQ(parse_dimacs_cnf(to_dimacs(cnf)), cnf);
  }
}

TEST(Compile, TruthTables) {
  EXPECT_EQ(bits(fn("x1 & x2", 2)), (std::vector<bool>{0, 0, 0, 1}));
  EXPECT_EQ(bits(fn("x1 ^ x2", 2)), (std::vector<bool>{0, 1, 1, 0}));
  EXPECT_EQ(bits(fn("1", 1)), (std::vector<bool>{1, 1}));
}

TEST(Compile, MatchesPointwiseEvaluation) {
  const char* formulas[] = {"x1 -> x7 <-> !x3",      "(x1 | x2) & (x3 ^ x8) -> x9",
                            "x9 <-> x1 & !x2 | x5",  "!(x4 ^ x6) & (x7 | 0) ^ x2",
                            "x1 & x2 & x3 & x4 & x5 & x6 & x7 & x8"};
  for (const char* text : formulas) {
    for (unsigned n : {9u, 10u}) {
      const Formula f = parse_formula(text, n);
      EXPECT_EQ(bits(compile(f)), oracle::table_of(f, n)) << text << " n=" << n;
    }
  }
}

TEST(Compile, SharedSubformula) {
  Formula f;
  const auto x = f.add_var(1);
  f.add_binary(Op::xor_, x, x);
  f.set_arity(1);
  EXPECT_EQ(bits(compile(f)), (std::vector<bool>{0, 0}));
}

TEST(Compile, ArityLimit) {
  const Formula f = parse_formula("x1", 1);
  EXPECT_THROW(compile(f, 25), arity_error);
  EXPECT_THROW(compile(f, 8, /*max_n=*/6), arity_error);
  EXPECT_NO_THROW(compile(f, 6, 6));
}

TEST(Evaluate, Points) {
  const auto f = fn("x1 & x2", 2);
  EXPECT_TRUE(evaluate(f, 3));
  EXPECT_FALSE(evaluate(f, 0));
  EXPECT_TRUE(evaluate(kGhz, 4));
  EXPECT_THROW(evaluate(f, 4), range_error);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(BooleanFunction::constant(2, false)), (ClassificationResult{FunctionKind::constant0, 0}));
  EXPECT_EQ(classify(fn("x1 ^ x2", 2)), (ClassificationResult{FunctionKind::balanced, 2}));
  EXPECT_EQ(classify(fn("x1 & x2", 2)), (ClassificationResult{FunctionKind::neither, 1}));
  EXPECT_EQ(classify(BooleanFunction::constant(7, true)).kind, FunctionKind::constant1);
}

TEST(Classify, CountMatchesPointwiseExhaustive) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (1u << n)); ++w) {
      const auto f = BooleanFunction::from_word(n, w);
      std::uint64_t count = 0;
      for (std::uint64_t i = 0; i < f.size(); ++i) count += evaluate(f, i);
      const auto c = classify(f);
      ASSERT_EQ(c.satisfying_count, count);
      const bool balanced = count == f.size() / 2;
      ASSERT_EQ(c.kind == FunctionKind::balanced, balanced);
      ASSERT_EQ(c.kind == FunctionKind::constant0, count == 0);
      ASSERT_EQ(c.kind == FunctionKind::constant1, count == f.size());
    }
  }
}

TEST(Anf, Examples) {
  EXPECT_EQ(anf(fn("x1 & x2", 2)), Hypergraph::from_vertex_lists(2, false, {{0, 1}}));
  EXPECT_EQ(anf(fn("x1 | x2", 2)), Hypergraph::from_vertex_lists(2, false, {{0}, {1}, {0, 1}}));
  EXPECT_EQ(anf(BooleanFunction::constant(2, true)), Hypergraph(2, true));
}

TEST(Anf, OrMatchesSubsetSumOracle) {
  const auto coeffs = oracle::anf_coefficients({0, 1, 1, 1});
  EXPECT_EQ(coeffs, (std::vector<bool>{0, 1, 1, 1}));  // {0}, {1}, {0,1}
}

TEST(Anf, MatchesSubsetSumOracle) {
  std::mt19937_64 rng(11);
  for (unsigned n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(n, rng);
      const auto coeffs = oracle::anf_coefficients(bits(f));
      const Hypergraph h = anf(f);
      EXPECT_EQ(h.constant_bit(), coeffs[0]);
      std::vector<std::uint32_t> expected;
      for (std::uint32_t s = 1; s < coeffs.size(); ++s) {
        if (coeffs[s]) expected.push_back(s);
      }
      std::vector<std::uint32_t> got(h.edges().begin(), h.edges().end());
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(FromAnf, Examples) {
  EXPECT_EQ(bits(from_anf(Hypergraph::from_vertex_lists(2, false, {{0, 1}}))), (std::vector<bool>{0, 0, 0, 1}));
  EXPECT_EQ(bits(from_anf(anf(fn("x1 | x2", 2)))), (std::vector<bool>{0, 1, 1, 1}));
  EXPECT_EQ(bits(from_anf(Hypergraph(3, true))), std::vector<bool>(8, true));
  EXPECT_THROW(from_anf(Hypergraph(8, false), 6), arity_error);
}

TEST(FromAnf, MatchesDirectPolynomialEvaluation) {
  std::mt19937_64 rng(3);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto f = random_function(n, rng);
    const Hypergraph h = anf(f);
    EXPECT_EQ(oracle::eval_anf(n, h.constant_bit(), h.edges()), bits(f));
  }
}

TEST(Anf, InvolutionExhaustiveSmall) {
  for (unsigned n = 1; n <= 4; ++n) {
    std::set<std::pair<bool, std::vector<EdgeMask>>> seen;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (1u << n)); ++w) {
      const auto f = BooleanFunction::from_word(n, w);
      const Hypergraph h = anf(f);
      ASSERT_EQ(from_anf(h), f);
      ASSERT_EQ(anf(from_anf(h)), h);
      ASSERT_LE(h.edges().size() + (h.constant_bit() ? 1u : 0u), f.size());
      ASSERT_TRUE(seen.insert({h.constant_bit(), h.edges()}).second) << "ANF not unique";
    }
  }
}

TEST(Anf, InvolutionRandomLarge) {
  std::mt19937_64 rng(5);
  for (unsigned n = 5; n <= 12; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_function(n, rng);
      const Hypergraph h = anf(f);
      ASSERT_EQ(from_anf(h), f);
      ASSERT_EQ(anf(from_anf(h)), h);
    }
  }
}

TEST(Hypergraph, Validation) {
  EXPECT_THROW(Hypergraph(2, false, {0}), range_error);
  EXPECT_THROW(Hypergraph(2, false, {4}), range_error);
  EXPECT_THROW(Hypergraph(2, false, {1, 1}), range_error);
  EXPECT_THROW(Hypergraph(0), arity_error);
  const Hypergraph h(3, false, {6, 1, 3, 4});
  EXPECT_EQ(h.edge_lists(), (std::vector<std::vector<unsigned>>{{0}, {2}, {0, 1}, {1, 2}}));
}

TEST(AnfText, FormatAndParse) {
  const Hypergraph h = anf(kGhz);
  EXPECT_EQ(to_anf_text(h), "c 1\n0\n1\n0 1\n1 2\n");
  EXPECT_EQ(parse_anf_text(to_anf_text(h), 3), h);
  EXPECT_EQ(parse_anf_text("c 0\n0 1\n").vertex_count(), 2u);
  EXPECT_EQ(parse_anf_text("c 1\n").vertex_count(), 1u);
  EXPECT_THROW(parse_anf_text("0 1\n"), parse_error);
  EXPECT_THROW(parse_anf_text("c 2\n"), parse_error);
  EXPECT_THROW(parse_anf_text("c 0\n0 0\n"), parse_error);
  EXPECT_THROW(parse_anf_text("c 0\n3\n", 2), range_error);
  EXPECT_THROW(parse_anf_text("c 0\n1\n1\n"), range_error);
}

TEST(SatBrute, Examples) {
  EXPECT_EQ(sat_brute(fn("x1 & x2", 2)), 3u);
  EXPECT_EQ(sat_brute(BooleanFunction::constant(3, false)), std::nullopt);
  EXPECT_EQ(sat_brute(fn("x1 | x2", 2)), 1u);
  EXPECT_EQ(sat_brute(fn("x8 & x9", 9)), 384u);
}

TEST(ConjoinFresh, Examples) {
  const auto g = conjoin_fresh(fn("x1", 1), 2);
  EXPECT_EQ(g, fn("x1 & x2 & x3", 3));
  EXPECT_EQ(classify(g).satisfying_count, 1u);

  const auto taut = conjoin_fresh(BooleanFunction::constant(2, true), 2);
  EXPECT_EQ(taut.arity(), 4u);
  EXPECT_EQ(classify(taut).satisfying_count, 4u);

  EXPECT_EQ(conjoin_fresh(BooleanFunction::constant(2, false), 1), BooleanFunction::constant(3, false));
}

TEST(ConjoinFresh, PreservesCountAndMatchesFormula) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (1u << n)); ++w) {
      const auto f = BooleanFunction::from_word(n, w);
      for (unsigned count : {1u, 2u}) {
        const auto g = conjoin_fresh(f, count);
        ASSERT_EQ(g.arity(), n + count);
        ASSERT_EQ(classify(g).satisfying_count, classify(f).satisfying_count);
        for (std::uint64_t i = 0; i < g.size(); ++i) {
          const std::uint64_t fresh = i >> n;
          const bool expected = f(i & (f.size() - 1)) && fresh == (std::uint64_t{1} << count) - 1;
          ASSERT_EQ(g(i), expected);
        }
      }
    }
  }
}

TEST(ConjoinFresh, WordAlignedPath) {
  std::mt19937_64 rng(9);
  const auto f = random_function(7, rng);
  const auto g = conjoin_fresh(f, 2);
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    ASSERT_EQ(g(i), i >= 3 * f.size() && f(i - 3 * f.size()));
  }
}

TEST(ConjoinFresh, Errors) {
  EXPECT_THROW(conjoin_fresh(BooleanFunction(1), 3), range_error);
  EXPECT_THROW(conjoin_fresh(BooleanFunction(23), 2), arity_error);
  EXPECT_THROW(conjoin_fresh(BooleanFunction(5), 2, 6), arity_error);
}

TEST(Hex, Format) {
  EXPECT_EQ(to_hex(kGhz), "d1");
  EXPECT_EQ(to_hex(fn("x1 & x2", 2)), "08");
  EXPECT_EQ(to_hex(fn("x4", 4)), "00ff");
  EXPECT_EQ(function_from_hex("d1", 3), kGhz);
  EXPECT_EQ(function_from_hex("8", 2), fn("x1 & x2", 2));
  EXPECT_EQ(function_from_hex("00FF", 4), fn("x4", 4));
  EXPECT_THROW(function_from_hex("d1", 4), parse_error);
  EXPECT_THROW(function_from_hex("1f", 2), parse_error);
  EXPECT_THROW(function_from_hex("zz", 3), parse_error);
}

TEST(Hex, RoundTripRandom) {
  std::mt19937_64 rng(13);
  for (unsigned n = 1; n <= 12; ++n) {
    const auto f = random_function(n, rng);
    ASSERT_EQ(function_from_hex(to_hex(f), n), f);
  }
}
