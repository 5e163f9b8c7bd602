#include "evo/cnf.hpp"
#include "evo/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace evo;
using evo::testing::all_clauses_true;
using evo::testing::truth_table_models;

namespace {

Clause clause(int a, int b, int c) {
  auto lit = [](int v) { return Literal{static_cast<Var>(std::abs(v)), v > 0}; };
  return Clause{lit(a), lit(b), lit(c)};
}

TEST(ParseDimacs, Basic) {
  const CnfFormula f = parse_dimacs("p cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
  EXPECT_EQ(f.num_vars, 3u);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[0], clause(1, 2, -3));
  EXPECT_EQ(f.clauses[1], clause(-1, 2, 3));
}

TEST(ParseDimacs, CommentsAndRepeatedLiterals) {
  const CnfFormula f = parse_dimacs("c hi\np cnf 1 1\n1 1 1 0\n");
  EXPECT_EQ(f.num_vars, 1u);
  ASSERT_EQ(f.clauses.size(), 1u);
  EXPECT_EQ(f.clauses[0], clause(1, 1, 1));
}

TEST(ParseDimacs, ClausesMaySpanLines) {
  const CnfFormula f = parse_dimacs("p cnf 3 2\n1 2\n-3 0 -1 2 3\n0\n");
  EXPECT_EQ(f.clauses[1], clause(-1, 2, 3));
}

TEST(ParseDimacs, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_dimacs(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    ADD_FAILURE() << "no error for: " << text;
    return 999;
  };
  EXPECT_EQ(line_of("p cnf 2 1\n1 2 0\n"), 2u);              // 2 literals
  EXPECT_EQ(line_of("p cnf 2 1\n1 2 1 2 0\n"), 2u);          // 4 literals
  EXPECT_EQ(line_of("c x\n1 2 3 0\n"), 2u);                  // clause before header
  EXPECT_EQ(line_of("1 2 3 0\np cnf 3 1\n"), 1u);
  EXPECT_EQ(line_of("p cnf 3 1\np cnf 3 1\n1 2 3 0\n"), 2u); // duplicate header
  EXPECT_EQ(line_of("p cnf 2 1\n1 2 3 0\n"), 2u);            // out of range
  EXPECT_EQ(line_of("p cnf 0 0\n"), 1u);                     // n = 0
  EXPECT_EQ(line_of("p cnf 3 2\n1 2 3 0\n"), 1u);            // count mismatch
  EXPECT_EQ(line_of("p cnf 3 1\n1 2 3\n"), 2u);              // unterminated
  EXPECT_EQ(line_of("p cnf 3 1\n1 2 x 0\n"), 2u);
  EXPECT_EQ(line_of(""), 0u);                                // missing header
}

TEST(ParseDimacs, ZeroClausesAccepted) {
  const CnfFormula f = parse_dimacs("p cnf 2 0\n");
  EXPECT_TRUE(f.clauses.empty());
  EXPECT_TRUE(dpll_sat(f).has_value());
}

TEST(ParseDimacs, RoundTripsGeneratedFormulas) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CnfFormula f = gen_cnf(1 + seed % 6, seed % 9, seed);
    EXPECT_EQ(parse_dimacs(serialize_dimacs(f)), f);
  }
}

TEST(DuplicateClauses, CopiesInOrder) {
  CnfFormula f{3, {clause(1, 2, 3), clause(-1, -2, -3)}};
  const CnfFormula d = duplicate_clauses(f);
  ASSERT_EQ(d.clauses.size(), 4u);
  EXPECT_EQ(d.clauses[2], f.clauses[0]);
  EXPECT_EQ(d.clauses[3], f.clauses[1]);
  EXPECT_EQ(d.num_vars, 3u);

  CnfFormula one{1, {clause(1, 1, 1)}};
  EXPECT_EQ(duplicate_clauses(one).clauses, (std::vector<Clause>{clause(1, 1, 1), clause(1, 1, 1)}));
}

TEST(DuplicateClauses, PreservesSatisfiability) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CnfFormula f = gen_cnf(1 + seed % 5, 1 + seed % 8, 1000 + seed);
    EXPECT_EQ(dpll_sat(f).has_value(), dpll_sat(duplicate_clauses(f)).has_value()) << "seed " << seed;
  }
}

TEST(DuplicateClauses, PreservesModelsExactly) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CnfFormula f = gen_cnf(1 + seed % 4, seed % 10, 2000 + seed);
    EXPECT_EQ(truth_table_models(f), truth_table_models(duplicate_clauses(f)));
  }
}

TEST(Dpll, ForcedUnit) {
  const auto a = dpll_sat(CnfFormula{1, {clause(1, 1, 1)}});
  ASSERT_TRUE(a);
  EXPECT_TRUE((*a)[1]);
}

TEST(Dpll, Contradiction) { EXPECT_FALSE(dpll_sat(CnfFormula{1, {clause(1, 1, 1), clause(-1, -1, -1)}})); }

TEST(Dpll, TautologicalClauseIsNotAUnit) {
  const auto a = dpll_sat(CnfFormula{2, {clause(1, -1, 2), clause(-2, -2, -2)}});
  ASSERT_TRUE(a);
  EXPECT_FALSE((*a)[2]);
}

TEST(Dpll, BranchesTrueFirst) {
  // Unconstrained and freely chosen variables come out true.
  const auto a = dpll_sat(CnfFormula{3, {clause(1, 2, 2)}});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->values, (std::vector<bool>{true, true, true}));
}

TEST(Dpll, AgreesWithTruthTable) {
  int sat = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Var n = 1 + seed % 4;
    const CnfFormula f = gen_cnf(n, 1 + seed % 14, 3000 + seed);
    const auto models = truth_table_models(f);
    const auto a = dpll_sat(f);
    ASSERT_EQ(a.has_value(), !models.empty()) << serialize_dimacs(f);
    if (a) {
      ++sat;
      EXPECT_TRUE(all_clauses_true(f, a->values));
    }
  }
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 200);
}

TEST(Dpll, Deterministic) {
  const CnfFormula f = gen_cnf(8, 30, 5);
  EXPECT_EQ(dpll_sat(f), dpll_sat(f));
}

TEST(GenCnf, Reproducible) {
  EXPECT_EQ(gen_cnf(3, 5, 7), gen_cnf(3, 5, 7));
  EXPECT_NE(gen_cnf(3, 5, 7), gen_cnf(3, 5, 8));
}

TEST(GenCnf, LiteralsInRange) {
  const CnfFormula f = gen_cnf(4, 200, 99);
  ASSERT_EQ(f.clauses.size(), 200u);
  bool saw_neg = false, saw_pos = false;
  for (const Clause& c : f.clauses)
    for (const Literal& l : c) {
      EXPECT_GE(l.var, 1u);
      EXPECT_LE(l.var, 4u);
      (l.positive ? saw_pos : saw_neg) = true;
    }
  EXPECT_TRUE(saw_pos && saw_neg);
  EXPECT_THROW(gen_cnf(0, 1, 1), std::invalid_argument);
}

TEST(GenCnf, SatRateIsStrictlyBetweenZeroAndOne) {
  int sat = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) sat += dpll_sat(gen_cnf(5, 20, seed)).has_value();
  EXPECT_GT(sat, 0);
  EXPECT_LT(sat, 500);
}

TEST(AssignmentText, FormatAndParse) {
  const Assignment a{{true, false, true}};
  EXPECT_EQ(format_assignment(a), "1 -2 3 0");
  EXPECT_EQ(format_assignment(std::nullopt), "UNSAT");
  EXPECT_EQ(parse_assignment("1 -2 3 0\n", 3), a);
  EXPECT_EQ(parse_assignment("-2 3 1", 3), a);
  EXPECT_THROW(parse_assignment("1 -2 0", 3), FormatError);   // arity
  EXPECT_THROW(parse_assignment("1 -1 2 3 0", 3), FormatError); // twice
  EXPECT_THROW(parse_assignment("1 2 3 4 0", 3), FormatError);  // range
  EXPECT_THROW(parse_assignment("UNSAT", 3), FormatError);
}

TEST(Validate, RejectsBadFormulas) {
  EXPECT_THROW(validate(CnfFormula{0, {}}), std::invalid_argument);
  EXPECT_THROW(validate(CnfFormula{1, {clause(1, 2, 1)}}), std::invalid_argument);
}

} // namespace
