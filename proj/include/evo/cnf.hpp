#pragma once

// 3-CNF formulas: DIMACS I/O, clause duplication, a DPLL oracle and a
// seeded random generator.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evo {

using Var = std::uint32_t; // 1-based

struct Literal {
  Var var = 1;
  bool positive = true;

  /// Signed DIMACS form: +var or -var.
  int dimacs() const noexcept { return positive ? static_cast<int>(var) : -static_cast<int>(var); }
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// A formula with `num_vars` >= 1 variables and clauses of exactly three
/// literal occurrences. Repeated and complementary literals are allowed.
struct CnfFormula {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  std::size_t num_clauses() const noexcept { return clauses.size(); }
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Total truth assignment. values[v - 1] is the value of variable v.
struct Assignment {
  std::vector<bool> values;

  Var num_vars() const noexcept { return static_cast<Var>(values.size()); }
  bool operator[](Var v) const { return values.at(v - 1); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Throws std::invalid_argument when the formula breaks its invariants.
void validate(const CnfFormula& formula);

bool evaluate(const Clause& clause, const Assignment& assignment);
bool satisfies(const CnfFormula& formula, const Assignment& assignment);

/// Strict 3-SAT DIMACS reader. Throws FormatError.
CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& formula);

/// Φ' ↦ Φ' ∧ Φ': clause j + m' is a copy of clause j.
CnfFormula duplicate_clauses(const CnfFormula& formula);

/// Deterministic DPLL with unit propagation; branches on the lowest
/// unassigned variable, true first. Unconstrained variables end up true.
std::optional<Assignment> dpll_sat(const CnfFormula& formula);

/// Each literal drawn uniformly with replacement from the 2n literals.
CnfFormula gen_cnf(Var num_vars, std::size_t num_clauses, std::uint64_t seed);

/// `1 -2 3 0`, or `UNSAT` for an empty optional.
std::string format_assignment(const std::optional<Assignment>& assignment);

/// Parses an assignment line. Every variable 1..num_vars must appear exactly
/// once; a trailing 0 is optional. Throws FormatError (including for `UNSAT`).
Assignment parse_assignment(std::string_view text, Var num_vars);

} // namespace evo
