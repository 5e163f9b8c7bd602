#include "evo/cnf.hpp"

#include "evo/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace evo {
namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw FormatError(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

} // namespace

void validate(const CnfFormula& formula) {
  if (formula.num_vars == 0) throw std::invalid_argument("formula must have at least one variable");
  for (const Clause& c : formula.clauses)
    for (const Literal& l : c)
      if (l.var < 1 || l.var > formula.num_vars)
        throw std::invalid_argument("literal variable " + std::to_string(l.var) + " out of range 1.." +
                                    std::to_string(formula.num_vars));
}

bool evaluate(const Clause& clause, const Assignment& assignment) {
  for (const Literal& l : clause)
    if (assignment[l.var] == l.positive) return true;
  return false;
}

bool satisfies(const CnfFormula& formula, const Assignment& assignment) {
  if (assignment.num_vars() != formula.num_vars) return false;
  for (const Clause& c : formula.clauses)
    if (!evaluate(c, assignment)) return false;
  return true;
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula formula;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::size_t header_line = 0;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    const auto tokens = split(line);
    if (tokens.empty()) continue;
    if (tokens.front().front() == 'c') continue;
    if (tokens.front() == "%") break; // SATLIB trailer
    if (tokens.front() == "p") {
      if (have_header) throw FormatError(line_no, "duplicate 'p cnf' header (first on line " + std::to_string(header_line) + ")");
      if (tokens.size() != 4 || tokens[1] != "cnf") throw FormatError(line_no, "header must read 'p cnf <vars> <clauses>'");
      const long long n = to_int(tokens[2], line_no);
      const long long m = to_int(tokens[3], line_no);
      if (n <= 0) throw FormatError(line_no, "formula must have at least one variable");
      if (m < 0) throw FormatError(line_no, "negative clause count");
      formula.num_vars = static_cast<Var>(n);
      declared_clauses = static_cast<std::size_t>(m);
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (!have_header) throw FormatError(line_no, "clause data before 'p cnf' header");

    for (std::string_view tok : tokens) {
      const long long v = to_int(tok, line_no);
      if (pending.empty()) pending_line = line_no;
      if (v == 0) {
        if (pending.size() != 3)
          throw FormatError(pending_line, "clause has " + std::to_string(pending.size()) + " literals, expected exactly 3");
        formula.clauses.push_back(Clause{pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const long long var = std::llabs(v);
      if (var > formula.num_vars)
        throw FormatError(line_no, "literal " + std::string(tok) + " out of range 1.." + std::to_string(formula.num_vars));
      if (pending.size() == 3) throw FormatError(pending_line, "clause has more than 3 literals");
      pending.push_back(Literal{static_cast<Var>(var), v > 0});
    }
  }

  if (!have_header) throw FormatError(0, "missing 'p cnf' header");
  if (!pending.empty()) throw FormatError(pending_line, "clause not terminated by 0");
  if (formula.clauses.size() != declared_clauses)
    throw FormatError(header_line, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                       std::to_string(formula.clauses.size()));
  return formula;
}

std::string serialize_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars) + ' ' + std::to_string(formula.clauses.size()) + '\n';
  for (const Clause& c : formula.clauses) {
    for (const Literal& l : c) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfFormula duplicate_clauses(const CnfFormula& formula) {
  CnfFormula out = formula;
  out.clauses.insert(out.clauses.end(), formula.clauses.begin(), formula.clauses.end());
  return out;
}

namespace {

enum class Value : signed char { False = 0, True = 1, Unset = -1 };

class Dpll {
public:
  explicit Dpll(const CnfFormula& f) : formula_(f), values_(f.num_vars + 1, Value::Unset) {}

  bool solve() {
    if (!propagate()) return false;
    Var branch = 0;
    for (Var v = 1; v <= formula_.num_vars; ++v)
      if (values_[v] == Value::Unset && occurs_in_open_clause(v)) {
        branch = v;
        break;
      }
    if (branch == 0) return true;
    for (Value choice : {Value::True, Value::False}) {
      const auto saved = values_;
      values_[branch] = choice;
      if (solve()) return true;
      values_ = saved;
    }
    return false;
  }

  Assignment assignment() const {
    Assignment a;
    a.values.resize(formula_.num_vars);
    for (Var v = 1; v <= formula_.num_vars; ++v) a.values[v - 1] = values_[v] != Value::False;
    return a;
  }

private:
  Value value_of(const Literal& l) const {
    const Value v = values_[l.var];
    if (v == Value::Unset) return v;
    return (v == Value::True) == l.positive ? Value::True : Value::False;
  }

  bool occurs_in_open_clause(Var var) const {
    for (const Clause& c : formula_.clauses) {
      bool sat = false;
      bool mentions = false;
      for (const Literal& l : c) {
        sat = sat || value_of(l) == Value::True;
        mentions = mentions || l.var == var;
      }
      if (!sat && mentions) return true;
    }
    return false;
  }

  // Unit propagation to fixpoint; false on a falsified clause.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : formula_.clauses) {
        bool sat = false;
        const Literal* unit = nullptr;
        bool multiple_open = false;
        for (const Literal& l : c) {
          const Value v = value_of(l);
          if (v == Value::True) {
            sat = true;
            break;
          }
          if (v == Value::Unset) {
            if (unit && unit->var != l.var) multiple_open = true;
            else if (unit && unit->positive != l.positive) multiple_open = true; // x ∨ ¬x
            unit = unit ? unit : &l;
          }
        }
        if (sat || multiple_open) continue;
        if (!unit) return false;
        values_[unit->var] = unit->positive ? Value::True : Value::False;
        changed = true;
      }
    }
    return true;
  }

  const CnfFormula& formula_;
  std::vector<Value> values_;
};

} // namespace

std::optional<Assignment> dpll_sat(const CnfFormula& formula) {
  validate(formula);
  Dpll solver(formula);
  if (!solver.solve()) return std::nullopt;
  return solver.assignment();
}

CnfFormula gen_cnf(Var num_vars, std::size_t num_clauses, std::uint64_t seed) {
  if (num_vars == 0) throw std::invalid_argument("gen_cnf needs at least one variable");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, 2 * std::uint64_t{num_vars} - 1);
  CnfFormula f;
  f.num_vars = num_vars;
  f.clauses.reserve(num_clauses);
  for (std::size_t j = 0; j < num_clauses; ++j) {
    Clause c;
    for (Literal& l : c) {
      const auto k = pick(rng);
      l = Literal{static_cast<Var>(k / 2 + 1), k % 2 == 0};
    }
    f.clauses.push_back(c);
  }
  return f;
}

std::string format_assignment(const std::optional<Assignment>& assignment) {
  if (!assignment) return "UNSAT";
  std::string out;
  for (Var v = 1; v <= assignment->num_vars(); ++v) {
    out += (*assignment)[v] ? std::to_string(v) : "-" + std::to_string(v);
    out += ' ';
  }
  out += '0';
  return out;
}

Assignment parse_assignment(std::string_view text, Var num_vars) {
  std::vector<signed char> seen(num_vars + 1, -1);
  bool terminated = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    for (std::string_view tok : split(line)) {
      if (tok == "UNSAT") throw FormatError(line_no, "assignment file says UNSAT; no assignment to use");
      if (terminated) throw FormatError(line_no, "data after terminating 0");
      const long long v = to_int(tok, line_no);
      if (v == 0) {
        terminated = true;
        continue;
      }
      const long long var = std::llabs(v);
      if (var > num_vars) throw FormatError(line_no, "variable " + std::to_string(var) + " out of range 1.." + std::to_string(num_vars));
      if (seen[var] != -1) throw FormatError(line_no, "variable " + std::to_string(var) + " assigned twice");
      seen[var] = v > 0 ? 1 : 0;
    }
  }
  Assignment a;
  a.values.resize(num_vars);
  for (Var v = 1; v <= num_vars; ++v) {
    if (seen[v] == -1) throw FormatError(0, "assignment does not mention variable " + std::to_string(v) + " (arity mismatch)");
    a.values[v - 1] = seen[v] == 1;
  }
  return a;
}

} // namespace evo
