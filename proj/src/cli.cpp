#include "evo/cli.hpp"

#include "evo/certificates.hpp"
#include "evo/cnf.hpp"
#include "evo/errors.hpp"
#include "evo/reduction.hpp"
#include "evo/search.hpp"
#include "evo/setfam.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace evo::cli {
namespace {

// Any failure that maps to exit code 2, already formatted for stderr.
struct UsageFailure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{path + ": cannot open file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw UsageFailure{path + ": read error"};
  return ss.str();
}

// Runs a parser over a file's contents, tagging format errors with the path.
template <typename Fn>
auto parse_file(const std::string& path, Fn&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const FormatError& e) {
    throw UsageFailure{path + (e.line() ? ":" + std::to_string(e.line()) : std::string()) + ": " + e.detail()};
  }
}

SetFamily load_family(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  SetFamily family = parse_file(path, [&](const std::string& t) { return parse_family(t, &warnings); });
  for (const auto& w : warnings) err << "evo: warning: " << path << ": " << w << '\n';
  return family;
}

void write_output(const std::string& path, const std::string& contents) {
  try {
    write_file_atomic(path, contents);
  } catch (const std::exception& e) {
    throw UsageFailure{path + ": cannot write: " + e.what()};
  }
}

int cmd_check(const std::string& family_path, const std::string& ordering_path, std::ostream& out, std::ostream& err) {
  const SetFamily family = load_family(family_path, err);
  const Ordering ordering = parse_file(ordering_path, [](const std::string& t) { return parse_ordering(t); });
  CheckReport report;
  try {
    report = check_evolutionary(family, ordering);
  } catch (const MalformedOrdering& e) {
    throw UsageFailure{ordering_path + ": malformed ordering: " + e.what()};
  }
  out << render_report(family, report);
  return report.accepted ? kAffirmative : kNegative;
}

struct SolveArgs {
  std::string family;
  bool brute = false;
  bool no_precheck = false;
  std::string witness;
  bool verbose = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const SetFamily family = load_family(a.family, err);
  Verdict verdict;
  if (a.brute) {
    try {
      verdict = brute_force(family);
    } catch (const std::invalid_argument& e) {
      throw UsageFailure{a.family + ": " + e.what()};
    }
  } else {
    DecideOptions options;
    options.use_precheck = !a.no_precheck;
    verdict = decide(family, options);
  }
  out << (verdict.evolutionary ? "EVOLUTIONARY" : "NOT EVOLUTIONARY") << '\n';
  if (verdict.witness) out << "witness: " << serialize_ordering(*verdict.witness);
  if (a.verbose) out << render_stats(verdict.stats) << '\n';
  if (!a.witness.empty() && verdict.witness) write_output(a.witness, serialize_ordering(*verdict.witness));
  return verdict.evolutionary ? kAffirmative : kNegative;
}

int cmd_reduce(const std::string& cnf_path, const std::string& family_out, const std::string& map_out, bool no_duplicate,
               std::ostream& out) {
  CnfFormula formula = parse_file(cnf_path, [](const std::string& t) { return parse_dimacs(t); });
  if (!no_duplicate) formula = duplicate_clauses(formula);
  const ReductionInstance inst = build_instance(formula, ReductionOptions{!no_duplicate});
  write_output(family_out, serialize_family(inst.family));
  write_output(map_out, serialize_rolemap(inst));
  out << "sets=" << inst.family.set_count() << " elements=" << inst.family.universe_size() << '\n';
  return kAffirmative;
}

ReductionInstance load_instance(const std::string& map_path) {
  return parse_file(map_path, [](const std::string& t) { return instance_from_rolemap(t); });
}

int cmd_forward(const std::string& map_path, const std::string& assignment_path, const std::string& ordering_out,
                std::ostream& err) {
  const ReductionInstance inst = load_instance(map_path);
  const Assignment alpha =
      parse_file(assignment_path, [&](const std::string& t) { return parse_assignment(t, inst.num_vars()); });
  const Ordering ordering = ordering_from_assignment(inst, alpha);
  write_output(ordering_out, serialize_ordering(ordering));
  const CheckReport report = check_evolutionary(inst.family, ordering);
  if (!report.accepted) {
    err << "evo: note: assignment does not satisfy the formula; ordering rejected at step "
        << report.violation->position << ": " << violation_name(report.violation->reason) << '\n';
    return kNegative;
  }
  return kAffirmative;
}

int cmd_extract(const std::string& map_path, const std::string& ordering_path, bool verbose, std::ostream& out,
                std::ostream& err) {
  const ReductionInstance inst = load_instance(map_path);
  const Ordering ordering = parse_file(ordering_path, [](const std::string& t) { return parse_ordering(t); });
  ExtractionReport report;
  CheckReport check;
  try {
    report = assignment_from_ordering(inst, ordering);
    check = check_evolutionary(inst.family, ordering);
  } catch (const MalformedOrdering& e) {
    throw UsageFailure{ordering_path + ": malformed ordering: " + e.what()};
  }
  out << format_assignment(report.derived) << '\n';
  if (verbose) {
    for (Var i = 1; i <= inst.num_vars(); ++i) {
      const auto& early = report.early[i - 1];
      out << "var " << i << ": L" << i << '=' << (early.positive ? "early" : "late") << " Lbar" << i << '='
          << (early.negative ? "early" : "late") << " -> " << (report.derived[i] ? "true" : "false") << '\n';
    }
  }
  if (!check.accepted) {
    err << "evo: warning: ordering is not evolutionary (rejected at step " << check.violation->position << ": "
        << violation_name(check.violation->reason) << "); assignment is untrusted\n";
    return kNegative;
  }
  return kAffirmative;
}

int cmd_sat(const std::string& cnf_path, std::ostream& out) {
  const CnfFormula formula = parse_file(cnf_path, [](const std::string& t) { return parse_dimacs(t); });
  const auto result = dpll_sat(formula);
  out << format_assignment(result) << '\n';
  return result ? kAffirmative : kNegative;
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw std::runtime_error("cannot create " + tmp.string());
    o << contents;
    o.flush();
    if (!o) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into place: " + ec.message());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolutionary ordering toolkit: verify, solve, and reduce from 3-SAT", "evo"};
  app.require_subcommand(1);

  std::string family_path, ordering_path, map_path, cnf_path, assignment_path, out_path;

  auto* check = app.add_subcommand("check", "Verify an ordering of a set family");
  check->add_option("FAMILY", family_path, "Family file")->required();
  check->add_option("ORDERING", ordering_path, "Ordering file")->required();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Decide whether a family is evolutionary");
  solve->add_option("FAMILY", solve_args.family, "Family file")->required();
  solve->add_flag("--brute-force", solve_args.brute, "Enumerate permutations instead of searching");
  solve->add_flag("--no-precheck", solve_args.no_precheck, "Skip the necessary-condition prechecks");
  solve->add_option("--witness", solve_args.witness, "Write the witness ordering here");
  solve->add_flag("-v,--verbose", solve_args.verbose, "Print search statistics");

  std::string map_out;
  bool no_duplicate = false;
  auto* reduce = app.add_subcommand("reduce", "Compile a 3-CNF formula into a set family");
  reduce->add_option("CNF", cnf_path, "DIMACS CNF file")->required();
  reduce->add_option("--out", out_path, "Family output file")->required();
  reduce->add_option("--map", map_out, "Role-map output file")->required();
  reduce->add_flag("--no-duplicate", no_duplicate, "Do not duplicate clauses before compiling");

  auto* forward = app.add_subcommand("forward", "Turn a satisfying assignment into an ordering");
  forward->add_option("MAP", map_path, "Role-map file")->required();
  forward->add_option("ASSIGNMENT", assignment_path, "Assignment file")->required();
  forward->add_option("--out", out_path, "Ordering output file")->required();

  bool extract_verbose = false;
  auto* extract = app.add_subcommand("extract", "Read an assignment off an ordering");
  extract->add_option("MAP", map_path, "Role-map file")->required();
  extract->add_option("ORDERING", ordering_path, "Ordering file")->required();
  extract->add_flag("-v,--verbose", extract_verbose, "Print which variable sets precede their verification set");

  auto* sat = app.add_subcommand("sat", "Solve a 3-CNF formula with DPLL");
  sat->add_option("CNF", cnf_path, "DIMACS CNF file")->required();

  auto* gen = app.add_subcommand("gen", "Generate random instances on standard output");
  gen->require_subcommand(1);
  std::size_t sets = 0, universe = 0, clauses = 0;
  Var vars = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  auto* gen_family_cmd = gen->add_subcommand("family", "Random set family");
  gen_family_cmd->add_option("--sets", sets, "Number of sets")->required();
  gen_family_cmd->add_option("--universe", universe, "Universe size")->required();
  gen_family_cmd->add_option("--density", density, "Membership probability")->required()->check(CLI::Range(0.0, 1.0));
  gen_family_cmd->add_option("--seed", seed, "Random seed")->required();
  auto* gen_cnf_cmd = gen->add_subcommand("cnf", "Random 3-CNF formula");
  gen_cnf_cmd->add_option("--vars", vars, "Number of variables")->required()->check(CLI::PositiveNumber);
  gen_cnf_cmd->add_option("--clauses", clauses, "Number of clauses")->required();
  gen_cnf_cmd->add_option("--seed", seed, "Random seed")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAffirmative;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "evo: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*check) return cmd_check(family_path, ordering_path, out, err);
    if (*solve) return cmd_solve(solve_args, out, err);
    if (*reduce) return cmd_reduce(cnf_path, out_path, map_out, no_duplicate, out);
    if (*forward) return cmd_forward(map_path, assignment_path, out_path, err);
    if (*extract) return cmd_extract(map_path, ordering_path, extract_verbose, out, err);
    if (*sat) return cmd_sat(cnf_path, out);
    if (*gen_family_cmd) {
      out << serialize_family(gen_family(sets, universe, density, seed));
      return kAffirmative;
    }
    if (*gen_cnf_cmd) {
      out << serialize_dimacs(gen_cnf(vars, clauses, seed));
      return kAffirmative;
    }
  } catch (const UsageFailure& f) {
    err << "evo: " << f.message << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "evo: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

} // namespace evo::cli
