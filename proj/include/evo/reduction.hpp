#pragma once

// Compiles a 3-CNF formula into a set family that is evolutionary exactly
// when the formula is satisfiable.
//
// Universe (1-based i over variables, j over clauses, h over occurrences of
// one literal):
//   x{i} nx{i}      assignment elements
//   t{i} nt{i} tau  trigger elements
//   f{i} nf{i}      free elements
//   l{i}.{h} nl{i}.{h}  one element per literal occurrence
//   c{j} cp{j}      clause elements
//
// Sets, in index order:
//   T  = {tau}
//   T' = {tau, t1, nt1, ..., tn, ntn}
//   for each i:  L_i  = {x_i, t_i, f_i, positive occurrences of i}
//                Lb_i = {nx_i, nt_i, nf_i, negative occurrences of i}
//                V_i  = {x_i, nx_i, c_1, cp_1, ..., c_m, cp_m}
//   for each j:  C_j  = {the three occurrence elements of clause j, c_j}
//                C'_j = {c_j, cp_j}

#include "evo/cnf.hpp"
#include "evo/setfam.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace evo {

enum class GadgetKind : std::uint8_t {
  AssignPos, AssignNeg, Trigger, TriggerBar, Tau, Free, FreeBar, LitPos, LitNeg, Clause, ClausePrime,
};

/// A universe element of a reduced instance. `index` is the variable i or
/// clause j (unused for Tau); `occurrence` is h for literal elements.
struct GadgetElement {
  GadgetKind kind = GadgetKind::Tau;
  std::uint32_t index = 0;
  std::uint32_t occurrence = 0;

  friend bool operator==(const GadgetElement&, const GadgetElement&) = default;
};

std::string gadget_token(const GadgetElement& e);
/// Inverse of gadget_token. Throws std::invalid_argument.
GadgetElement parse_gadget_token(std::string_view token);

enum class RoleKind : std::uint8_t { T, Tprime, L, Lbar, V, C, Cprime };

struct SetRole {
  RoleKind kind = RoleKind::T;
  std::uint32_t index = 0; // variable i or clause j; 0 for T / T'

  friend bool operator==(const SetRole&, const SetRole&) = default;
};

std::string_view role_name(RoleKind kind);
std::string role_label(const SetRole& role);

/// Literal occurrence inside a clause: variable, polarity and the per-literal
/// occurrence number h (1-based, clause order).
struct Occurrence {
  Var var = 1;
  bool positive = true;
  std::uint32_t h = 1;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct ReductionInstance {
  SetFamily family;
  std::vector<SetRole> roles;                     // by set index
  std::vector<GadgetElement> elements;            // by element id
  CnfFormula source;                              // the formula the sets encode
  std::vector<std::array<Occurrence, 3>> occurrences; // by clause (0-based)
  bool source_duplicated = true;

  // Set indices by role. Vectors are 0-based: l_set[i - 1] is L_i.
  SetIndex t_set = 0;
  SetIndex tprime_set = 0;
  std::vector<SetIndex> l_set, lbar_set, v_set;
  std::vector<SetIndex> c_set, cprime_set;

  Var num_vars() const noexcept { return source.num_vars; }
  std::size_t num_clauses() const noexcept { return source.clauses.size(); }
};

struct ReductionOptions {
  /// Recorded in the instance and role map; the caller is responsible for
  /// having applied duplicate_clauses.
  bool source_duplicated = true;
};

/// Builds the instance for `formula` (already duplicated by the caller).
/// Throws std::invalid_argument for n = 0 or out-of-range literals.
ReductionInstance build_instance(const CnfFormula& formula, ReductionOptions options = {});

/// Role-map text: `vars`, `clauses` and `duplicated` headers, one
/// `set <index> <role> [<i-or-j>]` line per set and one `occ <j> <tok> <tok>
/// <tok>` line per clause.
std::string serialize_rolemap(const ReductionInstance& instance);

/// Reconstructs the instance described by a role map. The source formula is
/// recovered from the `occ` lines and the family is rebuilt, then laid out
/// by the map's set indices. Throws FormatError.
ReductionInstance instance_from_rolemap(std::string_view text);

/// As instance_from_rolemap, and additionally requires `family` to hold, at
/// every index, exactly the elements (by name) the map's role implies. The
/// returned instance carries `family` itself.
ReductionInstance parse_rolemap(std::string_view text, const SetFamily& family);

} // namespace evo
