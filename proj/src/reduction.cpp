#include "evo/reduction.hpp"

#include "evo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>

namespace evo {
namespace {

struct Prefix {
  std::string_view text;
  GadgetKind kind;
};

// Longest prefixes first so "nl" wins over "l" and "cp" over "c".
constexpr Prefix kPrefixes[] = {
    {"nx", GadgetKind::AssignNeg}, {"nt", GadgetKind::TriggerBar}, {"nf", GadgetKind::FreeBar},
    {"nl", GadgetKind::LitNeg},    {"cp", GadgetKind::ClausePrime}, {"x", GadgetKind::AssignPos},
    {"t", GadgetKind::Trigger},    {"f", GadgetKind::Free},         {"l", GadgetKind::LitPos},
    {"c", GadgetKind::Clause},
};

std::string_view prefix_of(GadgetKind kind) {
  for (const auto& p : kPrefixes)
    if (p.kind == kind) return p.text;
  return "tau";
}

std::optional<std::uint32_t> parse_index(std::string_view s) {
  if (s.empty() || s.front() == '0') return std::nullopt;
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

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

void index_roles(ReductionInstance& inst) {
  const Var n = inst.num_vars();
  const std::size_t m = inst.num_clauses();
  inst.l_set.assign(n, 0);
  inst.lbar_set.assign(n, 0);
  inst.v_set.assign(n, 0);
  inst.c_set.assign(m, 0);
  inst.cprime_set.assign(m, 0);
  for (SetIndex s = 0; s < inst.roles.size(); ++s) {
    const SetRole& r = inst.roles[s];
    switch (r.kind) {
    case RoleKind::T: inst.t_set = s; break;
    case RoleKind::Tprime: inst.tprime_set = s; break;
    case RoleKind::L: inst.l_set[r.index - 1] = s; break;
    case RoleKind::Lbar: inst.lbar_set[r.index - 1] = s; break;
    case RoleKind::V: inst.v_set[r.index - 1] = s; break;
    case RoleKind::C: inst.c_set[r.index - 1] = s; break;
    case RoleKind::Cprime: inst.cprime_set[r.index - 1] = s; break;
    }
  }
}

std::vector<GadgetElement> classify_universe(const SetFamily& family) {
  std::vector<GadgetElement> out;
  out.reserve(family.universe_size());
  for (const Element& e : family.universe()) {
    try {
      out.push_back(parse_gadget_token(e.name));
    } catch (const std::invalid_argument& ex) {
      throw FormatError(0, std::string("family element is not a gadget element: ") + ex.what());
    }
  }
  return out;
}

std::vector<std::string> names_of(const SetFamily& family, SetIndex s) {
  std::vector<std::string> names;
  for (ElementId e : family.set(s)) names.push_back(family.element(e).name);
  std::sort(names.begin(), names.end());
  return names;
}

} // namespace

std::string gadget_token(const GadgetElement& e) {
  if (e.kind == GadgetKind::Tau) return "tau";
  std::string out(prefix_of(e.kind));
  out += std::to_string(e.index);
  if (e.kind == GadgetKind::LitPos || e.kind == GadgetKind::LitNeg) {
    out += '.';
    out += std::to_string(e.occurrence);
  }
  return out;
}

GadgetElement parse_gadget_token(std::string_view token) {
  if (token == "tau") return GadgetElement{GadgetKind::Tau, 0, 0};
  for (const auto& p : kPrefixes) {
    if (!token.starts_with(p.text)) continue;
    std::string_view rest = token.substr(p.text.size());
    if (p.kind == GadgetKind::LitPos || p.kind == GadgetKind::LitNeg) {
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) break;
      const auto i = parse_index(rest.substr(0, dot));
      const auto h = parse_index(rest.substr(dot + 1));
      if (!i || !h) break;
      return GadgetElement{p.kind, *i, *h};
    }
    const auto i = parse_index(rest);
    if (!i) break;
    return GadgetElement{p.kind, *i, 0};
  }
  throw std::invalid_argument("'" + std::string(token) + "' is not a gadget element token");
}

std::string_view role_name(RoleKind kind) {
  switch (kind) {
  case RoleKind::T: return "T";
  case RoleKind::Tprime: return "Tprime";
  case RoleKind::L: return "L";
  case RoleKind::Lbar: return "Lbar";
  case RoleKind::V: return "V";
  case RoleKind::C: return "C";
  case RoleKind::Cprime: return "Cprime";
  }
  return "?";
}

std::string role_label(const SetRole& role) {
  std::string out(role_name(role.kind));
  if (role.kind != RoleKind::T && role.kind != RoleKind::Tprime) {
    out += ' ';
    out += std::to_string(role.index);
  }
  return out;
}

ReductionInstance build_instance(const CnfFormula& formula, ReductionOptions options) {
  validate(formula);
  const Var n = formula.num_vars;
  const std::size_t m = formula.clauses.size();

  ReductionInstance inst;
  inst.source = formula;
  inst.source_duplicated = options.source_duplicated;

  // h numbering per literal, in clause order.
  std::vector<std::array<std::uint32_t, 2>> seen(n + 1, {0, 0}); // [var][positive]
  inst.occurrences.reserve(m);
  for (const Clause& c : formula.clauses) {
    std::array<Occurrence, 3> occ;
    for (std::size_t k = 0; k < 3; ++k) {
      const Literal& l = c[k];
      occ[k] = Occurrence{l.var, l.positive, ++seen[l.var][l.positive ? 1 : 0]};
    }
    inst.occurrences.push_back(occ);
  }

  SetFamily& fam = inst.family;
  auto el = [&](GadgetKind kind, std::uint32_t index = 0, std::uint32_t h = 0) {
    const GadgetElement g{kind, index, h};
    const ElementId id = fam.intern(gadget_token(g));
    if (id == inst.elements.size()) inst.elements.push_back(g);
    return id;
  };
  auto add = [&](std::vector<ElementId> ids, SetRole role) {
    fam.add_set(std::move(ids), role_label(role));
    inst.roles.push_back(role);
  };

  add({el(GadgetKind::Tau)}, {RoleKind::T, 0});
  {
    std::vector<ElementId> tp{el(GadgetKind::Tau)};
    for (Var i = 1; i <= n; ++i) {
      tp.push_back(el(GadgetKind::Trigger, i));
      tp.push_back(el(GadgetKind::TriggerBar, i));
    }
    add(std::move(tp), {RoleKind::Tprime, 0});
  }
  for (Var i = 1; i <= n; ++i) {
    std::vector<ElementId> pos{el(GadgetKind::AssignPos, i), el(GadgetKind::Trigger, i), el(GadgetKind::Free, i)};
    for (std::uint32_t h = 1; h <= seen[i][1]; ++h) pos.push_back(el(GadgetKind::LitPos, i, h));
    add(std::move(pos), {RoleKind::L, i});

    std::vector<ElementId> neg{el(GadgetKind::AssignNeg, i), el(GadgetKind::TriggerBar, i), el(GadgetKind::FreeBar, i)};
    for (std::uint32_t h = 1; h <= seen[i][0]; ++h) neg.push_back(el(GadgetKind::LitNeg, i, h));
    add(std::move(neg), {RoleKind::Lbar, i});

    std::vector<ElementId> ver{el(GadgetKind::AssignPos, i), el(GadgetKind::AssignNeg, i)};
    for (std::uint32_t j = 1; j <= m; ++j) {
      ver.push_back(el(GadgetKind::Clause, j));
      ver.push_back(el(GadgetKind::ClausePrime, j));
    }
    add(std::move(ver), {RoleKind::V, i});
  }
  for (std::uint32_t j = 1; j <= m; ++j) {
    std::vector<ElementId> cl;
    for (const Occurrence& o : inst.occurrences[j - 1])
      cl.push_back(el(o.positive ? GadgetKind::LitPos : GadgetKind::LitNeg, o.var, o.h));
    cl.push_back(el(GadgetKind::Clause, j));
    add(std::move(cl), {RoleKind::C, j});
    add({el(GadgetKind::Clause, j), el(GadgetKind::ClausePrime, j)}, {RoleKind::Cprime, j});
  }

  index_roles(inst);
  return inst;
}

std::string serialize_rolemap(const ReductionInstance& instance) {
  std::string out;
  out += "vars " + std::to_string(instance.num_vars()) + '\n';
  out += "clauses " + std::to_string(instance.num_clauses()) + '\n';
  out += std::string("duplicated ") + (instance.source_duplicated ? "1" : "0") + '\n';
  for (SetIndex s = 0; s < instance.roles.size(); ++s) out += "set " + std::to_string(s) + ' ' + role_label(instance.roles[s]) + '\n';
  for (std::size_t j = 0; j < instance.occurrences.size(); ++j) {
    out += "occ " + std::to_string(j + 1);
    for (const Occurrence& o : instance.occurrences[j]) {
      out += ' ';
      out += gadget_token({o.positive ? GadgetKind::LitPos : GadgetKind::LitNeg, o.var, o.h});
    }
    out += '\n';
  }
  return out;
}

ReductionInstance instance_from_rolemap(std::string_view text) {
  std::optional<std::uint32_t> vars, clauses;
  bool duplicated = true;
  std::map<SetIndex, std::pair<SetRole, std::size_t>> set_lines; // index -> role, line
  std::map<std::uint32_t, std::pair<std::array<Occurrence, 3>, std::size_t>> occ_lines;

  auto need_count = [](std::string_view tok, std::size_t line, bool allow_zero) {
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || (!allow_zero && v == 0))
      throw FormatError(line, "expected a " + std::string(allow_zero ? "non-negative" : "positive") + " integer, got '" +
                                  std::string(tok) + "'");
    return v;
  };

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split(line);
    if (tok.empty()) continue;

    if (tok[0] == "vars" || tok[0] == "clauses" || tok[0] == "duplicated") {
      if (tok.size() != 2) throw FormatError(line_no, "'" + std::string(tok[0]) + "' takes one value");
      if (tok[0] == "vars") {
        if (vars) throw FormatError(line_no, "duplicate 'vars' header");
        vars = need_count(tok[1], line_no, false);
      } else if (tok[0] == "clauses") {
        if (clauses) throw FormatError(line_no, "duplicate 'clauses' header");
        clauses = need_count(tok[1], line_no, true);
      } else {
        if (tok[1] != "0" && tok[1] != "1") throw FormatError(line_no, "'duplicated' must be 0 or 1");
        duplicated = tok[1] == "1";
      }
    } else if (tok[0] == "set") {
      if (tok.size() < 3 || tok.size() > 4) throw FormatError(line_no, "expected 'set <index> <role> [<i-or-j>]'");
      const SetIndex idx = need_count(tok[1], line_no, true);
      std::optional<RoleKind> kind;
      for (RoleKind k : {RoleKind::T, RoleKind::Tprime, RoleKind::L, RoleKind::Lbar, RoleKind::V, RoleKind::C, RoleKind::Cprime})
        if (tok[2] == role_name(k)) kind = k;
      if (!kind) throw FormatError(line_no, "unknown role '" + std::string(tok[2]) + "'");
      const bool indexed = *kind != RoleKind::T && *kind != RoleKind::Tprime;
      if (indexed != (tok.size() == 4))
        throw FormatError(line_no, "role " + std::string(tok[2]) + (indexed ? " needs an index" : " takes no index"));
      const SetRole role{*kind, indexed ? need_count(tok[3], line_no, false) : 0};
      if (set_lines.count(idx)) throw FormatError(line_no, "set " + std::to_string(idx) + " assigned twice");
      set_lines.emplace(idx, std::make_pair(role, line_no));
    } else if (tok[0] == "occ") {
      if (tok.size() != 5) throw FormatError(line_no, "expected 'occ <j> <tok1> <tok2> <tok3>'");
      const auto j = need_count(tok[1], line_no, false);
      std::array<Occurrence, 3> occ;
      for (std::size_t k = 0; k < 3; ++k) {
        GadgetElement g;
        try {
          g = parse_gadget_token(tok[2 + k]);
        } catch (const std::invalid_argument& ex) {
          throw FormatError(line_no, ex.what());
        }
        if (g.kind != GadgetKind::LitPos && g.kind != GadgetKind::LitNeg)
          throw FormatError(line_no, "'" + std::string(tok[2 + k]) + "' is not a literal element");
        occ[k] = Occurrence{g.index, g.kind == GadgetKind::LitPos, g.occurrence};
      }
      if (occ_lines.count(j)) throw FormatError(line_no, "clause " + std::to_string(j) + " listed twice");
      occ_lines.emplace(j, std::make_pair(occ, line_no));
    } else {
      throw FormatError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }

  if (!vars) throw FormatError(0, "missing 'vars' header");
  if (!clauses) throw FormatError(0, "missing 'clauses' header");
  const Var n = *vars;
  const std::uint32_t m = *clauses;
  const std::size_t total = 2 + 3 * std::size_t{n} + 2 * std::size_t{m};

  // Recover the source formula.
  CnfFormula formula;
  formula.num_vars = n;
  for (std::uint32_t j = 1; j <= m; ++j) {
    const auto it = occ_lines.find(j);
    if (it == occ_lines.end()) throw FormatError(0, "missing 'occ " + std::to_string(j) + "' line");
    Clause c;
    for (std::size_t k = 0; k < 3; ++k) {
      const Occurrence& o = it->second.first[k];
      if (o.var > n) throw FormatError(it->second.second, "literal variable " + std::to_string(o.var) + " exceeds vars " + std::to_string(n));
      c[k] = Literal{o.var, o.positive};
    }
    formula.clauses.push_back(c);
  }
  if (occ_lines.size() != m) throw FormatError(occ_lines.rbegin()->second.second, "occ line for a clause beyond 'clauses'");

  ReductionInstance canon = build_instance(formula, ReductionOptions{duplicated});
  for (std::uint32_t j = 1; j <= m; ++j) {
    const auto& [occ, line] = occ_lines.at(j);
    if (occ != canon.occurrences[j - 1])
      throw FormatError(line, "occurrence numbering of clause " + std::to_string(j) + " does not follow clause order");
  }

  // Role coverage.
  std::map<std::pair<RoleKind, std::uint32_t>, SetIndex> by_role;
  for (const auto& [idx, entry] : set_lines) {
    const auto& [role, line] = entry;
    if (idx >= total)
      throw FormatError(line, "set index " + std::to_string(idx) + " outside the " + std::to_string(total) + " sets");
    const bool per_var = role.kind == RoleKind::L || role.kind == RoleKind::Lbar || role.kind == RoleKind::V;
    const bool per_clause = role.kind == RoleKind::C || role.kind == RoleKind::Cprime;
    if ((per_var && role.index > n) || (per_clause && role.index > m))
      throw FormatError(line, "role " + role_label(role) + " out of range");
    if (!by_role.emplace(std::make_pair(role.kind, role.index), idx).second)
      throw FormatError(line, "role " + role_label(role) + " assigned to two sets");
  }
  for (const SetRole& role : canon.roles)
    if (!by_role.count({role.kind, role.index})) throw FormatError(0, "missing role '" + role_label(role) + "'");

  // Lay the canonical sets out at the mapped indices.
  ReductionInstance inst;
  inst.source = canon.source;
  inst.occurrences = canon.occurrences;
  inst.source_duplicated = duplicated;
  inst.roles.resize(total);
  std::vector<SetIndex> canon_of(total);
  for (SetIndex s = 0; s < total; ++s) {
    const SetRole& role = canon.roles[s];
    const SetIndex target = by_role.at({role.kind, role.index});
    inst.roles[target] = role;
    canon_of[target] = s;
  }
  for (SetIndex p = 0; p < total; ++p) {
    std::vector<ElementId> ids;
    for (ElementId e : canon.family.set(canon_of[p])) ids.push_back(inst.family.intern(canon.family.element(e).name));
    inst.family.add_set(std::move(ids), role_label(inst.roles[p]));
  }
  inst.elements = classify_universe(inst.family);
  index_roles(inst);
  return inst;
}

ReductionInstance parse_rolemap(std::string_view text, const SetFamily& family) {
  ReductionInstance inst = instance_from_rolemap(text);
  if (family.set_count() != inst.family.set_count())
    throw FormatError(0, "role map describes " + std::to_string(inst.family.set_count()) + " sets, family has " +
                             std::to_string(family.set_count()));
  for (SetIndex s = 0; s < family.set_count(); ++s)
    if (names_of(family, s) != names_of(inst.family, s))
      throw FormatError(0, "set " + std::to_string(s) + " does not match role " + role_label(inst.roles[s]));
  inst.elements = classify_universe(family);
  inst.family = family;
  return inst;
}

} // namespace evo
