#include "evo/setfam.hpp"

#include "evo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace evo {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

bool is_control(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x20 || u == 0x7f;
}

// Splits `text` into lines, calling fn(line_number, line) with the comment
// part removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    fn(line_no, line);
  }
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

} // namespace

bool valid_element_name(std::string_view name) {
  if (name.empty() || name == kEmptySetToken) return false;
  return std::none_of(name.begin(), name.end(), [](char c) { return is_space(c) || is_control(c) || c == '#'; });
}

ElementId SetFamily::intern(std::string_view name) {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  if (!valid_element_name(name)) throw std::invalid_argument("invalid element name '" + std::string(name) + "'");
  const auto id = static_cast<ElementId>(universe_.size());
  universe_.push_back(Element{id, std::string(name)});
  by_name_.emplace(std::string(name), id);
  return id;
}

std::optional<ElementId> SetFamily::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  return std::nullopt;
}

SetIndex SetFamily::add_set(std::vector<ElementId> elements, std::string label) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.back() >= universe_.size())
    throw std::out_of_range("element id " + std::to_string(elements.back()) + " outside universe of size " +
                            std::to_string(universe_.size()));
  sets_.push_back(std::move(elements));
  labels_.push_back(std::move(label));
  return static_cast<SetIndex>(sets_.size() - 1);
}

std::size_t SetFamily::total_size() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

void require_permutation(const Ordering& ordering, std::size_t set_count) {
  if (ordering.size() != set_count)
    throw MalformedOrdering("ordering has " + std::to_string(ordering.size()) + " entries, family has " +
                            std::to_string(set_count) + " sets");
  std::vector<bool> seen(set_count, false);
  for (SetIndex idx : ordering.positions) {
    if (idx >= set_count) throw MalformedOrdering("ordering names set " + std::to_string(idx) + " which does not exist");
    if (seen[idx]) throw MalformedOrdering("ordering places set " + std::to_string(idx) + " twice");
    seen[idx] = true;
  }
}

std::string_view violation_name(Violation v) {
  return v == Violation::NoNewElement ? "no-new-element" : "no-old-element";
}

CheckReport check_evolutionary(const SetFamily& family, const Ordering& ordering) {
  require_permutation(ordering, family.set_count());

  CheckReport report;
  report.steps.reserve(ordering.size());
  std::vector<char> covered(family.universe_size(), 0);

  for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
    const SetIndex idx = ordering.positions[pos];
    const auto set = family.set(idx);

    // Sets are sorted, so the first hit of each kind is the lowest id.
    std::optional<ElementId> fresh;
    std::optional<ElementId> old;
    for (ElementId e : set) {
      if (covered[e]) {
        if (!old) old = e;
      } else if (!fresh) {
        fresh = e;
      }
      if (fresh && old) break;
    }

    if (!fresh) {
      report.violation = CheckViolation{pos, Violation::NoNewElement};
      return report;
    }
    if (pos > 0 && !old) {
      report.violation = CheckViolation{pos, Violation::NoOldElement};
      return report;
    }
    for (ElementId e : set) covered[e] = 1;
    report.steps.push_back(CheckStep{idx, *fresh, pos > 0 ? old : std::nullopt});
  }
  report.accepted = true;
  return report;
}

SetFamily parse_family(std::string_view text, std::vector<std::string>* warnings) {
  SetFamily family;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = split_tokens(line);
    if (tokens.empty()) return;
    std::vector<ElementId> ids;
    ids.reserve(tokens.size());
    if (tokens.size() == 1 && tokens.front() == kEmptySetToken) {
      family.add_set({});
      return;
    }
    for (std::string_view tok : tokens) {
      if (tok == kEmptySetToken)
        throw FormatError(line_no, "malformed line: '-' marks an empty set and must stand alone");
      if (!valid_element_name(tok)) throw FormatError(line_no, "malformed line: element token contains control characters");
      const ElementId id = family.intern(tok);
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
        if (warnings)
          warnings->push_back("line " + std::to_string(line_no) + ": duplicate element '" + std::string(tok) +
                              "' ignored");
        continue;
      }
      ids.push_back(id);
    }
    family.add_set(std::move(ids));
  });
  return family;
}

std::string serialize_family(const SetFamily& family) {
  std::string out;
  for (SetIndex i = 0; i < family.set_count(); ++i) {
    const auto set = family.set(i);
    if (set.empty()) out += kEmptySetToken;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k) out += ' ';
      out += family.element(set[k]).name;
    }
    if (!family.label(i).empty()) {
      out += "  # ";
      out += family.label(i);
    }
    out += '\n';
  }
  return out;
}

Ordering parse_ordering(std::string_view text) {
  Ordering ordering;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    for (std::string_view tok : split_tokens(line)) {
      SetIndex value = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw FormatError(line_no, "expected a non-negative set index, got '" + std::string(tok) + "'");
      ordering.positions.push_back(value);
    }
  });
  return ordering;
}

std::string serialize_ordering(const Ordering& ordering) {
  std::string out;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ordering.positions[i]);
  }
  out += '\n';
  return out;
}

std::string render_report(const SetFamily& family, const CheckReport& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& step = report.steps[i];
    os << "step " << i << ": set " << step.set << " new=" << family.element(step.new_witness).name
       << " old=" << (step.old_witness ? family.element(*step.old_witness).name : std::string("-")) << '\n';
  }
  if (report.accepted)
    os << "ACCEPTED\n";
  else
    os << "REJECTED at step " << report.violation->position << ": " << violation_name(report.violation->reason)
       << '\n';
  return os.str();
}

} // namespace evo
