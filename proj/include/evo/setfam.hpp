#pragma once

// Set families over an interned universe, orderings of their sets, and the
// evolutionary-ordering verifier.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace evo {

using ElementId = std::uint32_t;
using SetIndex = std::uint32_t;

struct Element {
  ElementId id = 0;
  std::string name;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Token reserved in the family file for a line holding an empty set.
inline constexpr std::string_view kEmptySetToken = "-";

/// True when `name` is usable as an element token: non-empty, printable
/// ASCII or UTF-8 bytes, no whitespace, no `#`, and not the empty-set marker.
bool valid_element_name(std::string_view name);

/// Universe plus an indexed list of element sets. Each set is stored as a
/// strictly increasing list of element ids. Sets may be empty or repeat.
class SetFamily {
public:
  SetFamily() = default;

  /// Returns the id of `name`, creating it if new. Throws
  /// std::invalid_argument for names rejected by valid_element_name.
  ElementId intern(std::string_view name);
  std::optional<ElementId> find(std::string_view name) const;

  /// Appends a set; ids are sorted and deduplicated. Returns its index.
  /// Throws std::out_of_range for ids outside the universe.
  SetIndex add_set(std::vector<ElementId> elements, std::string label = {});

  std::size_t universe_size() const noexcept { return universe_.size(); }
  std::size_t set_count() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }

  const std::vector<Element>& universe() const noexcept { return universe_; }
  const Element& element(ElementId id) const { return universe_.at(id); }
  std::span<const ElementId> set(SetIndex i) const { return sets_.at(i); }
  const std::vector<std::vector<ElementId>>& sets() const noexcept { return sets_; }

  /// Optional per-set labels (empty string when unlabelled). Labels are
  /// presentation only and do not take part in equality.
  const std::string& label(SetIndex i) const { return labels_.at(i); }

  /// Total number of (set, element) memberships.
  std::size_t total_size() const noexcept;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.universe_ == b.universe_ && a.sets_ == b.sets_;
  }

private:
  std::vector<Element> universe_;
  std::unordered_map<std::string, ElementId> by_name_;
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::string> labels_;
};

struct Ordering {
  std::vector<SetIndex> positions;

  std::size_t size() const noexcept { return positions.size(); }
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Throws MalformedOrdering unless `ordering` is a permutation of
/// 0..set_count-1.
void require_permutation(const Ordering& ordering, std::size_t set_count);

enum class Violation { NoNewElement, NoOldElement };

std::string_view violation_name(Violation v);

struct CheckStep {
  SetIndex set = 0;
  ElementId new_witness = 0;
  std::optional<ElementId> old_witness; // absent only for the first step
};

struct CheckViolation {
  std::size_t position = 0;
  Violation reason = Violation::NoNewElement;
};

struct CheckReport {
  bool accepted = false;
  std::vector<CheckStep> steps; // one per position that passed
  std::optional<CheckViolation> violation;
};

/// Verifies `ordering` against both conditions of an evolutionary ordering:
/// every set brings an element not yet covered, and every set after the first
/// shares an element with the union of its predecessors. Witnesses are the
/// lowest qualifying element ids. Linear in the total size of the family.
/// Throws MalformedOrdering when `ordering` is not a permutation.
CheckReport check_evolutionary(const SetFamily& family, const Ordering& ordering);

// ---------------------------------------------------------------------------
// Text formats

/// Parses the family file format: one set per line, whitespace-separated
/// element tokens, `#` comments, blank lines ignored, a lone `-` for an empty
/// set. Repeated tokens within a line are dropped and reported through
/// `warnings` when given. Throws FormatError.
SetFamily parse_family(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Writes one line per set, elements in id order. Labels are appended as
/// trailing comments. Re-parses to an equal family whenever element ids
/// follow first-appearance order and every element occurs in some set.
std::string serialize_family(const SetFamily& family);

/// Parses whitespace-separated set indices. Does not check the permutation
/// property (see require_permutation). Throws FormatError.
Ordering parse_ordering(std::string_view text);
std::string serialize_ordering(const Ordering& ordering);

/// `step <i>: set <idx> new=<name> old=<name|->` lines followed by the
/// ACCEPTED / REJECTED verdict line.
std::string render_report(const SetFamily& family, const CheckReport& report);

} // namespace evo
