#pragma once

// Certificate translation across the reduction: satisfying assignment to
// evolutionary ordering, and evolutionary ordering back to an assignment.

#include "evo/cnf.hpp"
#include "evo/reduction.hpp"
#include "evo/setfam.hpp"

#include <cstddef>
#include <vector>

namespace evo {

struct EarlyVariableSets {
  bool positive = false; // L_i precedes V_i
  bool negative = false; // Lbar_i precedes V_i
};

struct ExtractionReport {
  std::vector<EarlyVariableSets> early; // by variable, 0-based
  std::vector<std::size_t> positions;   // position of each set index
  Assignment derived;
};

/// Orders the sets as T, T', the variable set chosen by `assignment` for each
/// i, (C_j, C'_j) for each j, V_i for each i, then the remaining variable
/// sets. Does not check that `assignment` satisfies the formula; an
/// unsatisfying assignment yields an ordering the verifier rejects.
/// Throws std::invalid_argument on an arity mismatch.
Ordering ordering_from_assignment(const ReductionInstance& instance, const Assignment& assignment);

/// x_i is true iff L_i is placed before V_i. Works on any permutation; the
/// result is only meaningful when the ordering passes check_evolutionary.
/// Throws MalformedOrdering for non-permutations.
ExtractionReport assignment_from_ordering(const ReductionInstance& instance, const Ordering& ordering);

} // namespace evo
