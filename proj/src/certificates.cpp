#include "evo/certificates.hpp"

#include "evo/errors.hpp"

#include <stdexcept>
#include <string>

namespace evo {

Ordering ordering_from_assignment(const ReductionInstance& instance, const Assignment& assignment) {
  const Var n = instance.num_vars();
  if (assignment.num_vars() != n)
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.num_vars()) + " variables, instance has " +
                                std::to_string(n));

  Ordering out;
  out.positions.reserve(instance.family.set_count());
  out.positions.push_back(instance.t_set);
  out.positions.push_back(instance.tprime_set);
  for (Var i = 1; i <= n; ++i) out.positions.push_back(assignment[i] ? instance.l_set[i - 1] : instance.lbar_set[i - 1]);
  for (std::size_t j = 0; j < instance.num_clauses(); ++j) {
    out.positions.push_back(instance.c_set[j]);
    out.positions.push_back(instance.cprime_set[j]);
  }
  for (Var i = 1; i <= n; ++i) out.positions.push_back(instance.v_set[i - 1]);
  for (Var i = 1; i <= n; ++i) out.positions.push_back(assignment[i] ? instance.lbar_set[i - 1] : instance.l_set[i - 1]);
  return out;
}

ExtractionReport assignment_from_ordering(const ReductionInstance& instance, const Ordering& ordering) {
  require_permutation(ordering, instance.family.set_count());

  ExtractionReport report;
  report.positions.resize(ordering.size());
  for (std::size_t pos = 0; pos < ordering.size(); ++pos) report.positions[ordering.positions[pos]] = pos;

  const Var n = instance.num_vars();
  report.early.resize(n);
  report.derived.values.resize(n);
  for (Var i = 0; i < n; ++i) {
    const std::size_t v_pos = report.positions[instance.v_set[i]];
    report.early[i].positive = report.positions[instance.l_set[i]] < v_pos;
    report.early[i].negative = report.positions[instance.lbar_set[i]] < v_pos;
    report.derived.values[i] = report.early[i].positive;
  }
  return report;
}

} // namespace evo
