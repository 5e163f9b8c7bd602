#pragma once

// Exact decision procedure for evolutionary orderings, a permutation
// oracle, necessary-condition prechecks and a random family generator.

#include "evo/setfam.hpp"
#include "evo/simd/bitkernels.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evo {

enum class PrecheckFailure { EmptySet, TooFewElements, Disconnected };

std::string_view precheck_name(PrecheckFailure f);

/// Sound necessary conditions. An empty optional means "inconclusive".
std::optional<PrecheckFailure> precheck(const SetFamily& family);

struct SearchStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::optional<PrecheckFailure> precheck_short_circuit;
};

struct Verdict {
  bool evolutionary = false;
  std::optional<Ordering> witness;
  SearchStats stats;
};

/// `states=<n> memo_hits=<n> precheck=<reason|none>`
std::string render_stats(const SearchStats& stats);

struct DecideOptions {
  bool use_precheck = true;
  /// Maximum number of dead states remembered; 0 disables memoization.
  /// Once full, search continues without recording new states.
  std::size_t memo_capacity = std::size_t{1} << 22;
  /// Kernel variant; defaults to the best one for this host.
  std::optional<simd::Isa> isa;
};

/// Depth-first search over placed-set subsets, trying unused sets in
/// increasing index order and remembering dead subsets. Returns the
/// lexicographically first witness under that order.
Verdict decide(const SetFamily& family, const DecideOptions& options = {});

inline constexpr std::size_t kBruteForceMaxSets = 9;

/// Runs check_evolutionary on every permutation in lexicographic order.
/// stats.states_expanded counts the permutations checked. Throws
/// std::invalid_argument above kBruteForceMaxSets sets.
Verdict brute_force(const SetFamily& family);

/// Elements are named e0, e1, ... in first-appearance order; elements that
/// joined no set come last. Throws std::invalid_argument unless 0 <= density
/// <= 1.
SetFamily gen_family(std::size_t num_sets, std::size_t universe_size, double density, std::uint64_t seed);

} // namespace evo
