#include "evo/search.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace evo {

using simd::Word;

namespace {

struct WordsHash {
  std::size_t operator()(const std::vector<Word>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (Word w : v) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

// Row-major bit matrix: one row of `words` per set.
struct DenseFamily {
  std::size_t words = 1;
  std::vector<Word> rows;

  explicit DenseFamily(const SetFamily& family)
      : words(std::max<std::size_t>(1, simd::words_for(family.universe_size()))), rows(words * family.set_count(), 0) {
    for (SetIndex s = 0; s < family.set_count(); ++s)
      for (ElementId e : family.set(s)) simd::set_bit(std::span<Word>(row(s), words), e);
  }
  Word* row(SetIndex s) { return rows.data() + s * words; }
  const Word* row(SetIndex s) const { return rows.data() + s * words; }
};

} // namespace

std::string_view precheck_name(PrecheckFailure f) {
  switch (f) {
  case PrecheckFailure::EmptySet: return "empty-set";
  case PrecheckFailure::TooFewElements: return "too-few-elements";
  case PrecheckFailure::Disconnected: return "disconnected";
  }
  return "?";
}

std::optional<PrecheckFailure> precheck(const SetFamily& family) {
  const std::size_t m = family.set_count();
  if (m == 0) return std::nullopt;
  for (const auto& s : family.sets())
    if (s.empty()) return PrecheckFailure::EmptySet;

  // Every step must add at least one element.
  std::vector<char> used(family.universe_size(), 0);
  std::size_t covered = 0;
  for (const auto& s : family.sets())
    for (ElementId e : s)
      if (!used[e]) {
        used[e] = 1;
        ++covered;
      }
  if (covered < m) return PrecheckFailure::TooFewElements;

  // Every set after the first meets the union before it, so the sets must
  // form one connected component of the intersection graph.
  DisjointSets ds(family.universe_size());
  for (const auto& s : family.sets())
    for (std::size_t k = 1; k < s.size(); ++k) ds.unite(s[0], s[k]);
  const std::size_t root = ds.find(family.set(0).front());
  for (const auto& s : family.sets())
    if (ds.find(s.front()) != root) return PrecheckFailure::Disconnected;
  return std::nullopt;
}

std::string render_stats(const SearchStats& stats) {
  std::ostringstream os;
  os << "states=" << stats.states_expanded << " memo_hits=" << stats.memo_hits
     << " precheck=" << (stats.precheck_short_circuit ? precheck_name(*stats.precheck_short_circuit) : "none");
  return os.str();
}

Verdict decide(const SetFamily& family, const DecideOptions& options) {
  Verdict verdict;
  const std::size_t m = family.set_count();
  if (m == 0) {
    verdict.evolutionary = true;
    verdict.witness = Ordering{};
    return verdict;
  }
  if (options.use_precheck) {
    if (auto fail = precheck(family)) {
      verdict.stats.precheck_short_circuit = fail;
      return verdict;
    }
  }

  const simd::KernelTable& k = options.isa ? simd::kernels(*options.isa) : simd::active_kernels();
  const DenseFamily dense(family);
  const std::size_t we = dense.words;

  std::vector<Word> covered((m + 1) * we, 0); // covered elements per depth
  std::vector<Word> used(simd::words_for(m), 0);
  std::vector<SetIndex> path;
  path.reserve(m);
  std::vector<SetIndex> next(m + 1, 0);
  std::unordered_set<std::vector<Word>, WordsHash> dead;

  auto remember = [&] {
    if (dead.size() < options.memo_capacity) dead.insert(used);
  };
  // Some unused set already lies inside `cov`: it can never bring a new
  // element, so no completion exists.
  auto doomed = [&](const Word* cov) {
    for (SetIndex s = 0; s < m; ++s)
      if (!simd::test_bit(used, s) && !k.any_andnot(dense.row(s), cov, we)) return true;
    return false;
  };

  std::size_t depth = 0;
  while (true) {
    const Word* cov = covered.data() + depth * we;
    SetIndex pick = static_cast<SetIndex>(m);
    for (SetIndex c = next[depth]; c < m; ++c) {
      if (simd::test_bit(used, c)) continue;
      const unsigned flags = k.classify(dense.row(c), cov, we);
      if ((flags & simd::kHasOutside) && (depth == 0 || (flags & simd::kHasInside))) {
        pick = c;
        break;
      }
    }

    if (pick < m) {
      next[depth] = pick + 1;
      simd::set_bit(used, pick);
      Word* child = covered.data() + (depth + 1) * we;
      k.or_to(child, cov, dense.row(pick), we);
      if (depth + 1 == m) {
        path.push_back(pick);
        ++verdict.stats.states_expanded;
        verdict.evolutionary = true;
        verdict.witness = Ordering{std::move(path)};
        return verdict;
      }
      if (options.memo_capacity && dead.count(used)) {
        ++verdict.stats.memo_hits;
        simd::clear_bit(used, pick);
        continue;
      }
      ++verdict.stats.states_expanded;
      if (doomed(child)) {
        remember();
        simd::clear_bit(used, pick);
        continue;
      }
      path.push_back(pick);
      ++depth;
      next[depth] = 0;
      continue;
    }

    if (depth == 0) return verdict;
    remember();
    simd::clear_bit(used, path.back());
    path.pop_back();
    --depth;
  }
}

Verdict brute_force(const SetFamily& family) {
  const std::size_t m = family.set_count();
  if (m > kBruteForceMaxSets)
    throw std::invalid_argument("brute force is limited to " + std::to_string(kBruteForceMaxSets) + " sets, family has " +
                                std::to_string(m));
  Verdict verdict;
  Ordering ordering;
  ordering.positions.resize(m);
  std::iota(ordering.positions.begin(), ordering.positions.end(), SetIndex{0});
  do {
    ++verdict.stats.states_expanded;
    if (check_evolutionary(family, ordering).accepted) {
      verdict.evolutionary = true;
      verdict.witness = ordering;
      return verdict;
    }
  } while (std::next_permutation(ordering.positions.begin(), ordering.positions.end()));
  return verdict;
}

SetFamily gen_family(std::size_t num_sets, std::size_t universe_size, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution join(density);
  std::vector<std::vector<std::size_t>> members(num_sets);
  for (auto& set : members)
    for (std::size_t e = 0; e < universe_size; ++e)
      if (join(rng)) set.push_back(e);

  // Rename elements to first-appearance order so the family serializes and
  // re-parses to itself.
  std::vector<std::size_t> rename(universe_size, universe_size);
  std::size_t next = 0;
  for (const auto& set : members)
    for (std::size_t e : set)
      if (rename[e] == universe_size) rename[e] = next++;
  for (std::size_t e = 0; e < universe_size; ++e)
    if (rename[e] == universe_size) rename[e] = next++;

  SetFamily family;
  for (std::size_t id = 0; id < universe_size; ++id) family.intern("e" + std::to_string(id));
  for (const auto& set : members) {
    std::vector<ElementId> ids;
    ids.reserve(set.size());
    for (std::size_t e : set) ids.push_back(static_cast<ElementId>(rename[e]));
    family.add_set(std::move(ids));
  }
  return family;
}

} // namespace evo
