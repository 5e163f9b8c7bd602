#include "evo/reduction.hpp"
#include "evo/search.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace evo;
using evo::testing::family_of;

namespace {

TEST(Precheck, Examples) {
  EXPECT_EQ(precheck(family_of({{"a"}, {"b"}})), PrecheckFailure::Disconnected);
  EXPECT_EQ(precheck(family_of({{"a"}, {"a", "b"}, {"b"}})), PrecheckFailure::TooFewElements);
  EXPECT_EQ(precheck(family_of({{"a", "b"}, {"b", "c"}})), std::nullopt);
  EXPECT_EQ(precheck(family_of({{}})), PrecheckFailure::EmptySet);
  EXPECT_EQ(precheck(family_of({{"a"}, {}})), PrecheckFailure::EmptySet);
  EXPECT_EQ(precheck(SetFamily{}), std::nullopt);
}

TEST(Decide, Examples) {
  const Verdict single = decide(family_of({{"a"}}));
  EXPECT_TRUE(single.evolutionary);
  EXPECT_EQ(single.witness, (Ordering{{0}}));

  for (bool pre : {true, false}) {
    DecideOptions o;
    o.use_precheck = pre;
    EXPECT_FALSE(decide(family_of({{"a", "b"}, {"a"}, {"b"}}), o).evolutionary);
    EXPECT_FALSE(decide(family_of({{}, {"a"}}), o).evolutionary);
  }

  const Verdict empty = decide(SetFamily{});
  EXPECT_TRUE(empty.evolutionary);
  EXPECT_EQ(empty.witness, Ordering{});
}

TEST(Decide, UnsatReductionIsNotEvolutionary) {
  const Clause pos{Literal{1, true}, Literal{1, true}, Literal{1, true}};
  const Clause neg{Literal{1, false}, Literal{1, false}, Literal{1, false}};
  const CnfFormula f = duplicate_clauses(CnfFormula{1, {pos, neg}});
  ASSERT_FALSE(dpll_sat(f));
  const auto inst = build_instance(f);
  ASSERT_EQ(inst.family.set_count(), 13u);
  EXPECT_FALSE(decide(inst.family).evolutionary);
  DecideOptions plain;
  plain.use_precheck = false;
  plain.memo_capacity = 0;
  EXPECT_FALSE(decide(inst.family, plain).evolutionary);
}

TEST(Decide, WitnessIsLexicographicallyFirst) {
  // {b},{a,b},{a,c}: [0,1,2] works and is the smallest.
  const SetFamily f = family_of({{"b"}, {"a", "b"}, {"a", "c"}});
  EXPECT_EQ(decide(f).witness, (Ordering{{0, 1, 2}}));
  const SetFamily g = family_of({{"a", "b"}, {"b"}, {"b", "c"}});
  // [0,1,..] fails ({b} ⊆ {a,b}); [0,2,1] fails too; [1,0,2] is next.
  EXPECT_EQ(decide(g).witness, (Ordering{{1, 0, 2}}));
  EXPECT_EQ(brute_force(g).witness, (Ordering{{1, 0, 2}}));
}

TEST(Decide, StatsRendering) {
  SearchStats s;
  s.states_expanded = 4;
  s.memo_hits = 1;
  EXPECT_EQ(render_stats(s), "states=4 memo_hits=1 precheck=none");
  s.precheck_short_circuit = PrecheckFailure::Disconnected;
  EXPECT_EQ(render_stats(s), "states=4 memo_hits=1 precheck=disconnected");
  EXPECT_EQ(decide(family_of({{"a"}, {"b"}})).stats.precheck_short_circuit, PrecheckFailure::Disconnected);
}

TEST(BruteForce, Examples) {
  const Verdict v = brute_force(family_of({{"a"}, {"a", "b"}}));
  EXPECT_TRUE(v.evolutionary);
  EXPECT_EQ(v.witness, (Ordering{{0, 1}}));
  const Verdict no = brute_force(family_of({{"a", "b"}, {"a"}, {"b"}}));
  EXPECT_FALSE(no.evolutionary);
  EXPECT_EQ(no.stats.states_expanded, 6u);
}

TEST(BruteForce, Guard) {
  std::vector<std::vector<std::string>> sets;
  for (int i = 0; i < 10; ++i) sets.push_back({"a", "e" + std::to_string(i)});
  EXPECT_THROW(brute_force(family_of(sets)), std::invalid_argument);
}

TEST(GenFamily, Determinism) {
  EXPECT_EQ(gen_family(5, 5, 0.4, 1), gen_family(5, 5, 0.4, 1));
  EXPECT_NE(serialize_family(gen_family(5, 5, 0.4, 1)), serialize_family(gen_family(5, 5, 0.4, 2)));
  EXPECT_THROW(gen_family(2, 2, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(gen_family(2, 2, -0.1, 0), std::invalid_argument);
}

TEST(GenFamily, DensityExtremes) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const SetFamily empty = gen_family(m, 4, 0.0, m);
    EXPECT_EQ(empty.total_size(), 0u);
    EXPECT_FALSE(decide(empty).evolutionary);
    for (std::size_t u = 0; u <= 3; ++u) {
      const SetFamily full = gen_family(m, u, 1.0, m);
      EXPECT_EQ(full.total_size(), m * u);
      EXPECT_EQ(decide(full).evolutionary, m == 1 && u >= 1) << "m=" << m << " u=" << u;
    }
  }
}

TEST(GenFamily, SerializesToItself) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SetFamily f = gen_family(6, 6, 0.5, seed);
    SetFamily used_only = parse_family(serialize_family(f));
    // Elements no set uses are the trailing ids and are not written.
    std::size_t used = 0;
    for (const auto& s : f.sets())
      for (ElementId e : s) used = std::max<std::size_t>(used, e + 1);
    EXPECT_EQ(used_only.universe_size(), used);
    EXPECT_EQ(used_only.sets(), f.sets());
  }
}

// ---------------------------------------------------------------------------
// Properties on random families.

struct Sample {
  SetFamily family;
  std::string label;
};

std::vector<Sample> random_families(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  const double densities[] = {0.2, 0.4, 0.6};
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t m = rng() % 8;
    const std::size_t u = 1 + rng() % 6;
    const double p = densities[k % 3];
    const std::uint64_t s = rng();
    out.push_back({gen_family(m, u, p, s), "m=" + std::to_string(m) + " u=" + std::to_string(u) + " seed=" + std::to_string(s)});
  }
  return out;
}

TEST(SearchProperty, DecideMatchesBruteForce) {
  int yes = 0;
  for (const auto& [f, label] : random_families(600, 1)) {
    const Verdict d = decide(f);
    const Verdict b = brute_force(f);
    ASSERT_EQ(d.evolutionary, b.evolutionary) << label;
    if (d.evolutionary) {
      ++yes;
      ASSERT_TRUE(d.witness);
      EXPECT_TRUE(check_evolutionary(f, *d.witness).accepted) << label;
      EXPECT_EQ(d.witness, b.witness) << label; // same lexicographic order
    }
  }
  EXPECT_GT(yes, 50);
}

TEST(SearchProperty, PrecheckIsSound) {
  int failures = 0;
  for (const auto& [f, label] : random_families(600, 2)) {
    if (!precheck(f)) continue;
    ++failures;
    EXPECT_FALSE(brute_force(f).evolutionary) << label;
  }
  EXPECT_GT(failures, 50);
}

TEST(SearchProperty, MemoizationIsTransparent) {
  for (const auto& [f, label] : random_families(300, 3)) {
    DecideOptions memo, plain;
    memo.use_precheck = plain.use_precheck = false;
    plain.memo_capacity = 0;
    const Verdict a = decide(f, memo), b = decide(f, plain);
    EXPECT_EQ(a.evolutionary, b.evolutionary) << label;
    EXPECT_EQ(a.witness, b.witness) << label;
    EXPECT_EQ(b.stats.memo_hits, 0u);
  }
}

TEST(SearchProperty, TinyMemoCapacityStaysExact) {
  for (const auto& [f, label] : random_families(200, 4)) {
    DecideOptions tiny;
    tiny.use_precheck = false;
    tiny.memo_capacity = 2;
    EXPECT_EQ(decide(f, tiny).evolutionary, brute_force(f).evolutionary) << label;
  }
}

TEST(SearchProperty, RelabelingInvariance) {
  std::mt19937_64 rng(5);
  for (const auto& [f, label] : random_families(300, 5)) {
    std::vector<std::string> relabel(f.universe_size());
    for (std::size_t i = 0; i < relabel.size(); ++i) relabel[i] = "r" + std::to_string(i);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    std::vector<std::vector<std::string>> sets;
    for (const auto& s : f.sets()) {
      sets.emplace_back();
      for (ElementId e : s) sets.back().push_back(relabel[e]);
    }
    EXPECT_EQ(decide(f).evolutionary, decide(family_of(sets)).evolutionary) << label;
  }
}

TEST(SearchProperty, EveryKernelVariantAgrees) {
  for (const auto& [f, label] : random_families(200, 6)) {
    DecideOptions ref;
    ref.isa = simd::Isa::Scalar;
    const Verdict expected = decide(f, ref);
    for (simd::Isa isa : simd::available_isas()) {
      DecideOptions o;
      o.isa = isa;
      const Verdict got = decide(f, o);
      EXPECT_EQ(got.evolutionary, expected.evolutionary) << label << " " << simd::isa_name(isa);
      EXPECT_EQ(got.witness, expected.witness);
      EXPECT_EQ(got.stats.states_expanded, expected.stats.states_expanded);
    }
  }
}

TEST(SearchProperty, WideUniverseUsesVectorPath) {
  // > 256 elements so each bit row spans several vector registers.
  std::vector<std::vector<std::string>> sets;
  for (int i = 0; i < 6; ++i) {
    sets.emplace_back();
    for (int e = 0; e < 300; ++e) sets.back().push_back("w" + std::to_string(e + 290 * i));
  }
  const SetFamily f = family_of(sets);
  for (simd::Isa isa : simd::available_isas()) {
    DecideOptions o;
    o.isa = isa;
    const Verdict v = decide(f, o);
    ASSERT_TRUE(v.evolutionary);
    EXPECT_TRUE(check_evolutionary(f, *v.witness).accepted);
  }
}

} // namespace
