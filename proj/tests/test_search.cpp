#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ramsey/search.hpp"

using namespace ramsey;

namespace {

BigRational Q(long p, long q) { return BigRational(BigInt(p), BigInt(q)); }

void expect_avoider(const DeltaResult& res, const GapSetView& d) {
  ASSERT_EQ(res.witness.size(), res.found ? res.delta - 1 : res.budget);
  if (res.witness.size() == 0) return;
  EXPECT_LT(longest_mono_diffseq(res.witness, d).length, static_cast<std::size_t>(res.k));
  // canonical labelling: first occurrences appear in order 1, 2, ...
  int seen = 0;
  for (Color c : res.witness.word()) {
    EXPECT_LE(c, seen + 1);
    seen = std::max<int>(seen, c);
  }
}

GapSetView random_small_set(std::mt19937_64& gen, std::size_t bound) {
  std::bernoulli_distribution keep(0.5);
  std::vector<std::uint64_t> gaps;
  for (std::uint64_t d = 1; d <= 6; ++d) {
    if (keep(gen)) gaps.push_back(d);
  }
  if (gaps.empty()) gaps.push_back(std::uniform_int_distribution<std::uint64_t>(1, 6)(gen));
  auto v = finite_set(gaps);
  v.bound = bound;
  return v;
}

}  // namespace

TEST(Delta, Examples) {
  auto v3 = enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{10});
  auto res = delta(v3, 2, 2, 10);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(res.delta, 3U);
  EXPECT_EQ(res.witness.word(), (std::vector<Color>{1, 2}));
  EXPECT_EQ(oracle::brute_delta_two_colors({1, 2, 4, 5, 7, 8}, 2, 10), 3);

  for (int r = 2; r <= 5; ++r) {
    auto nat = enumerate(GapSetSpec::naturals(), std::uint64_t{10});
    auto d = delta(nat, 2, r, 10);
    ASSERT_TRUE(d.found);
    EXPECT_EQ(d.delta, static_cast<std::size_t>(r + 1));
    expect_avoider(d, nat);
  }

  auto one = finite_set({1});
  one.bound = 50;
  auto unk = delta(one, 2, 2, 50);
  EXPECT_FALSE(unk.found);
  EXPECT_EQ(unk.witness.size(), 50U);
  for (std::size_t x = 1; x <= 50; ++x) EXPECT_EQ(unk.witness(x), x % 2 == 1 ? 1 : 2);
}

TEST(Delta, OtherExamples) {
  auto d12 = finite_set({1, 2});
  EXPECT_EQ(delta(d12, 1, 2, 5).delta, 1U);
  EXPECT_TRUE(delta(d12, 1, 2, 5).found);

  auto v3 = enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{30});
  auto res = delta(v3, 3, 2, 30);
  ASSERT_TRUE(res.found);
  expect_avoider(res, v3);
  std::vector<int> gaps;
  for (int d = 1; d <= 30; ++d) {
    if (d % 3 != 0) gaps.push_back(d);
  }
  ASSERT_LE(res.delta, 24U);
  EXPECT_EQ(oracle::brute_delta_two_colors(gaps, 3, 24), static_cast<int>(res.delta));

  auto two = finite_set({2});
  two.bound = 40;
  auto unk = delta(two, 2, 2, 40);
  EXPECT_FALSE(unk.found);
  expect_avoider(unk, two);
}

TEST(Delta, RejectsBadInput) {
  auto d = finite_set({1});
  d.bound = 100;
  EXPECT_THROW(delta(d, 2, 2, 0), InputError);
  EXPECT_THROW(delta(d, 0, 2, 10), InputError);
  EXPECT_THROW(delta(d, 2, 1, 10), InputError);
  auto partial = enumerate(GapSetSpec::fibonacci(), std::uint64_t{10});
  EXPECT_THROW(delta(partial, 2, 2, 30), InputError);
}

TEST(Delta, MatchesExhaustiveEnumeration) {
  std::mt19937_64 gen(424242);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + trial % 2;
    const std::size_t budget = 18;
    auto d = random_small_set(gen, budget);
    std::vector<int> gaps(d.begin(), d.end());
    auto res = delta(d, k, 2, budget);
    auto expected = oracle::brute_delta_two_colors(gaps, k, static_cast<int>(budget));
    ASSERT_EQ(res.found, expected.has_value()) << trial;
    if (expected) EXPECT_EQ(res.delta, static_cast<std::size_t>(*expected)) << trial;
    expect_avoider(res, d);
  }
}

TEST(Delta, SymmetryBreakingKeepsVerdicts) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + trial % 3;
    const int r = 2 + trial % 2;
    auto d = random_small_set(gen, 14);
    auto fast = delta(d, k, r, 14, {1, true});
    auto slow = delta(d, k, r, 14, {1, false});
    EXPECT_EQ(fast.found, slow.found);
    EXPECT_EQ(fast.delta, slow.delta);
    EXPECT_LE(fast.nodes, slow.nodes);
  }
}

TEST(Delta, IndependentOfThreadCount) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 3 + trial % 2;
    const int r = 2 + trial % 2;
    auto d = random_small_set(gen, 40);
    auto one = delta(d, k, r, 40, {1, true});
    for (unsigned t : {2U, 4U, 7U}) {
      auto many = delta(d, k, r, 40, {t, true});
      EXPECT_EQ(one.found, many.found);
      EXPECT_EQ(one.delta, many.delta);
      EXPECT_EQ(one.witness, many.witness) << trial << " threads=" << t;
    }
  }
}

TEST(Delta, IndependentOfThreadCountOnLargerTrees) {
  struct Case {
    std::uint64_t m;
    int k;
    int r;
  };
  for (const auto& c : {Case{3, 8, 2}, Case{4, 4, 3}}) {
    auto vm = enumerate(GapSetSpec::nonmultiples(c.m), std::uint64_t{200});
    auto one = delta(vm, c.k, c.r, 200, {1, true});
    ASSERT_TRUE(one.found);
    expect_avoider(one, vm);
    for (unsigned t : {3U, 8U}) {
      auto many = delta(vm, c.k, c.r, 200, {t, true});
      EXPECT_EQ(many.delta, one.delta);
      EXPECT_EQ(many.witness, one.witness);
      EXPECT_EQ(many.nodes, one.nodes);
    }
  }
}

TEST(Delta, MonotoneInKAndR) {
  auto v4 = enumerate(GapSetSpec::nonmultiples(4), std::uint64_t{60});
  std::size_t prev_k = 0;
  for (int k = 2; k <= 4; ++k) {
    auto res = delta(v4, k, 2, 60);
    ASSERT_TRUE(res.found);
    EXPECT_GE(res.delta, prev_k);
    prev_k = res.delta;
  }
  std::size_t prev_r = 0;
  for (int r = 2; r <= 3; ++r) {
    auto res = delta(v4, 2, r, 60);
    ASSERT_TRUE(res.found);
    EXPECT_GE(res.delta, prev_r);
    prev_r = res.delta;
  }
}

TEST(Delta, NonmultiplesOfMWithMMinusOneColors) {
  // V_m with m - 1 colors: supporting data for doa(V_m) = m - 1
  for (std::uint64_t m = 3; m <= 4; ++m) {
    auto vm = enumerate(GapSetSpec::nonmultiples(m), std::uint64_t{80});
    for (int k = 2; k <= 3; ++k) {
      auto res = delta(vm, k, static_cast<int>(m - 1), 80, {default_threads(), true});
      EXPECT_TRUE(res.found) << m << " " << k;
      expect_avoider(res, vm);
    }
  }
}

TEST(Delta, Json) {
  auto v3 = enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{10});
  auto j = to_json(delta(v3, 2, 2, 10));
  EXPECT_EQ(j["verdict"], "delta");
  EXPECT_EQ(j["delta"], 3);
  EXPECT_EQ(j["witness"]["runs"], json::parse("[[1,1],[2,1]]"));
  auto one = finite_set({1});
  one.bound = 20;
  EXPECT_EQ(to_json(delta(one, 2, 2, 20))["verdict"], "unknown");
}

TEST(Chromatic, PowersOfTwo) {
  auto pow2 = enumerate(GapSetSpec::geometric(2), std::uint64_t{64});
  auto res = chromatic_number_prefix(pow2, 5, 0);
  EXPECT_GE(res.lower, 3U);
  // 1, 3, 5 pairwise differ by 2, 2, 4
  auto larger = chromatic_number_prefix(pow2, 60, 60);
  EXPECT_EQ(larger.lower, 3U);
  EXPECT_TRUE(larger.exact);
  ASSERT_GE(larger.clique.size(), 3U);
  for (std::size_t i = 0; i < larger.clique.size(); ++i) {
    for (std::size_t j = i + 1; j < larger.clique.size(); ++j) {
      auto gap = larger.clique[j] > larger.clique[i] ? larger.clique[j] - larger.clique[i] : larger.clique[i] - larger.clique[j];
      EXPECT_TRUE(std::binary_search(pow2.begin(), pow2.end(), gap));
    }
  }
}

TEST(Chromatic, Examples) {
  auto v3 = enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{12});
  auto res = chromatic_number_prefix(v3, 12, 12);
  EXPECT_TRUE(res.exact);
  EXPECT_EQ(res.lower, 3U);
  EXPECT_EQ(res.upper, 3U);
  // every proper 3-coloring of this graph is the residue coloring up to relabelling
  auto residue = residue_coloring(3, 12);
  for (std::size_t x = 1; x <= 12; ++x) {
    for (std::size_t y = x + 1; y <= 12; ++y) EXPECT_EQ(res.coloring(x) == res.coloring(y), residue(x) == residue(y));
  }

  auto one = finite_set({1});
  one.bound = 10;
  auto path = chromatic_number_prefix(one, 10, 10);
  EXPECT_EQ(path.lower, 2U);
  EXPECT_EQ(path.upper, 2U);
  EXPECT_THROW(chromatic_number_prefix(one, 0, 0), InputError);
}

TEST(Chromatic, ProperAndBracketing) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 10 + trial;
    auto d = random_small_set(gen, n);
    auto res = chromatic_number_prefix(d, n, n);
    EXPECT_LE(res.lower, res.upper);
    EXPECT_EQ(chromatically_intersective_check(res.coloring, d).length, 1U);
    if (!res.odd_cycle.empty()) {
      EXPECT_EQ(res.odd_cycle.size() % 2, 1U);
      for (std::size_t i = 0; i < res.odd_cycle.size(); ++i) {
        auto a = res.odd_cycle[i];
        auto b = res.odd_cycle[(i + 1) % res.odd_cycle.size()];
        EXPECT_TRUE(std::binary_search(d.begin(), d.end(), a > b ? a - b : b - a));
      }
    }
    // exhaustive check on small graphs
    if (res.exact && n <= 13 && res.upper > 1) {
      const auto c = res.upper - 1;
      std::vector<Color> w(n, 1);
      bool any = false;
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= c;
      for (std::size_t code = 0; code < total && !any; ++code) {
        std::size_t rest = code;
        for (auto& x : w) {
          x = static_cast<Color>(rest % c + 1);
          rest /= c;
        }
        any = chromatically_intersective_check(Coloring(static_cast<int>(c), w), d).length == 1;
      }
      EXPECT_FALSE(any) << trial;
    }
  }
}

TEST(DoaEvidence, Examples) {
  const std::size_t n = 50000;
  auto ef = enumerate(GapSetSpec::even_fibonacci(), std::uint64_t{n});
  auto cert = doa_evidence(ef, preset_alpha("oneplusphiover4"), Q(21, 100), 2, n);
  EXPECT_TRUE(cert.pass);
  EXPECT_EQ(cert.parameters["bound"], "4");

  auto one = finite_set({1});
  one.bound = 100;
  auto alt = doa_evidence(one, Q5Number(Q(1, 2)), Q(1, 2), 2, 100);
  EXPECT_TRUE(alt.pass);
  EXPECT_EQ(alt.parameters["bound"], "2");
}

TEST(DoaEvidence, GeometricFourPipeline) {
  const std::size_t n = 20000;
  auto geo_big = enumerate<BigInt>(GapSetSpec::geometric(4), BigInt(1) << 62);
  auto alpha = build_alpha_for(geo_big, 2, BigRational(1), 20);
  auto geo = enumerate(GapSetSpec::geometric(4), std::uint64_t{n});
  auto cert = doa_evidence(geo, Q5Number(alpha.alpha), alpha.eps1, 2, n);
  EXPECT_TRUE(cert.pass);
  EXPECT_EQ(cert.parameters["bound"], "5");
  EXPECT_LT(cert.parameters["longest_found"].get<std::size_t>(), 5U);

  // the 4-step alpha 341/1024 is only certified up to 64
  auto short_alpha = doa_evidence(geo, Q5Number(Q(341, 1024)), Q(1, 8), 2, n);
  EXPECT_FALSE(short_alpha.pass);
}
