#include <random>

#include <gtest/gtest.h>

#include "ramsey/colorings.hpp"
#include "ramsey/verify.hpp"

using namespace ramsey;

namespace {

std::vector<Color> W(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

BigRational Q(long p, long q) { return BigRational(BigInt(p), BigInt(q)); }

// 512-bit float evaluation of the class of frac(alpha x); only used where
// alpha x is irrational, so no value sits on a cut point.
int float_class(const Q5Number& alpha, int r, unsigned long x) {
  mpf_class s5(5, 512);
  s5 = sqrt(s5);
  mpf_class a(alpha.a().raw(), 512);
  mpf_class b(alpha.b().raw(), 512);
  mpf_class v(0, 512);
  v = (a + b * s5) * x;
  mpf_class fl(0, 512);
  fl = floor(v);
  mpf_class f(0, 512);
  f = (v - fl) * r;
  mpf_class cls(0, 512);
  cls = floor(f);
  return static_cast<int>(cls.get_si()) + 1;
}

}  // namespace

TEST(FracColoring, Examples) {
  auto chi = frac_coloring(preset_alpha("sqrt5over8"), 2, 10);
  EXPECT_EQ(chi(1), 1);
  EXPECT_EQ(frac_coloring(Q5Number(Q(1, 3)), 3, 6).word(), W({2, 3, 1, 2, 3, 1}));
  EXPECT_EQ(frac_coloring(Q5Number(0), 2, 5).word(), W({1, 1, 1, 1, 1}));
  EXPECT_THROW(frac_coloring(Q5Number(0), 1, 5), InputError);
  EXPECT_THROW(frac_coloring(Q5Number(0), 2, 0), InputError);
}

TEST(FracColoring, BoundaryGoesToHigherClass) {
  // frac(x/2) = 1/2 at odd x is exactly the cut
  EXPECT_EQ(frac_coloring(Q5Number(Q(1, 2)), 2, 4).word(), W({2, 1, 2, 1}));
  EXPECT_EQ(frac_coloring(Q5Number(Q(-1, 4)), 4, 4).word(), W({4, 3, 2, 1}));
}

TEST(FracColoring, MatchesHighPrecisionFloat) {
  const std::vector<Q5Number> alphas = {preset_alpha("sqrt5over8"), preset_alpha("oneplusphiover4"),
                                        Q5Number::phi(), Q5Number(Q(-7, 3), Q(11, 5)),
                                        Q5Number(Q(1, 1000), Q(-1, 999))};
  for (const auto& alpha : alphas) {
    for (int r : {2, 3, 7}) {
      auto chi = frac_coloring(alpha, r, 3000);
      for (unsigned long x = 1; x <= chi.size(); ++x) {
        ASSERT_EQ(chi(x), float_class(alpha, r, x)) << alpha.str() << " r=" << r << " x=" << x;
      }
    }
  }
}

TEST(FracColoring, RationalAlphaIsPeriodic) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 60);
  for (int trial = 0; trial < 40; ++trial) {
    const long q = den(gen);
    auto chi = frac_coloring(Q5Number(Q(num(gen), q)), 2 + trial % 4, 2000);
    for (std::size_t x = 1; x + q <= chi.size(); ++x) ASSERT_EQ(chi(x), chi(x + q));
  }
}

TEST(FracColoring, Deterministic) {
  auto a = frac_coloring(preset_alpha("oneplusphiover4"), 3, 5000);
  auto b = frac_coloring(preset_alpha("oneplusphiover4"), 3, 1234);
  EXPECT_EQ(a.prefix(1234), b);
  EXPECT_EQ(frac_coloring(preset_alpha("oneplusphiover4"), 3, 5000), a);
}

TEST(BlockColoring, Examples) {
  EXPECT_EQ(block_coloring(2, 8).word(), W({1, 1, 2, 2, 1, 1, 2, 2}));
  EXPECT_EQ(block_coloring(1, 4).word(), W({1, 2, 1, 2}));
  EXPECT_EQ(block_coloring(3, 6).word(), W({1, 1, 1, 2, 2, 2}));
  EXPECT_THROW(block_coloring(0, 6), InputError);
}

TEST(BlockColoring, AvoidsLongStructuresForSmallGaps) {
  std::mt19937 gen(9);
  for (std::size_t m = 1; m <= 8; ++m) {
    auto chi = block_coloring(m, 3000);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::uint64_t> gaps;
      std::uniform_int_distribution<std::uint64_t> pick(1, m);
      for (std::size_t i = 0; i < m; ++i) gaps.push_back(pick(gen));
      gaps.push_back(m);
      auto view = finite_set(gaps);
      EXPECT_LE(longest_mono_diffseq(chi, view).length, m);
      EXPECT_LE(longest_mono_AP(chi, view).length, m);
    }
    // the bound is tight with D = {1}
    EXPECT_EQ(longest_mono_diffseq(chi, finite_set({1})).length, m);
  }
}

TEST(ResidueColoring, Examples) {
  EXPECT_EQ(residue_coloring(3, 6).word(), W({2, 3, 1, 2, 3, 1}));
  EXPECT_EQ(residue_coloring(2, 4).word(), W({2, 1, 2, 1}));
  EXPECT_EQ(residue_coloring(5, 5).word(), W({2, 3, 4, 5, 1}));
  EXPECT_THROW(residue_coloring(1, 5), InputError);
}

TEST(ResidueColoring, NoTwoTermNonmultipleChain) {
  for (std::uint64_t m : {2, 3, 5, 7}) {
    auto chi = residue_coloring(m, 2000);
    auto view = enumerate(GapSetSpec::nonmultiples(m), std::uint64_t{1999});
    EXPECT_EQ(longest_mono_diffseq(chi, view).length, 1U);
  }
}

TEST(ProductColoring, Examples) {
  auto a = Coloring(2, W({1, 2, 1, 2}));
  auto b = Coloring(2, W({1, 1, 2, 2}));
  EXPECT_EQ(product_coloring(a, b).word(), W({1, 3, 2, 4}));
  EXPECT_EQ(product_coloring(a, b).r(), 4);
  EXPECT_EQ(product_coloring(a, Coloring(1, W({1, 1, 1, 1}))).word(), a.word());
  EXPECT_EQ(product_coloring(Coloring(1, W({1, 1})), Coloring(2, W({1, 2}))).word(), W({1, 2}));
  EXPECT_THROW(product_coloring(a, Coloring(2, W({1, 2}))), InputError);
}

TEST(ProductColoring, ClassesAreIntersections) {
  auto a = frac_coloring(preset_alpha("sqrt5over8"), 2, 500);
  auto b = residue_coloring(3, 500);
  auto p = product_coloring(a, b);
  for (std::size_t x = 1; x <= 500; ++x) {
    for (std::size_t y = x + 1; y <= 500; y += 7) {
      EXPECT_EQ(p(x) == p(y), a(x) == a(y) && b(x) == b(y));
    }
  }
}

TEST(RotationWord, Examples) {
  EXPECT_EQ(rotation_word(Q5Number(Q(1, 2)), Q5Number(0), Q5Number(Q(1, 2)), 4).word(), W({2, 1, 2, 1}));
  EXPECT_EQ(rotation_word(Q5Number(0), Q5Number(Q(1, 4)), Q5Number(Q(1, 2)), 3).word(), W({1, 1, 1}));
  EXPECT_THROW(rotation_word(Q5Number(0), Q5Number(0), Q5Number(1), 3), InputError);
  EXPECT_THROW(rotation_word(Q5Number(0), Q5Number(0), Q5Number(0), 3), InputError);
}

TEST(RotationWord, MultipleArcs) {
  // alpha = 1/4 visits 1/4, 1/2, 3/4, 0
  std::vector<Arc> arcs{{Q5Number(0), Q5Number(Q(1, 8))}, {Q5Number(Q(1, 2)), Q5Number(Q(5, 8))}};
  EXPECT_EQ(rotation_word(Q5Number(Q(1, 4)), Q5Number(0), arcs, 8).word(), W({2, 1, 2, 1, 2, 1, 2, 1}));
  EXPECT_THROW(rotation_word(Q5Number(0), Q5Number(0), std::vector<Arc>{}, 3), InputError);
}

TEST(Complexity, Examples) {
  EXPECT_EQ(complexity(residue_coloring(2, 20), 2), 2U);
  EXPECT_EQ(complexity(golden_rotation_word(10000), 3), 4U);
  EXPECT_EQ(complexity(Coloring(1, std::vector<Color>(10, 1)), 5), 1U);
  EXPECT_THROW(complexity(residue_coloring(2, 4), 5), InputError);
}

TEST(Complexity, GoldenWordIsSturmian) {
  auto word = golden_rotation_word(10000);
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(complexity(word, n), n + 1) << n;
  // Fibonacci word: color 1 codes the short arc, so "11" never occurs
  auto text = to_text(word);
  EXPECT_EQ(text.find("11"), std::string::npos);
  EXPECT_NE(text.find("22"), std::string::npos);
}

TEST(Complexity, PeriodicWordsHaveSmallComplexity) {
  for (std::size_t m : {2, 3, 5}) {
    auto periodic = frac_coloring(Q5Number(Q(1, static_cast<long>(2 * m + 1))), 2, 2000);
    bool found = false;
    for (std::size_t n = 1; n <= 30 && !found; ++n) found = complexity(periodic, n) <= n;
    EXPECT_TRUE(found);
  }
}

TEST(Serialization, RunLengthRoundTrip) {
  auto chi = preset_coloring("sqrt5over8", 5000);
  auto j = to_rle_json(chi);
  EXPECT_EQ(j["N"], 5000);
  EXPECT_EQ(j["provenance"]["preset"], "sqrt5over8");
  auto back = coloring_from_rle_json(json::parse(j.dump()));
  EXPECT_EQ(back, chi);
  EXPECT_EQ(to_rle_json(block_coloring(2, 8))["runs"], json::parse("[[1,2],[2,2],[1,2],[2,2]]"));
  auto bad = j;
  bad["N"] = 4999;
  EXPECT_THROW(coloring_from_rle_json(bad), InputError);
}

TEST(Serialization, TextRoundTrip) {
  auto chi = frac_coloring(preset_alpha("oneplusphiover4"), 12, 700);
  auto text = to_text(chi);
  EXPECT_EQ(text.size(), 700U);
  EXPECT_EQ(coloring_from_text(text, 12), chi);
  EXPECT_EQ(to_text(block_coloring(2, 8)), "11221122");
  EXPECT_THROW(coloring_from_text("1203"), InputError);
}
