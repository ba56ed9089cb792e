#include <random>

#include <gtest/gtest.h>

#include "mcg/properties.hpp"

using namespace mcg;

namespace {

MappingWord W(int g, const std::string& text) { return parse_word(g, text); }

// J-form check written out independently of homology_rep.
bool preserves_form(const IntMatrix& m, const std::vector<std::vector<long long>>& J, int ch) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long v = 0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) v += m[k][i] * J[k][l] * m[l][j];
      if (v != ch * J[i][j]) return false;
    }
  return true;
}

}  // namespace

TEST(Parse, Grammar) {
  EXPECT_EQ(W(3, "B1*B5^-1*B6^-1").to_string(), "B1*B5^-1*B6^-1");
  EXPECT_EQ(W(3, "A15").to_string(), "A1");  // indices reduced mod 4g+2
  EXPECT_TRUE(W(3, "1").empty());
  EXPECT_EQ(W(3, "S^2*T*E*F").tokens().size(), 4u);
  EXPECT_THROW(W(3, "B1**B2"), ParseError);
  EXPECT_THROW(W(3, "Q1"), ParseError);
  EXPECT_THROW(W(3, "B"), ParseError);
  EXPECT_THROW(W(4, "C0"), ParseError);
  try {
    W(3, "A1*Z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Apply, NamedCurveIdentities) {
  const Surface& s3 = surface(3);
  const Surface& s4 = surface(4);
  EXPECT_EQ(apply(W(3, "B4^-1"), s3.b(0)), s3.c(0));
  EXPECT_EQ(apply(W(3, "B5^-1*B6^-1*B2"), s3.b(1)), s3.a(2));
  EXPECT_EQ(apply(W(4, "B1*B5^-1*B6^-1"), s4.b(0)), s4.a(5));
}

TEST(Apply, DisjointTwistIsTrivial) {
  const Surface& s = surface(3);
  EXPECT_EQ(geometric_intersection(s.a(3), s.b(0)), 0);
  EXPECT_EQ(apply(W(3, "B0"), s.a(3)), s.a(3));
}

TEST(Apply, Functorial) {
  const Surface& s = surface(3);
  const MappingWord v = W(3, "A1*S*B2^-1"), w = W(3, "T*B0*A3");
  for (const auto& [name, x] : s.probes()) EXPECT_EQ(apply(v * w, x), apply(v, apply(w, x))) << name;
}

TEST(Apply, SymmetriesMoveCurves) {
  for (int g : {3, 4}) {
    const Surface& s = surface(g);
    EXPECT_EQ(apply(W(g, "S"), s.a(1)), s.a(2));
    EXPECT_EQ(apply(W(g, "T"), s.b(0)), s.b(0));
  }
}

TEST(Certificate, Torsion) {
  for (int g : {3, 4}) {
    const int n = 4 * g + 2;
    EXPECT_EQ(is_identity(W(g, "S^" + std::to_string(n))).verdict, Verdict::Identity);
    EXPECT_EQ(is_identity(W(g, "T*B0*T*B0")).verdict, Verdict::Identity);
    EXPECT_EQ(order_of(W(g, "S"), 30), n);
    EXPECT_EQ(order_of(W(g, "T*B0"), 4), 2);
    EXPECT_EQ(homology_rep(W(g, "T*B0")).character, -1);
    EXPECT_EQ(order_of(W(g, "A1"), 20), std::nullopt);
  }
}

TEST(Certificate, NonIdentityWitnessVerifies) {
  const auto c = is_identity(W(3, "S"));
  EXPECT_EQ(c.verdict, Verdict::NonIdentity);
  EXPECT_EQ(c.witness, "a0 -> a1");
  EXPECT_EQ(apply(W(3, "S"), surface(3).a(0)), surface(3).a(1));
  EXPECT_EQ(is_identity(W(3, "T")).verdict, Verdict::NonIdentity);
  EXPECT_EQ(is_identity(MappingWord(3)).verdict, Verdict::Identity);
}

TEST(Relations, Lantern) {
  for (int g : {3, 4}) {
    EXPECT_TRUE(classes_equal(W(g, "B0*B2*E"), W(g, "A1*A3*A5*F"))) << g;
    EXPECT_TRUE(classes_equal(W(g, "A1"), W(g, "B0*A3^-1*B2*A5^-1*E*F^-1"))) << g;
  }
}

TEST(Relations, LanternFailsWithFlippedHandedness) {
  ScopedHandedness flip(-kTwistHandedness);
  for (int g : {3, 4}) EXPECT_FALSE(classes_equal(W(g, "B0*B2*E"), W(g, "A1*A3*A5*F"))) << g;
  EXPECT_NE(apply(W(3, "B4^-1"), surface(3).b(0)), surface(3).c(0));
}

TEST(Relations, BraidAndDistinctTwists) {
  EXPECT_TRUE(classes_equal(W(3, "A1*A2*A1"), W(3, "A2*A1*A2")));
  EXPECT_FALSE(classes_equal(W(3, "A1"), W(3, "A2")));
  EXPECT_TRUE(classes_equal(W(3, "A1*A3"), W(3, "A3*A1")));
}

TEST(Homology, TransvectionAndIdentity) {
  const HomologyRep e = homology_rep(MappingWord(3));
  EXPECT_EQ(e.matrix, identity_int(6));
  EXPECT_EQ(e.character, 1);
  const Surface& s = surface(3);
  const HomologyRep a = homology_rep(W(3, "A1"));
  EXPECT_TRUE(preserves_form(a.matrix, s.form(), 1));
  // (M - I) has rank one with image spanned by [a1].
  IntMatrix d = a.matrix;
  for (std::size_t i = 0; i < d.size(); ++i) d[i][i] -= 1;
  const auto h = homology_class(s.a(1)).coords;
  for (std::size_t j = 0; j < d.size(); ++j) {
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(d[i][j] * h[k], d[k][j] * h[i]);
  }
}

TEST(Homology, FormPreservedOnRandomWords) {
  std::mt19937_64 rng(11);
  for (int g : {3, 4}) {
    for (int i = 0; i < 15; ++i) {
      const MappingWord w = props::random_word(g, rng, 6);
      const HomologyRep r = homology_rep(w);
      EXPECT_EQ(r.character, w.orientation_character());
      EXPECT_TRUE(preserves_form(r.matrix, surface(g).form(), r.character)) << w.to_string();
    }
  }
}

TEST(Properties, QuadraticGrowth) {
  for (int g : {3, 4}) {
    EXPECT_GE(props::named_pairs(g, 12, 8, 4).size(), 20u);
    const auto r = props::quadratic_growth(g);
    EXPECT_TRUE(r.ok) << r.witness;
    EXPECT_GE(r.cases, 60);
  }
}

TEST(Properties, Naturality) {
  for (int g : {3, 4}) {
    const auto r = props::naturality(g, props::kDefaultSeed, 12);
    EXPECT_TRUE(r.ok) << r.witness;
    EXPECT_EQ(r.cases, 12);
  }
}

TEST(Properties, NaturalityOtherSeed) {
  const auto r = props::naturality(3, 12345, 10);
  EXPECT_TRUE(r.ok) << r.witness;
}

TEST(Properties, HomologyMultiplicative) {
  for (int g : {3, 4}) {
    const auto r = props::homology_symplectic(g, props::kDefaultSeed);
    EXPECT_TRUE(r.ok) << r.witness;
  }
}

TEST(Properties, IntersectionInvariance) {
  for (int g : {3, 4}) {
    const auto r = props::invariance(g, props::kDefaultSeed);
    EXPECT_TRUE(r.ok) << r.witness;
  }
}

TEST(Properties, DisjointTwistsCommute) {
  for (int g : {3, 4}) {
    const auto r = props::commutation(g, 8);
    EXPECT_TRUE(r.ok) << r.witness;
  }
}

TEST(Twist, CustomCurveTokens) {
  const Surface& s = surface(3);
  const CurveClass y = apply(W(3, "B2"), s.b(1));
  const MappingWord ty = MappingWord::twist_about(y);
  EXPECT_TRUE(classes_equal(ty, W(3, "B2*B1*B2^-1")));
}
