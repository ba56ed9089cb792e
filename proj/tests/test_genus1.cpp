#include <random>

#include <gtest/gtest.h>

#include "mcg/genus1.hpp"

using namespace mcg::genus1;

namespace {

// Order in PGL(2,Z) by brute force over powers, independent of pgl_order.
int brute_order(const Mat2& m) {
  Mat2 x = m;
  for (int k = 1; k <= 24; ++k) {
    if (x == kIdentity || x == -kIdentity) return k;
    x = x * m;
  }
  return 0;
}

}  // namespace

TEST(Presentation, GeneratorRelations) {
  const auto& g = generators();
  EXPECT_EQ(brute_order(g.a), 3);
  EXPECT_EQ(brute_order(g.t), 2);
  EXPECT_EQ(brute_order(g.b), 2);
  EXPECT_TRUE(pgl_equal(g.a * g.t, g.t * g.a * g.a));
  EXPECT_TRUE(pgl_equal(g.b * g.t, g.t * g.b));
}

TEST(Words, Parse) {
  EXPECT_EQ(parse_pres_word("a^2 b t").to_string(), "a^2bt");
  EXPECT_EQ(parse_pres_word("a*a*a").to_string(), "1");
  EXPECT_EQ(parse_pres_word("t t").to_string(), "1");
  EXPECT_EQ(parse_pres_word("a^-1").to_string(), "a^2");
  EXPECT_THROW(parse_pres_word("x"), mcg::ParseError);
  EXPECT_THROW(parse_pres_word(""), mcg::ParseError);
  EXPECT_THROW(parse_pres_word("a^"), mcg::ParseError);
}

TEST(NormalForm, Shapes) {
  EXPECT_EQ(normal_form(parse_pres_word("t t")).reduced().to_string(), "1");
  EXPECT_EQ(normal_form(parse_pres_word("t a")).reduced().to_string(), "a^2t");
  EXPECT_EQ(normal_form(parse_pres_word("t b")).reduced().to_string(), "bt");
  EXPECT_EQ(normal_form(parse_pres_word("a b t")).kind, NormalKind::Type1);
  EXPECT_EQ(normal_form(parse_pres_word("b a b t")).kind, NormalKind::Type2);
  EXPECT_EQ(normal_form(parse_pres_word("a b a t")).kind, NormalKind::Type3);
  EXPECT_EQ(normal_form(parse_pres_word("b a t")).kind, NormalKind::LeadingBTrailingA);
  EXPECT_EQ(normal_form(parse_pres_word("a b")).kind, NormalKind::TFree);
}

TEST(NormalForm, PreservesElement) {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    PresWord w;
    for (int j = 0, n = static_cast<int>(rng() % 12); j < n; ++j) w.push("abt"[rng() % 3], 1);
    EXPECT_TRUE(pgl_equal(to_matrix(normal_form(w).reduced()), to_matrix(w))) << w.to_string();
  }
}

TEST(Torsion, Representatives) {
  EXPECT_EQ(torsion_representative(parse_pres_word("b a b t")), TorsionClass::AT);
  EXPECT_EQ(torsion_representative(parse_pres_word("a t a^2")), TorsionClass::A2T);
  EXPECT_EQ(torsion_representative(parse_pres_word("a b")), TorsionClass::Infinite);
  EXPECT_EQ(torsion_representative(parse_pres_word("b a t")), TorsionClass::Infinite);
  EXPECT_EQ(torsion_representative(parse_pres_word("t a t")), TorsionClass::A2);
  const std::map<TorsionClass, int> orders = {{TorsionClass::One, 1}, {TorsionClass::A, 3}, {TorsionClass::A2, 3},
                                              {TorsionClass::T, 2},   {TorsionClass::AT, 2}, {TorsionClass::A2T, 2},
                                              {TorsionClass::B, 2},   {TorsionClass::BT, 2}};
  for (auto [c, o] : orders) {
    EXPECT_EQ(brute_order(to_matrix(representative_word(c))), o) << to_string(c);
    EXPECT_EQ(torsion_representative(representative_word(c)), c);
  }
}

// The representatives are not pairwise non-conjugate (t a t = a^2), so a
// conjugate may reduce to a different one, but always of the same order.
TEST(Torsion, ConjugationPreservesOrder) {
  std::mt19937 rng(5);
  for (TorsionClass c : torsion_classes()) {
    for (int i = 0; i < 50; ++i) {
      PresWord x;
      for (int j = 0, n = 1 + static_cast<int>(rng() % 8); j < n; ++j) x.push("abt"[rng() % 3], 1);
      const PresWord w = x * representative_word(c) * x.inverse();
      const TorsionClass r = torsion_representative(w);
      ASSERT_NE(r, TorsionClass::Infinite) << w.to_string();
      EXPECT_EQ(brute_order(to_matrix(representative_word(r))), brute_order(to_matrix(representative_word(c))))
          << w.to_string();
    }
  }
}

TEST(Torsion, MatrixOracle) {
  std::mt19937 rng(9);
  for (int i = 0; i < 3000; ++i) {
    PresWord w;
    for (int j = 0, n = static_cast<int>(rng() % 16); j < n; ++j) w.push("abt"[rng() % 3], 1);
    const TorsionClass c = torsion_representative(w);
    const int o = brute_order(to_matrix(w));
    if (c == TorsionClass::Infinite)
      EXPECT_EQ(o, 0) << w.to_string();
    else
      EXPECT_EQ(o, brute_order(to_matrix(representative_word(c)))) << w.to_string();
  }
}

TEST(Quotient, Table) {
  for (const auto& row : quotient_table())
    EXPECT_EQ(quotient_image(parse_pres_word(row.word)).to_string(), row.perm) << row.name;
  EXPECT_EQ(closure({image_a(), image_b(), image_t()}).size(), 12u);
  EXPECT_EQ((image_a() * image_t()).to_string(), "(13)");
}

TEST(Quotient, GeneratingPairs) {
  EXPECT_EQ(generating_pairs_search(), expected_generating_pairs());
}

TEST(Quotient, EnlargedPairSetFails) {
  auto claimed = expected_generating_pairs();
  claimed.insert({"a_1", "b_1t_1"});
  const Stage st = stage_generating_pairs(claimed);
  EXPECT_FALSE(st.passed);
  EXPECT_NE(st.detail.find("<a_1, b_1t_1> has order 6"), std::string::npos) << st.detail;
}

TEST(NotDihedral, Certificate) {
  const CommutatorWitness w = not_dihedral_certificate();
  EXPECT_TRUE(w.verify());
  // A genuinely dihedral subgroup has commuting commutators.
  EXPECT_TRUE(commutators_commute({parse_pres_word("t"), parse_pres_word("at")}, 6));
}

TEST(GL2, DecomposeKnown) {
  EXPECT_EQ(to_string(decompose_gl2z({1, 0, 1, 1})), "S*T*S");
  EXPECT_EQ(to_string(decompose_gl2z(kIdentity)), "1");
  EXPECT_EQ(evaluate(decompose_gl2z(-kIdentity)), -kIdentity);
  EXPECT_EQ(evaluate(decompose_gl2z({1, 0, 0, -1})), (Mat2{1, 0, 0, -1}));
  EXPECT_THROW(decompose_gl2z({2, 0, 0, 1}), mcg::InvalidInput);
}

TEST(GL2, RoundTripRandom) {
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    Mat2 m = kIdentity;
    for (int j = 0, n = 1 + static_cast<int>(rng() % 40); j < n; ++j) {
      const int c = static_cast<int>(rng() % 3);
      m = m * (c == 0 ? kS : c == 1 ? kT : kT.inverse());
    }
    if (rng() % 2) m = -m;
    EXPECT_EQ(evaluate(decompose_gl2z(m)), m) << m.to_string();
  }
}

TEST(Report, AllStagesPass) {
  const Theorem32Report r = verify_theorem32();
  ASSERT_EQ(r.stages.size(), 5u);
  for (const auto& s : r.stages) EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
  EXPECT_EQ(r.flags.size(), 2u);
}

TEST(Matrix, Parse) {
  EXPECT_EQ(parse_matrix("[[1,0],[1,1]]"), (Mat2{1, 0, 1, 1}));
  EXPECT_EQ(parse_matrix("[[ -1, 2 ], [0, -1]]"), (Mat2{-1, 2, 0, -1}));
  EXPECT_THROW(parse_matrix("[[1,0],[1]]"), mcg::ParseError);
}
