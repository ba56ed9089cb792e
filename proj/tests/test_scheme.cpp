#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "mcg/surface.hpp"

using namespace mcg;

TEST(Scheme, GenusThreeCounts) {
  const PolygonScheme s = build_scheme(3);
  EXPECT_EQ(s.sides(), 14);
  EXPECT_EQ(s.edge_count(), 7);
  EXPECT_EQ(s.vertex_count(), 2);
  EXPECT_EQ(s.euler_characteristic(), -4);
  EXPECT_TRUE(s.orientable());
}

TEST(Scheme, GenusFourCounts) {
  const PolygonScheme s = build_scheme(4);
  EXPECT_EQ(s.sides(), 18);
  EXPECT_EQ(s.edge_count(), 9);
  EXPECT_EQ(s.euler_characteristic(), -6);
  EXPECT_TRUE(s.orientable());
}

TEST(Scheme, RejectsSmallGenus) {
  EXPECT_THROW(build_scheme(2), UnsupportedGenus);
  EXPECT_THROW(build_scheme(1), UnsupportedGenus);
  EXPECT_THROW(surface(2), UnsupportedGenus);
}

TEST(Scheme, EulerCharacteristicMatchesGenus) {
  for (int g = 3; g <= 6; ++g) EXPECT_EQ(build_scheme(g).euler_characteristic(), 2 - 2 * g) << g;
}

TEST(Scheme, VertexClassesPartitionCorners) {
  const PolygonScheme s = build_scheme(4);
  std::size_t total = 0;
  for (const auto& c : s.vertex_classes()) total += c.size();
  EXPECT_EQ(total, static_cast<std::size_t>(s.sides()));
  for (const auto& order : s.vertex_cyclic_order()) EXPECT_FALSE(order.empty());
}

TEST(Symmetry, DihedralRelations) {
  for (int g : {3, 4}) {
    const PolygonScheme scheme = build_scheme(g);
    const auto [sigma, tau] = dihedral_symmetries(scheme);
    DartPermutation p = DartPermutation::identity(scheme);
    for (int i = 0; i < scheme.sides(); ++i) {
      EXPECT_EQ(i == 0, p.is_identity()) << i;
      p = p * sigma;
    }
    EXPECT_TRUE(p.is_identity());
    EXPECT_TRUE((tau * tau).is_identity());
    EXPECT_TRUE((tau * sigma * tau * sigma).is_identity());
    EXPECT_EQ(tau * sigma * tau, sigma.inverse());
    EXPECT_EQ(tau.orientation_character(), -1);
    EXPECT_EQ(sigma.orientation_character(), 1);
    EXPECT_TRUE(sigma.respects_identification());
    EXPECT_TRUE(tau.respects_identification());
  }
}

TEST(Symmetry, SigmaShiftsNamedCurves) {
  for (int g : {3, 4}) {
    const Surface& s = surface(g);
    for (int i = 0; i < s.sides(); ++i) {
      EXPECT_EQ(relabel(s.a(i), s.sigma()), s.a(i + 1)) << i;
      EXPECT_EQ(relabel(s.b(i), s.sigma()), s.b(i + 1)) << i;
      EXPECT_EQ(s.b(i), rotate(s.b(0), i)) << i;
    }
  }
}

TEST(Symmetry, TauFixesB0) {
  for (int g : {3, 4}) {
    const Surface& s = surface(g);
    EXPECT_EQ(relabel(s.b(0), s.tau()), s.b(0));
    EXPECT_FALSE(s.tau_candidates().empty());
  }
}

TEST(Curves, FamilySizes) {
  // a_i has period 2g+1, b_i period 4g+2.
  for (int g : {3, 4}) {
    const Surface& s = surface(g);
    EXPECT_EQ(s.a(0), s.a(2 * g + 1));
    EXPECT_NE(s.b(0), s.b(2 * g + 1));
    EXPECT_EQ(s.a(-1), s.a(s.sides() - 1));
  }
  EXPECT_TRUE(surface(3).has_c());
  EXPECT_FALSE(surface(4).has_c());
  EXPECT_THROW(surface(4).c(0), UnsupportedInput);
}

TEST(Curves, NamedCurveIntersections) {
  const PolygonScheme s3 = build_scheme(3);
  EXPECT_EQ(geometric_intersection(named_curve(s3, {'a', 1}), named_curve(s3, {'a', 2})), 1);
  EXPECT_EQ(geometric_intersection(named_curve(s3, {'a', 1}), named_curve(s3, {'a', 3})), 0);
  EXPECT_EQ(geometric_intersection(named_curve(build_scheme(4), {'b', 0}), named_curve(build_scheme(4), {'b', 2})),
            2);
}

// The shipped table must agree with the constants the engine uses.
TEST(Transcription, DataFileMatchesConstants) {
  std::ifstream in(std::string(MCG_SOURCE_DIR) + "/data/transcriptions.txt");
  ASSERT_TRUE(in.good());
  std::map<std::pair<int, std::string>, std::vector<int>> table;
  int genus = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "genus") {
      ls >> genus;
      continue;
    }
    ASSERT_EQ(head.back(), ':') << line;
    head.pop_back();
    std::vector<int> seq;
    for (int v; ls >> v;) seq.push_back(v);
    table[{genus, head}] = seq;
  }
  ASSERT_EQ(table.size(), 5u);
  for (int g : {3, 4}) {
    EXPECT_EQ((table[{g, "a1"}]), Transcription::a1(g));
    EXPECT_EQ((table[{g, "b0"}]), Transcription::b0(g));
  }
  EXPECT_EQ((table[{3, "c0"}]), Transcription::c0(3));
  EXPECT_THROW(Transcription::c0(4), UnsupportedInput);
}
