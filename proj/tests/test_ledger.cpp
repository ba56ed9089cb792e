#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mcg/ledger.hpp"

using namespace mcg;

namespace {

const LedgerReport& replay(int g) {
  static const LedgerReport r3 = replay_theorem31(3);
  static const LedgerReport r4 = replay_theorem31(4);
  return g == 3 ? r3 : r4;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

class Replay : public ::testing::TestWithParam<int> {};

TEST_P(Replay, Concludes) {
  const LedgerReport& r = replay(GetParam());
  EXPECT_TRUE(r.concluded());
  for (const auto& f : r.facts)
    EXPECT_TRUE(f.status == FactStatus::Verified || f.status == FactStatus::Trusted) << f.id << " " << f.witness;
  const LedgerFact* last = r.find("G" + std::to_string(GetParam()) + ".S4.conclusion");
  ASSERT_NE(last, nullptr);
  EXPECT_EQ(last->statement, "G = Mod+-(S_" + std::to_string(GetParam()) + ")");
  EXPECT_EQ(&r.facts.back(), last);
}

TEST_P(Replay, AcyclicWithGroundedLeaves) {
  const LedgerReport& r = replay(GetParam());
  std::set<std::string> seen;
  for (const auto& f : r.facts) {
    for (const auto& a : f.antecedents) EXPECT_TRUE(seen.count(a)) << f.id << " cites later fact " << a;
    if (f.antecedents.empty()) {
      EXPECT_TRUE(f.kind == FactKind::Axiom || f.kind == FactKind::TrustedLemma ||
                  f.kind == FactKind::CurveIdentity || f.kind == FactKind::Disjointness ||
                  f.kind == FactKind::ClassIdentity)
          << f.id;
    }
    EXPECT_TRUE(seen.insert(f.id).second) << "duplicate id " << f.id;
  }
}

TEST_P(Replay, StepOneUniformReading) {
  const LedgerReport& r = replay(GetParam());
  EXPECT_EQ(r.step1_reading, "B_k^-1*B_0");
  const std::vector<int> expected =
      GetParam() == 3 ? std::vector<int>{5, 7, 9} : std::vector<int>{4, 5, 7, 9, 11, 13, 14};
  EXPECT_EQ(r.step1_literal_holds, expected);
  // The literal reading holds exactly where b0 and bk are disjoint.
  const Surface& s = surface(GetParam());
  for (int k = 1; k < s.sides(); ++k) {
    const bool disjoint = geometric_intersection(s.b(0), s.b(k)) == 0;
    EXPECT_EQ(disjoint, std::count(expected.begin(), expected.end(), k) == 1) << k;
  }
}

TEST_P(Replay, AblationOfEveryCurveIdentityPoisonsConclusion) {
  const LedgerReport& r = replay(GetParam());
  int checked = 0;
  for (const auto& f : r.facts) {
    if (f.kind != FactKind::CurveIdentity) continue;
    ++checked;
    EXPECT_FALSE(r.without(f.id).concluded()) << f.id;
  }
  EXPECT_GT(checked, 5);
}

TEST_P(Replay, MatchesGolden) {
  const int g = GetParam();
  const std::string golden = slurp(std::string(MCG_SOURCE_DIR) + "/tests/golden/ledger_g" + std::to_string(g) + ".txt");
  EXPECT_EQ(render(replay(g)), golden);
  EXPECT_EQ(render(replay_theorem31(g)), golden);
}

TEST_P(Replay, JsonShape) {
  const auto j = to_json(replay(GetParam()));
  ASSERT_TRUE(j.is_array());
  for (const auto& f : j) {
    for (const char* key : {"fact_id", "kind", "statement", "paper_anchor", "rule", "antecedents", "status", "witness"})
      EXPECT_TRUE(f.contains(key)) << key;
  }
}

INSTANTIATE_TEST_SUITE_P(Genus, Replay, ::testing::Values(3, 4));

TEST(Ledger, DisjointnessClaims) {
  // Fourteen disjointness facts across the two genera, all with i = 0.
  int count = 0;
  for (int g : {3, 4})
    for (const auto& f : replay(g).facts)
      if (f.kind == FactKind::Disjointness) {
        ++count;
        EXPECT_EQ(f.status, FactStatus::Verified) << f.id;
      }
  EXPECT_GE(count, 14);
}

TEST(Ledger, FlippedHandednessPoisonsSteps3And4) {
  for (int g : {3, 4}) {
    const LedgerReport r = replay_theorem31(g, ReplayOptions{-kTwistHandedness});
    EXPECT_FALSE(r.concluded());
    const std::string G = "G" + std::to_string(g) + ".";
    const LedgerFact* lantern = r.find(G + "S3.lantern");
    ASSERT_NE(lantern, nullptr);
    EXPECT_EQ(lantern->status, FactStatus::Failed);
    for (const char* id : {"S3.member", "S4.member.B0", "S4.conclusion"}) {
      const LedgerFact* f = r.find(G + id);
      ASSERT_NE(f, nullptr) << id;
      EXPECT_EQ(f->status, FactStatus::Poisoned) << id;
    }
    EXPECT_FALSE(r.failing_frontier().empty());
  }
}

TEST(Ledger, NotesHaveIds) {
  const auto& notes = replay(3).notes;
  ASSERT_EQ(notes.size(), 3u);
  EXPECT_EQ(notes[0].id, "G3.S1.reading");
  EXPECT_EQ(replay(4).notes.size(), 1u);
}
