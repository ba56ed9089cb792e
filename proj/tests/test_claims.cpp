#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mcg/claims.hpp"

using namespace mcg::claims;

namespace {

struct Process {
  int status = -1;
  std::string out;
};

Process run_cli(const std::string& args) {
  Process p;
  const std::string cmd = std::string(MCGCHECK_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return p;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) p.out += buf.data();
  const int rc = pclose(pipe);
  p.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return p;
}

Json strip_timing(Json j) {
  for (auto& c : j["claims"]) c.erase("runtime_ms");
  return j;
}

}  // namespace

TEST(Glob, Matching) {
  EXPECT_TRUE(glob_match("G3.S2.*", "G3.S2.curve.c0"));
  EXPECT_FALSE(glob_match("G3.S2.*", "G4.S2.curve.a5"));
  EXPECT_TRUE(glob_match("*", "anything"));
  EXPECT_TRUE(glob_match("G?.TAB.bb.?", "G4.TAB.bb.2"));
  EXPECT_TRUE(glob_may_match_prefix("G3.S2.*", "G3.S"));
  EXPECT_FALSE(glob_may_match_prefix("G3.S2.*", "G3.TAB."));
  EXPECT_TRUE(glob_may_match_prefix("*lantern*", "G4.S"));
}

TEST(Run, FilterByGlob) {
  RunOptions o;
  o.selector = "G3.S2.*";
  o.genera = {3};
  const RunReport r = run(o);
  ASSERT_FALSE(r.claims.empty());
  for (const auto& c : r.claims) EXPECT_EQ(c.claim_id.rfind("G3.S2.", 0), 0u) << c.claim_id;
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Run, UnknownSelector) {
  RunOptions o;
  o.selector = "bogus.id";
  EXPECT_THROW(run(o), UnknownClaim);
}

TEST(Run, GenusOneOnly) {
  RunOptions o;
  o.genera = {1};
  const RunReport r = run(o);
  for (const auto& c : r.claims) EXPECT_EQ(c.genus, 1);
  EXPECT_EQ(r.count(Status::Flagged), 2);
  EXPECT_EQ(r.count(Status::Fail), 0);
}

TEST(Run, TableClaimsFlaggedOnlyForPeriodicFamilies) {
  RunOptions o;
  o.selector = "G?.TAB.*";
  o.genera = {3, 4};
  const RunReport r = run(o);
  for (const auto& c : r.claims) {
    const bool b_only = c.claim_id.find(".bb.") != std::string::npos || c.claim_id.ends_with(".simple");
    EXPECT_EQ(c.status, b_only ? Status::Pass : Status::Flagged) << c.claim_id;
    if (c.status == Status::Flagged) {
      EXPECT_EQ(c.witness["cyclic mod 2g+1"], "holds") << c.claim_id;
    }
  }
}

TEST(Cli, FullRunJsonDeterministicAndValid) {
  const std::string dir = ::testing::TempDir();
  const Process a = run_cli("run --json " + dir + "/a.json");
  const Process b = run_cli("run --json " + dir + "/b.json");
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(b.status, 0);
  Json ja = Json::parse(std::ifstream(dir + "/a.json"));
  Json jb = Json::parse(std::ifstream(dir + "/b.json"));
  EXPECT_EQ(strip_timing(ja).dump(), strip_timing(jb).dump());
  EXPECT_EQ(ja["summary"]["fail"], 0);

  // Text and JSON list the same claims.
  std::set<std::string> text_ids, json_ids;
  std::istringstream lines(a.out);
  for (std::string line; std::getline(lines, line);)
    if (line.size() > 8 && line[0] != ' ' && line.rfind("summary", 0) != 0)
      text_ids.insert(line.substr(8, line.find(' ', 8) - 8));
  std::set<std::string> unique;
  for (const auto& c : ja["claims"]) {
    json_ids.insert(c["claim_id"].get<std::string>());
    EXPECT_TRUE(unique.insert(c["claim_id"].get<std::string>()).second);
    for (const char* key : {"claim_id", "genus", "statement", "paper_anchor", "status", "witness", "runtime_ms"})
      EXPECT_TRUE(c.contains(key));
    if (c["status"] == "fail") {
      EXPECT_FALSE(c["witness"].is_null());
    }
  }
  EXPECT_EQ(text_ids, json_ids);
}

TEST(Cli, SchemaFileIsConsistent) {
  const Json schema = Json::parse(std::ifstream(std::string(MCG_SOURCE_DIR) + "/data/report_schema.json"));
  RunOptions o;
  o.genera = {1};
  const Json report = to_json(run(o));
  for (const auto& key : schema["required"]) EXPECT_TRUE(report.contains(key.get<std::string>())) << key;
  for (const auto& [key, value] : report.items()) EXPECT_TRUE(schema["properties"].contains(key)) << key;
  const auto& item = schema["properties"]["claims"]["items"];
  for (const auto& c : report["claims"]) {
    for (const auto& key : item["required"]) EXPECT_TRUE(c.contains(key.get<std::string>()));
    for (const auto& [key, value] : c.items()) EXPECT_TRUE(item["properties"].contains(key)) << key;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("run --claims bogus.id").status, 2);
  EXPECT_EQ(run_cli("run --genus 2").status, 2);
  EXPECT_EQ(run_cli("frobnicate").status, 2);
  EXPECT_EQ(run_cli("calc apply --genus 3 --word 'B4^-1*Q' --curve b0").status, 2);
  EXPECT_EQ(run_cli("calc apply --genus 4 --word 'C0' --curve b0").status, 2);
  const Process sel = run_cli("run --genus 3 --claims 'G3.S2.*'");
  EXPECT_EQ(sel.status, 0);
  EXPECT_NE(sel.out.find("G3.S2.curve.c0"), std::string::npos);
  EXPECT_EQ(sel.out.find("G3.S1."), std::string::npos);
}

TEST(Cli, Calculator) {
  EXPECT_EQ(run_cli("calc apply --genus 3 --word 'B4^-1' --curve b0").out, "c0\n");
  EXPECT_EQ(run_cli("calc apply --genus 4 --word 'B1*B5^-1*B6^-1' --curve b0").out, "a5\n");
  EXPECT_EQ(run_cli("calc intersect --genus 4 b0 b2").out, "2\n");
  EXPECT_EQ(run_cli("calc order --genus 3 --word S").out, "14\n");
  EXPECT_EQ(run_cli("calc order --genus 3 --word A1").out, "none\n");
  EXPECT_EQ(run_cli("calc nf 't t'").out.substr(0, 9), "identity\n");
  EXPECT_NE(run_cli("calc nf 'b a b t'").out.find("conjugate to: at"), std::string::npos);
}
