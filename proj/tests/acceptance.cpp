// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <iostream>

#include "mcg/claims.hpp"

using namespace mcg;
using claims::Status;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

const claims::ClaimRecord* find(const claims::RunReport& r, const std::string& id) {
  for (const auto& c : r.claims)
    if (c.claim_id == id) return &c;
  return nullptr;
}

bool passes(const claims::RunReport& r, const std::string& id) {
  const auto* c = find(r, id);
  return c && c->status == Status::Pass;
}

Criterion tables() {
  Criterion c;
  const auto t0 = Clock::now();
  claims::RunOptions o;
  o.selector = "G?.TAB.*";
  o.genera = {3, 4};
  const auto r = claims::run(o);
  int flagged = 0;
  for (const auto& x : r.claims) {
    c.require(x.status != Status::Fail, x.claim_id + " failed");
    if (x.status == Status::Flagged) {
      ++flagged;
      c.require(!x.witness.is_null(), x.claim_id + " flagged without witness");
    }
  }
  const double secs = seconds_since(t0);
  c.require(secs < 10, "took " + std::to_string(secs) + " s");
  if (c.ok)
    c.detail = std::to_string(r.claims.size()) + " table claims, " + std::to_string(flagged) +
               " flagged for index period, " + std::to_string(secs).substr(0, 4) + " s";
  return c;
}

Criterion torsion() {
  Criterion c;
  for (int g : {3, 4}) {
    auto W = [g](const std::string& t) { return parse_word(g, t); };
    const int n = 4 * g + 2;
    const std::string G = "g=" + std::to_string(g) + ": ";
    c.require(is_identity(W("S^" + std::to_string(n))).verdict == Verdict::Identity, G + "S^n not identity");
    c.require(is_identity(W("T*B0*T*B0")).verdict == Verdict::Identity, G + "(T*B0)^2 not identity");
    c.require(order_of(W("S"), 2 * n) == n, G + "order of S");
    c.require(order_of(W("T*B0"), 4) == 2, G + "order of T*B0");
    c.require(homology_rep(W("T*B0")).character == -1, G + "character of T*B0");
  }
  if (c.ok) c.detail = "g=3,4: S^(4g+2) = (T*B0)^2 = 1, orders 4g+2 and 2, character -1";
  return c;
}

Criterion curve_identities() {
  Criterion c;
  const Surface& s3 = surface(3);
  const Surface& s4 = surface(4);
  c.require(apply(parse_word(3, "B4^-1"), s3.b(0)) == s3.c(0), "B4^-1(b0) != c0");
  c.require(apply(parse_word(4, "B1*B5^-1*B6^-1"), s4.b(0)) == s4.a(5), "B1*B5^-1*B6^-1(b0) != a5");
  c.require(apply(parse_word(3, "B5^-1*B6^-1*B2"), s3.b(1)) == s3.a(2), "B5^-1*B6^-1*B2(b1) != a2");

  // Every disjointness used by steps 2 and 3, recomputed directly.
  const CurveClass y1 = apply(parse_word(3, "B2"), s3.b(1));
  const CurveClass y2 = apply(parse_word(3, "B6^-1*B2"), s3.b(1));
  const CurveClass z = apply(parse_word(3, "A5*A4"), s3.b(0));
  const std::vector<std::tuple<std::string, const CurveClass*, const CurveClass*>> pairs = {
      {"b9,b0", &s3.b(9), &s3.b(0)},   {"b9,b4", &s3.b(9), &s3.b(4)},   {"c0,b1", &s3.c(0), &s3.b(1)},
      {"c0,b2", &s3.c(0), &s3.b(2)},   {"c4,b6", &s3.c(4), &s3.b(6)},   {"c4,B2(b1)", &s3.c(4), &y1},
      {"c4,b5", &s3.c(4), &s3.b(5)},   {"c4,B6^-1B2(b1)", &s3.c(4), &y2},
      {"c6,a1", &s3.c(6), &s3.a(1)},   {"c6,a2", &s3.c(6), &s3.a(2)},   {"c6,a4", &s3.c(6), &s3.a(4)},
      {"c6,a5", &s3.c(6), &s3.a(5)},   {"c6,b0", &s3.c(6), &s3.b(0)},   {"c6,b1", &s3.c(6), &s3.b(1)},
      {"b8,a6", &s3.b(8), &s3.a(6)},   {"b8,b3", &s3.b(8), &s3.b(3)},   {"b8,A5A4(b0)", &s3.b(8), &z},
      {"b11,b0", &s4.b(11), &s4.b(0)}, {"b11,b6", &s4.b(11), &s4.b(6)}, {"b1,b5", &s4.b(1), &s4.b(5)},
      {"b7,a4", &s4.b(7), &s4.a(4)},   {"b7,a5", &s4.b(7), &s4.a(5)},   {"b7,a6", &s4.b(7), &s4.a(6)},
      {"b7,b3", &s4.b(7), &s4.b(3)},   {"b12,a1", &s4.b(12), &s4.a(1)}, {"b12,a2", &s4.b(12), &s4.a(2)},
      {"b12,a4", &s4.b(12), &s4.a(4)}, {"b12,a5", &s4.b(12), &s4.a(5)}, {"b12,b1", &s4.b(12), &s4.b(1)},
  };
  for (const auto& [name, x, y] : pairs) c.require(geometric_intersection(*x, *y) == 0, "i(" + name + ") != 0");

  int ledger_disjoint = 0;
  for (int g : {3, 4})
    for (const auto& f : replay_theorem31(g).facts)
      if (f.kind == FactKind::Disjointness && f.id.find(".S1.") == std::string::npos) {
        ++ledger_disjoint;
        c.require(f.status == FactStatus::Verified, f.id + " not verified");
      }
  c.require(ledger_disjoint >= 14, "only " + std::to_string(ledger_disjoint) + " ledger disjointness facts");
  if (c.ok)
    c.detail = "3 curve identities, " + std::to_string(pairs.size()) + " disjoint pairs, " +
               std::to_string(ledger_disjoint) + " ledger disjointness facts verified";
  return c;
}

Criterion lantern() {
  Criterion c;
  for (int g : {3, 4}) {
    auto W = [g](const std::string& t) { return parse_word(g, t); };
    const std::string G = "g=" + std::to_string(g) + ": ";
    c.require(classes_equal(W("B0*B2*E"), W("A1*A3*A5*F")), G + "lantern");
    c.require(classes_equal(W("A1"), W("B0*A3^-1*B2*A5^-1*E*F^-1")), G + "decomposition");
    c.require(apply(W("B3^-1*A6*A5*A4"), surface(g).b(0)) == surface(g).f(), G + "f formula");
    c.require(apply(W("A2*A1*A4^-1*B1"), surface(g).a(5)) == surface(g).e(), G + "e formula");
    ScopedHandedness flip(-kTwistHandedness);
    c.require(!classes_equal(W("B0*B2*E"), W("A1*A3*A5*F")), G + "lantern survives flipped handedness");
  }
  if (c.ok) c.detail = "lantern and decomposition hold at g=3,4; flipped handedness breaks the lantern";
  return c;
}

Criterion ledger() {
  Criterion c;
  for (int g : {3, 4}) {
    const LedgerReport r = replay_theorem31(g);
    const std::string G = "g=" + std::to_string(g) + ": ";
    for (const auto& f : r.facts)
      c.require(f.status == FactStatus::Verified || f.status == FactStatus::Trusted, G + f.id + " " + f.witness);
    c.require(r.concluded() && r.facts.back().statement == "G = Mod+-(S_" + std::to_string(g) + ")",
              G + "no conclusion");
    c.require(!r.step1_reading.empty(), G + "step 1 has no uniform reading");
    for (const auto& f : r.facts)
      if (f.kind == FactKind::CurveIdentity && f.status == FactStatus::Verified)
        c.require(!r.without(f.id).concluded(), G + "ablating " + f.id + " keeps the conclusion");
  }
  if (c.ok) c.detail = "both replays conclude; step 1 uniform as B_k^-1*B_0; every ablation poisons";
  return c;
}

Criterion batteries() {
  Criterion c;
  for (int g : {3, 4}) {
    const std::string G = "g=" + std::to_string(g) + ": ";
    c.require(props::named_pairs(g, 12, 8, 4).size() >= 20, G + "fewer than 20 named pairs");
    const auto check = [&](const props::BatteryResult& r, const std::string& name, int min_cases) {
      c.require(r.ok, G + name + ": " + r.witness);
      c.require(r.cases >= min_cases, G + name + " ran " + std::to_string(r.cases) + " cases");
    };
    check(props::quadratic_growth(g), "growth", 60);
    check(props::naturality(g, props::kDefaultSeed), "naturality", 10);
    check(props::homology_symplectic(g, props::kDefaultSeed), "symplectic", 10);
    check(props::tighten_oracle(g, props::kDefaultSeed), "tighten", 100);
  }
  if (c.ok) c.detail = "growth, naturality, symplectic and tighten batteries pass at g=3,4";
  return c;
}

Criterion genus_one() {
  Criterion c;
  const auto r = genus1::verify_theorem32();
  c.require(r.stages.size() == 5, "expected five stages");
  for (const auto& s : r.stages) c.require(s.passed, s.name + ": " + s.detail);
  c.require(genus1::quotient_table().size() == 12, "quotient table size");
  c.require(genus1::to_string(genus1::decompose_gl2z({1, 0, 1, 1})) == "S*T*S", "S*T*S");
  claims::RunOptions o;
  o.selector = "G1.GL2.*";
  o.genera = {1};
  const auto g1 = claims::run(o);
  c.require(passes(g1, "G1.GL2.roundtrip"), "round trip of 100 matrices");
  if (c.ok) c.detail = "five stages pass, 100 round trips exact, S*T*S recovered";
  return c;
}

Criterion determinism() {
  Criterion c;
  const auto t0 = Clock::now();
  auto strip = [](claims::Json j) {
    for (auto& x : j["claims"]) x.erase("runtime_ms");
    return j.dump();
  };
  const auto first = claims::run({});
  const double secs = seconds_since(t0);
  const auto second = claims::run({});
  c.require(strip(claims::to_json(first)) == strip(claims::to_json(second)), "two runs differ");
  c.require(first.exit_code() == 0, std::to_string(first.count(Status::Fail)) + " claims fail");
  c.require(secs < 60, "full run took " + std::to_string(secs) + " s");
  if (c.ok)
    c.detail = std::to_string(first.claims.size()) + " claims identical across runs, full run " +
               std::to_string(secs).substr(0, 4) + " s";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion (*)()>> criteria = {
      {"intersection tables", tables},      {"torsion identities", torsion},
      {"curve identities", curve_identities}, {"lantern and calibration", lantern},
      {"ledger replay", ledger},            {"property batteries", batteries},
      {"genus one", genus_one},             {"determinism and budget", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << c.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
