#pragma once

// The claim registry behind mcgcheck: every checkable statement as a record
// with a stable id, selected by glob and genus, evaluated in a fixed order.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcg/genus1.hpp"
#include "mcg/ledger.hpp"
#include "mcg/properties.hpp"
#include "mcg/tables.hpp"

namespace mcg::claims {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Flagged, Trusted };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Flagged: return "flagged";
    default: return "trusted";
  }
}

struct ClaimRecord {
  std::string claim_id;
  int genus = 0;
  std::string statement;
  std::string paper_anchor;
  Status status = Status::Fail;
  Json witness;  // null when there is nothing to show
  double runtime_ms = 0;
};

/// Selector matched no claim of the registry.
class UnknownClaim : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// ------------------------------------------------------------------ globs

/// Full match of `*` / `?` patterns.
inline bool glob_match(std::string_view p, std::string_view s) {
  std::size_t pi = 0, si = 0, star = std::string_view::npos, mark = 0;
  while (si < s.size()) {
    if (pi < p.size() && (p[pi] == '?' || p[pi] == s[si])) {
      ++pi;
      ++si;
    } else if (pi < p.size() && p[pi] == '*') {
      star = pi++;
      mark = si;
    } else if (star != std::string_view::npos) {
      pi = star + 1;
      si = ++mark;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '*') ++pi;
  return pi == p.size();
}

/// Whether some string starting with `prefix` can match the pattern.
inline bool glob_may_match_prefix(std::string_view p, std::string_view prefix) {
  if (prefix.empty()) return true;
  if (p.empty()) return false;
  if (p[0] == '*') return glob_may_match_prefix(p.substr(1), prefix) || glob_may_match_prefix(p, prefix.substr(1));
  if (p[0] == '?' || p[0] == prefix[0]) return glob_may_match_prefix(p.substr(1), prefix.substr(1));
  return false;
}

// --------------------------------------------------------------- producers

struct Outcome {
  Status status = Status::Fail;
  Json witness;
};

inline Outcome pass(Json w = nullptr) { return {Status::Pass, std::move(w)}; }
inline Outcome fail(Json w) { return {Status::Fail, std::move(w)}; }
inline Outcome verdict(bool ok, Json w) { return {ok ? Status::Pass : Status::Fail, std::move(w)}; }

class Sink {
 public:
  Sink(std::string selector, std::vector<ClaimRecord>& out) : selector_(std::move(selector)), out_(out) {}

  bool wants(const std::string& id) const { return glob_match(selector_, id); }

  /// Evaluates and records a claim if the selector asks for it.
  void claim(const std::string& id, int genus, const std::string& statement, const std::string& anchor,
             const std::function<Outcome()>& check) {
    if (!wants(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(Json{{"error", e.what()}});
    }
    if (o.status == Status::Fail && o.witness.is_null()) o.witness = Json{{"error", "check failed"}};
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back({id, genus, statement, anchor, o.status, std::move(o.witness), ms});
  }

  /// Records an already evaluated claim.
  void record(ClaimRecord r) {
    if (wants(r.claim_id)) out_.push_back(std::move(r));
  }

 private:
  std::string selector_;
  std::vector<ClaimRecord>& out_;
};

struct Producer {
  int genus = 0;
  std::vector<std::string> prefixes;  // every id it emits starts with one of these
  std::function<void(Sink&, std::uint64_t seed)> run;
};

namespace detail {

inline std::string G(int genus) { return "G" + std::to_string(genus) + "."; }

inline Json mismatch_json(const std::optional<RuleMismatch>& m) {
  if (!m) return "holds";
  return Json{{"j", m->j}, {"k", m->k}, {"computed", m->computed}};
}

inline void tables(Sink& sink, int g) {
  const Surface& s = surface(g);
  sink.claim(G(g) + "TAB.simple", g, "every named curve a_i, b_i" + std::string(s.has_c() ? ", c_i" : "") +
                                         " is simple",
             "named curves on the polygon", [&] {
               for (const auto& [name, x] : s.probes())
                 if (!x.is_simple()) return fail(Json{{"curve", name}, {"walk", x.to_string()}});
               return pass(Json{{"curves", s.probes().size()}});
             });
  std::map<std::string, FamilyTable> cache;
  for (const IntersectionRule& r : intersection_rules()) {
    if ((r.x == 'c' || r.y == 'c') && !s.has_c()) continue;
    const std::string id = G(g) + "TAB." + r.key();
    sink.claim(id, g, r.text(g), "intersection table, i(" + std::string(1, r.x) + "," + std::string(1, r.y) + ")",
               [&]() -> Outcome {
                 const std::string fam{r.x, r.y};
                 auto it = cache.find(fam);
                 if (it == cache.end()) it = cache.emplace(fam, family_table(s, r.x, r.y)).first;
                 const auto literal = check_rule(r, it->second, g, IndexReading::Literal);
                 const auto cyclic = check_rule(r, it->second, g, IndexReading::Cyclic);
                 const auto half = check_rule(r, it->second, g, IndexReading::HalfCyclic);
                 Json w{{"literal", mismatch_json(literal)},
                        {"cyclic mod 4g+2", mismatch_json(cyclic)},
                        {"cyclic mod 2g+1", mismatch_json(half)}};
                 if (!cyclic) return pass(w);
                 if (!half) {
                   w["note"] = "indices of a and c have period 2g+1; the rule holds with differences read mod 2g+1";
                   return {Status::Flagged, w};
                 }
                 return fail(w);
               });
  }
}

inline void torsion(Sink& sink, int g) {
  const Surface& s = surface(g);
  const int n = s.sides();
  const std::string ns = std::to_string(n);
  auto W = [g](const std::string& t) { return parse_word(g, t); };
  auto cert_json = [](const MappingClassCertificate& c) {
    return Json{{"verdict", to_string(c.verdict)}, {"probes", c.probes.size()}, {"witness", c.witness}};
  };
  sink.claim(G(g) + "TOR.sigma-power", g, "S^" + ns + " = 1", "rotation of the polygon", [&] {
    auto c = is_identity(W("S^" + ns));
    return verdict(c.verdict == Verdict::Identity, cert_json(c));
  });
  sink.claim(G(g) + "TOR.tauB0-square", g, "(T*B0)^2 = 1", "reflection fixing b0", [&] {
    auto c = is_identity(W("T*B0*T*B0"));
    return verdict(c.verdict == Verdict::Identity, cert_json(c));
  });
  sink.claim(G(g) + "TOR.order-sigma", g, "S has order " + ns, "rotation of the polygon", [&] {
    auto o = order_of(W("S"), 2 * n + 2);
    return verdict(o && *o == n, Json{{"order", o ? Json(*o) : Json(nullptr)}});
  });
  sink.claim(G(g) + "TOR.order-tauB0", g, "T*B0 has order 2", "reflection fixing b0", [&] {
    auto o = order_of(W("T*B0"), 4);
    return verdict(o && *o == 2, Json{{"order", o ? Json(*o) : Json(nullptr)}});
  });
  sink.claim(G(g) + "TOR.character", g, "T*B0 reverses orientation", "orientation reversing generator", [&] {
    const int ch = homology_rep(W("T*B0")).character;
    return verdict(ch == -1, Json{{"character", ch}});
  });
  sink.claim(G(g) + "TOR.sigma-moves", g, "S is not the identity: S(a1) = a2", "rotation of the polygon", [&] {
    auto c = is_identity(W("S"));
    return verdict(c.verdict == Verdict::NonIdentity && apply(W("S"), s.a(1)) == s.a(2), cert_json(c));
  });
  sink.claim(G(g) + "TOR.dihedral", g, "T S T S = 1 on darts, T(b0) = b0", "reflection fixing b0", [&] {
    const auto& sig = s.sigma();
    const auto& tau = s.tau();
    const bool ok = (tau * sig * tau * sig).is_identity() && relabel(s.b(0), tau) == s.b(0) &&
                    tau.orientation_character() == -1;
    return verdict(ok, Json{{"tau_axis", s.tau_axis()}, {"candidates", s.tau_candidates()}});
  });
}

inline Status from_fact(FactStatus f) {
  switch (f) {
    case FactStatus::Verified: return Status::Pass;
    case FactStatus::Trusted: return Status::Trusted;
    default: return Status::Fail;
  }
}

inline void ledger(Sink& sink, int g) {
  const LedgerReport report = replay_theorem31(g);
  for (const LedgerFact& f : report.facts) {
    Json w = Json{{"kind", to_string(f.kind)}, {"rule", f.rule}, {"antecedents", f.antecedents}};
    if (!f.witness.empty()) w["detail"] = f.witness;
    if (f.status == FactStatus::Poisoned) w["poisoned"] = true;
    sink.record({f.id, g, f.statement, f.anchor, from_fact(f.status), std::move(w), f.runtime_ms});
  }
  for (const LedgerNote& note : report.notes)
    sink.record({note.id, g, note.text, "proof text", Status::Flagged, Json{{"note", note.text}}, 0});
  sink.claim(G(g) + "LEDGER.conclusion", g, "the replay concludes G = Mod+-(S_" + std::to_string(g) + ")",
             "main generation result", [&] {
               return verdict(report.concluded(),
                              Json{{"facts", report.facts.size()}, {"frontier", report.failing_frontier()}});
             });
  sink.claim(G(g) + "LEDGER.step1-uniform", g, "step 1 holds for every k under one composition order",
             "step 1", [&] {
               return verdict(!report.step1_reading.empty(),
                              Json{{"reading", report.step1_reading},
                                   {"literal_holds_for_k", report.step1_literal_holds}});
             });
  sink.claim(G(g) + "LEDGER.ablation", g, "removing any verified curve identity poisons the conclusion",
             "proof chain", [&] {
               int checked = 0;
               for (const LedgerFact& f : report.facts) {
                 if (f.kind != FactKind::CurveIdentity || f.status != FactStatus::Verified) continue;
                 ++checked;
                 if (report.without(f.id).concluded()) return fail(Json{{"dead_antecedent", f.id}});
               }
               return verdict(checked > 0, Json{{"curve_identities", checked}});
             });
}

inline void calibration(Sink& sink, int g) {
  const Surface& s = surface(g);
  auto W = [g](const std::string& t) { return parse_word(g, t); };
  const int flipped = -kTwistHandedness;
  sink.claim(G(g) + "CAL.lantern", g, "B0*B2*E = A1*A3*A5*F at the calibrated handedness", "lantern relation",
             [&] {
               auto c = is_identity(W("B0*B2*E") * W("A1*A3*A5*F").inverse());
               return verdict(c.verdict == Verdict::Identity, Json{{"handedness", kTwistHandedness}});
             });
  sink.claim(G(g) + "CAL.lantern-flipped", g, "with the twist handedness flipped the lantern relation fails",
             "lantern relation", [&] {
               ScopedHandedness guard(flipped);
               auto c = is_identity(W("B0*B2*E") * W("A1*A3*A5*F").inverse());
               return verdict(c.verdict == Verdict::NonIdentity, Json{{"handedness", flipped},
                                                                      {"verdict", to_string(c.verdict)},
                                                                      {"witness", c.witness}});
             });
  if (s.has_c())
    sink.claim(G(g) + "CAL.c0-flipped", g, "with the twist handedness flipped B4^-1(b0) != c0", "curve c0", [&] {
      ScopedHandedness guard(flipped);
      const CurveClass y = apply(W("B4^-1"), s.b(0));
      return verdict(y != s.c(0), Json{{"image", y.to_string()}});
    });
  sink.claim(G(g) + "CAL.replay-flipped", g, "with the twist handedness flipped the replay does not conclude",
             "lantern relation", [&] {
               const LedgerReport r = replay_theorem31(g, ReplayOptions{flipped});
               const LedgerFact* lantern = r.find(G(g) + "S3.lantern");
               const bool lantern_failed = lantern && lantern->status == FactStatus::Failed;
               return verdict(!r.concluded() && lantern_failed, Json{{"frontier", r.failing_frontier()}});
             });
}

inline Json battery_json(const props::BatteryResult& r) {
  Json w{{"cases", r.cases}};
  if (!r.ok) w["counterexample"] = r.witness;
  return w;
}

inline void properties(Sink& sink, int g, std::uint64_t seed) {
  auto run = [&](const std::string& key, const std::string& statement, auto fn) {
    sink.claim(G(g) + "PROP." + key, g, statement, "property battery", [&] {
      const props::BatteryResult r = fn();
      return verdict(r.ok, battery_json(r));
    });
  };
  run("growth", "i(T_d^k(x), x) = k i(d, x)^2 for k = 1, 2, 3 on named pairs",
      [&] { return props::quadratic_growth(g); });
  run("naturality", "F T_d F^-1 = T_F(d)^eps(F) on random words of length <= 6",
      [&] { return props::naturality(g, seed); });
  run("symplectic", "homology_rep is multiplicative with M^T J M = eps J", [&] {
    return props::homology_symplectic(g, seed);
  });
  run("invariance", "i(F x, F y) = i(x, y) and F x simple for random F", [&] { return props::invariance(g, seed); });
  run("commutation", "twists about disjoint named curves commute", [&] { return props::commutation(g); });
  run("tighten", "tightening is idempotent and insensitive to spurs, rotation and reversal",
      [&] { return props::tighten_oracle(g, seed); });
}

inline void genus_one(Sink& sink, std::uint64_t seed) {
  using namespace mcg::genus1;
  struct StageClaim {
    std::string key, statement;
    std::function<Stage()> fn;
  };
  const std::vector<StageClaim> stages = {
      {"torsion-orders", "orders of the eight torsion representatives", stage_torsion_orders},
      {"quotient-table", "quotient table of twelve elements in S5", stage_quotient_table},
      {"generating-pairs", "exactly two torsion pairs generate the quotient",
       [] { return stage_generating_pairs(expected_generating_pairs()); }},
      {"order-two-preimages", "torsion lifts of a_1t_1, a_1^2t_1, b_1t_1 have order 2", stage_order_two_preimages},
      {"not-dihedral", "PGL(2,Z) is not dihedral", stage_not_dihedral},
  };
  for (const auto& st : stages)
    sink.claim("G1.STAGE." + st.key, 1, st.statement, "genus one", [&] {
      const Stage r = st.fn();
      return verdict(r.passed, Json{{"detail", r.detail}});
    });
  const std::vector<std::string> flags = normal_form_flags();
  const std::vector<std::string> flag_ids = {"G1.FLAG.type3-exponent", "G1.FLAG.leading-b"};
  for (std::size_t i = 0; i < flags.size() && i < flag_ids.size(); ++i)
    sink.record({flag_ids[i], 1, flags[i], "normal form types", Status::Flagged, Json{{"note", flags[i]}}, 0});
  sink.claim("G1.GL2.sts", 1, "S*T*S = [[1,0],[1,1]] and decompose_gl2z returns it", "generation of GL(2,Z)", [] {
    const Mat2 m{1, 0, 1, 1};
    const TSWord w = decompose_gl2z(m);
    return verdict(kS * kT * kS == m && genus1::to_string(w) == "S*T*S", Json{{"word", genus1::to_string(w)}});
  });
  sink.claim("G1.GL2.roundtrip", 1, "decompose_gl2z reproduces 100 random matrices exactly",
             "generation of GL(2,Z)", [seed] {
               std::mt19937_64 rng(seed ^ 0x676c32ULL);
               for (int i = 0; i < 100; ++i) {
                 Mat2 m = kIdentity;
                 const int len = props::draw(rng, 1, 30);
                 for (int j = 0; j < len; ++j) {
                   const int c = props::draw(rng, 0, 2);
                   m = m * (c == 0 ? kS : c == 1 ? kT : kT.inverse());
                 }
                 if (props::draw(rng, 0, 1)) m = -m;
                 const TSWord w = decompose_gl2z(m);
                 if (evaluate(w) != m) return fail(Json{{"matrix", m.to_string()}, {"word", genus1::to_string(w)}});
               }
               return pass(Json{{"matrices", 100}});
             });
  sink.claim("G1.NF.oracle", 1, "conjugacy reduction agrees with matrix orders on 2000 random words",
             "torsion classification", [seed] {
               std::mt19937_64 rng(seed ^ 0x6e66ULL);
               for (int i = 0; i < 2000; ++i) {
                 PresWord w;
                 const int len = props::draw(rng, 0, 14);
                 for (int j = 0; j < len; ++j) {
                   const int c = props::draw(rng, 0, 2);
                   w.push("abt"[c], c == 0 ? props::draw(rng, 1, 2) : 1);
                 }
                 const TorsionClass c = torsion_representative(w);
                 const auto o = pgl_order(to_matrix(w));
                 const bool ok = c == TorsionClass::Infinite
                                     ? !o
                                     : o && o == pgl_order(to_matrix(representative_word(c)));
                 if (!ok)
                   return fail(Json{{"word", w.to_string()}, {"class", genus1::to_string(c)},
                                    {"matrix_order", o ? Json(*o) : Json(nullptr)}});
               }
               return pass(Json{{"words", 2000}});
             });
}

}  // namespace detail

/// The full registry in report order.
inline std::vector<Producer> registry() {
  std::vector<Producer> out;
  out.push_back({1, {"G1."}, [](Sink& s, std::uint64_t seed) { detail::genus_one(s, seed); }});
  for (int g : {3, 4}) {
    const std::string G = detail::G(g);
    out.push_back({g, {G + "TAB."}, [g](Sink& s, std::uint64_t) { detail::tables(s, g); }});
    out.push_back({g, {G + "TOR."}, [g](Sink& s, std::uint64_t) { detail::torsion(s, g); }});
    out.push_back({g, {G + "AX.", G + "TL.", G + "EQ.", G + "S", G + "LEDGER."},
                   [g](Sink& s, std::uint64_t) { detail::ledger(s, g); }});
    out.push_back({g, {G + "CAL."}, [g](Sink& s, std::uint64_t) { detail::calibration(s, g); }});
    out.push_back({g, {G + "PROP."}, [g](Sink& s, std::uint64_t seed) { detail::properties(s, g, seed); }});
  }
  return out;
}

struct RunOptions {
  std::string selector = "*";
  std::vector<int> genera = {1, 3, 4};
  std::uint64_t seed = props::kDefaultSeed;
};

struct RunReport {
  RunOptions options;
  std::vector<ClaimRecord> claims;

  int count(Status s) const {
    int n = 0;
    for (const auto& c : claims) n += c.status == s;
    return n;
  }
  int exit_code() const { return count(Status::Fail) > 0 ? 1 : 0; }
};

/// Runs the selected claims. Throws UnknownClaim when nothing matches.
inline RunReport run(const RunOptions& options) {
  RunReport report{options, {}};
  const std::string sel = options.selector == "all" ? "*" : options.selector;
  Sink sink(sel, report.claims);
  for (const Producer& p : registry()) {
    if (std::find(options.genera.begin(), options.genera.end(), p.genus) == options.genera.end()) continue;
    bool may = false;
    for (const auto& prefix : p.prefixes) may = may || glob_may_match_prefix(sel, prefix);
    if (may) p.run(sink, options.seed);
  }
  if (report.claims.empty()) throw UnknownClaim("no claim matches '" + options.selector + "'");
  return report;
}

inline Json to_json(const ClaimRecord& c) {
  return Json{{"claim_id", c.claim_id},         {"genus", c.genus},   {"statement", c.statement},
              {"paper_anchor", c.paper_anchor}, {"status", to_string(c.status)}, {"witness", c.witness},
              {"runtime_ms", c.runtime_ms}};
}

inline Json to_json(const RunReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  Json genera = Json::array();
  for (int g : r.options.genera) genera.push_back(g);
  return Json{{"format", "mcgcheck-report/1"},
              {"selector", r.options.selector},
              {"genera", genera},
              {"seed", r.options.seed},
              {"twist_handedness", kTwistHandedness},
              {"summary",
               {{"pass", r.count(Status::Pass)},
                {"fail", r.count(Status::Fail)},
                {"flagged", r.count(Status::Flagged)},
                {"trusted", r.count(Status::Trusted)}}},
              {"claims", claims}};
}

/// Text rendering: one line per claim, flagged and failed claims with their
/// witness underneath.
inline std::string render_text(const RunReport& r) {
  std::string out;
  for (const auto& c : r.claims) {
    std::string tag = to_string(c.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    tag.resize(8, ' ');
    out += tag + c.claim_id + "  " + c.statement + "\n";
    if ((c.status == Status::Flagged || c.status == Status::Fail) && !c.witness.is_null())
      out += "        witness: " + c.witness.dump() + "\n";
  }
  out += "summary: " + std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) +
         " fail, " + std::to_string(r.count(Status::Flagged)) + " flagged, " +
         std::to_string(r.count(Status::Trusted)) + " trusted\n";
  return out;
}

}  // namespace mcg::claims
