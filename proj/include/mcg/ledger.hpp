#pragma once

// Replays the generation argument for Mod^+-(S_g), g = 3, 4, as a chain of
// facts. Each fact names the rule that produced it and its antecedents; a
// fact whose antecedent did not hold is poisoned rather than checked.
//
// Rules: R0 axiom, R1 closure under products/inverses/sigma-conjugation,
// R2 rewriting by a certified class identity, R3 transport of a twist
// difference along a member h with verified curve images, R4 trusted lemma.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcg/action.hpp"

namespace mcg {

enum class FactKind { Axiom, Membership, ClassIdentity, CurveIdentity, Disjointness, Property, TrustedLemma };
enum class FactStatus { Verified, Failed, Trusted, Poisoned };

inline const char* to_string(FactKind k) {
  switch (k) {
    case FactKind::Axiom: return "axiom";
    case FactKind::Membership: return "membership";
    case FactKind::ClassIdentity: return "class-identity";
    case FactKind::CurveIdentity: return "curve-identity";
    case FactKind::Disjointness: return "disjointness";
    case FactKind::Property: return "property";
    default: return "trusted-lemma";
  }
}

inline const char* to_string(FactStatus s) {
  switch (s) {
    case FactStatus::Verified: return "verified";
    case FactStatus::Failed: return "failed";
    case FactStatus::Trusted: return "trusted";
    default: return "poisoned";
  }
}

struct LedgerFact {
  std::string id;
  FactKind kind = FactKind::Membership;
  std::string statement;
  std::string anchor;
  std::string rule;
  std::vector<std::string> antecedents;
  FactStatus status = FactStatus::Poisoned;
  std::string witness;
  // Outcome of the fact's own check; unset when it was never run.
  std::optional<bool> own_ok;
  double runtime_ms = 0;
};

/// A reading or notation discrepancy found during the replay.
struct LedgerNote {
  std::string id;
  std::string text;
};

struct LedgerReport {
  int genus = 0;
  int handedness = kTwistHandedness;
  std::vector<LedgerFact> facts;
  std::vector<LedgerNote> notes;
  // Reading of the step-1 identity certified uniformly in k.
  std::string step1_reading;
  // k for which the literal right-hand side B_0 B_k^-1 also holds.
  std::vector<int> step1_literal_holds;

  const LedgerFact* find(const std::string& id) const {
    for (const auto& f : facts)
      if (f.id == id) return &f;
    return nullptr;
  }

  const LedgerFact& conclusion() const { return facts.back(); }

  bool concluded() const {
    for (const auto& f : facts)
      if (f.status == FactStatus::Failed || f.status == FactStatus::Poisoned) return false;
    return true;
  }

  /// Failed facts all of whose antecedents held: the minimal failing frontier.
  std::vector<std::string> failing_frontier() const {
    std::vector<std::string> out;
    for (const auto& f : facts)
      if (f.status == FactStatus::Failed) out.push_back(f.id);
    return out;
  }

  /// The same ledger with one fact removed (treated as failed) and every
  /// consequence poisoned. No check is re-run.
  LedgerReport without(const std::string& id) const {
    LedgerReport r = *this;
    std::map<std::string, FactStatus> st;
    for (auto& f : r.facts) {
      bool poisoned = false;
      for (const auto& a : f.antecedents) {
        auto it = st.find(a);
        if (it == st.end() || it->second == FactStatus::Failed || it->second == FactStatus::Poisoned)
          poisoned = true;
      }
      if (f.id == id) {
        f.status = FactStatus::Failed;
        f.witness = "removed by ablation";
      } else if (poisoned) {
        f.status = FactStatus::Poisoned;
      }
      st[f.id] = f.status;
    }
    return r;
  }
};

struct ReplayOptions {
  int handedness = kTwistHandedness;
};

namespace detail {

struct CheckResult {
  bool ok = true;
  std::string witness;
};

class LedgerBuilder {
 public:
  explicit LedgerBuilder(const std::string& prefix) : prefix_(prefix) {}

  std::string add(const std::string& id, FactKind kind, const std::string& rule,
                         const std::string& statement, const std::string& anchor,
                         std::vector<std::string> antecedents, const std::function<CheckResult()>& check) {
    LedgerFact f;
    f.id = prefix_ + id;
    f.kind = kind;
    f.rule = rule;
    f.statement = statement;
    f.anchor = anchor;
    f.antecedents = std::move(antecedents);
    for (const auto& a : f.antecedents)
      if (!seen_.count(a)) throw InvalidInput("ledger fact " + f.id + " cites unknown antecedent " + a);
    bool poisoned = false;
    for (const auto& a : f.antecedents) {
      FactStatus s = status_.at(a);
      if (s == FactStatus::Failed || s == FactStatus::Poisoned) poisoned = true;
    }
    if (poisoned) {
      f.status = FactStatus::Poisoned;
    } else {
      auto t0 = std::chrono::steady_clock::now();
      CheckResult r;
      try {
        r = check();
      } catch (const std::exception& e) {
        r = {false, std::string("error: ") + e.what()};
      }
      f.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      f.own_ok = r.ok;
      f.witness = r.witness;
      if (!r.ok)
        f.status = FactStatus::Failed;
      else
        f.status = kind == FactKind::TrustedLemma ? FactStatus::Trusted : FactStatus::Verified;
    }
    seen_.insert(f.id);
    status_[f.id] = f.status;
    facts_.push_back(std::move(f));
    return facts_.back().id;
  }

  std::string id(const std::string& local) const { return prefix_ + local; }
  std::vector<LedgerFact> take() { return std::move(facts_); }

 private:
  std::string prefix_;
  std::vector<LedgerFact> facts_;
  std::set<std::string> seen_;
  std::map<std::string, FactStatus> status_;
};

inline CheckResult ok(std::string w = {}) { return {true, std::move(w)}; }

inline CheckResult check_disjoint(const CurveClass& x, const CurveClass& y) {
  int i = geometric_intersection(x, y);
  return {i == 0, "i = " + std::to_string(i)};
}

inline CheckResult check_image(const MappingWord& w, const CurveClass& x, const CurveClass& y) {
  CurveClass z = apply(w, x);
  if (z == y) return ok();
  auto name = surface(w.genus()).name_of(z);
  return {false, "image is " + (name ? *name : "[" + z.to_string() + "]")};
}

inline CheckResult check_classes(const MappingWord& v, const MappingWord& w) {
  MappingClassCertificate c = is_identity(v * w.inverse());
  if (c.verdict == Verdict::Identity) return ok();
  return {false, std::string(to_string(c.verdict)) + ": " + c.witness};
}

/// T_x^eps T_y^-eps.
inline MappingWord difference(const CurveClass& x, const CurveClass& y, int eps = 1) {
  return MappingWord::twist_about(x, eps) * MappingWord::twist_about(y, -eps);
}

/// Engine check of R3: h T_x T_y^-1 h^-1 = T_{x'}^eps T_{y'}^-eps.
inline CheckResult check_transport(const MappingWord& h, const CurveClass& x, const CurveClass& y,
                                   const CurveClass& x2, const CurveClass& y2) {
  const int eps = h.orientation_character();
  return check_classes(h * difference(x, y) * h.inverse(), difference(x2, y2, eps));
}

}  // namespace detail

/// Replays the four-step argument at genus 3 or 4.
inline LedgerReport replay_theorem31(int genus, const ReplayOptions& options = {}) {
  if (genus != 3 && genus != 4) {
    throw UnsupportedGenus("the generation argument is only replayed for genus 3 and 4");
  }
  using detail::CheckResult;
  using detail::ok;
  ScopedHandedness pin(options.handedness);
  const Surface& s = surface(genus);
  const int n = s.sides();
  const std::string G = "G" + std::to_string(genus) + ".";
  detail::LedgerBuilder L(G);
  LedgerReport report;
  report.genus = genus;
  report.handedness = options.handedness;
  auto W = [&](const std::string& text) { return parse_word(genus, text); };
  auto B = [&](int i) { return std::string("B") + std::to_string(i); };
  const std::vector<std::string> identity_lemmas = {G + "TL.alexander", G + "TL.torsion"};
  auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::string gs = std::to_string(genus);

  // Axioms and trusted lemmas.
  L.add("AX.sigma", FactKind::Axiom, "R0", "S in G", "definition of G", {}, [] { return ok(); });
  L.add("AX.tauB0", FactKind::Axiom, "R0", "T*B0 in G", "definition of G", {}, [] { return ok(); });
  L.add("TL.humphries", FactKind::TrustedLemma, "R4",
        "Mod(S_g) is generated by A1, ..., A" + std::to_string(2 * genus) + " and B0", "Humphries generators",
        {}, [] { return ok("cited"); });
  L.add("TL.index2", FactKind::TrustedLemma, "R4", "Mod(S_g) has index 2 in Mod+-(S_g)", "step 4", {},
        [] { return ok("cited"); });
  L.add("TL.alexander", FactKind::TrustedLemma, "R4",
        "a class fixing every curve of a filling system has finite order", "identity certificates", {},
        [] { return ok("cited"); });
  L.add("TL.torsion", FactKind::TrustedLemma, "R4",
        "a finite-order orientation-preserving class acting trivially on H_1 is trivial",
        "identity certificates", {}, [] { return ok("cited"); });

  // Named-curve bookkeeping used by every sigma-conjugation.
  L.add("EQ.sigma", FactKind::CurveIdentity, "R2", "S(a_i) = a_{i+1}, S(b_i) = b_{i+1}, S(c_i) = c_{i+1}",
        "b_i = sigma^i(b_0), c_i = sigma^i(c_0)", {}, [&]() -> CheckResult {
          for (int i = 0; i < n; ++i) {
            if (rotate(s.a(i), 1) != s.a(i + 1)) return {false, "S(a" + std::to_string(i) + ") != a" + std::to_string(i + 1)};
            if (rotate(s.b(i), 1) != s.b(i + 1)) return {false, "S(b" + std::to_string(i) + ") != b" + std::to_string(i + 1)};
            if (s.has_c() && rotate(s.c(i), 1) != s.c(i + 1))
              return {false, "S(c" + std::to_string(i) + ") != c" + std::to_string(i + 1)};
          }
          return ok();
        });
  L.add("EQ.tau", FactKind::CurveIdentity, "R2", "T(b0) = b0", "tau(b_0) = b_0", {},
        [&] { return detail::check_image(W("T"), s.b(0), s.b(0)); });

  // Step 1.
  std::vector<std::string> step1_ids;
  {
    std::vector<bool> right(n, false), literal(n, false);
    for (int k = 1; k < n; ++k) {
      const std::string sk = "S^" + std::to_string(k);
      MappingWord lhs = W(sk + "*T*B0*" + sk + "*T*B0");
      right[k] = classes_equal(lhs, W(B(k) + "^-1*B0"));
      literal[k] = classes_equal(lhs, W("B0*" + B(k) + "^-1"));
      if (literal[k]) report.step1_literal_holds.push_back(k);
    }
    bool all_right = std::all_of(right.begin() + 1, right.end(), [](bool b) { return b; });
    bool all_literal = std::all_of(literal.begin() + 1, literal.end(), [](bool b) { return b; });
    const bool use_right = all_right || !all_literal;
    report.step1_reading = use_right ? "B_k^-1*B_0" : "B_0*B_k^-1";
    for (int k = 1; k < n; ++k) {
      const std::string sk = "S^" + std::to_string(k);
      const std::string rhs = use_right ? B(k) + "^-1*B0" : "B0*" + B(k) + "^-1";
      const bool holds = use_right ? right[k] : literal[k];
      step1_ids.push_back(L.add("S1.identity.k" + std::to_string(k), FactKind::ClassIdentity, "R2",
                                sk + "*T*B0*" + sk + "*T*B0 = " + rhs, "step 1",
                                with({G + "EQ.tau"}, identity_lemmas), [holds] {
                                  return holds ? ok() : CheckResult{false, "class identity fails"};
                                }));
    }
    if (!all_literal) {
      std::string ks;
      for (int k : report.step1_literal_holds) ks += (ks.empty() ? "" : ",") + std::to_string(k);
      report.notes.push_back({G + "S1.reading", "step 1: the product S^k*T*B0*S^k*T*B0 equals " + report.step1_reading +
                             " for every k; the right-hand side as printed (B0*Bk^-1) holds only for k in {" +
                             ks + "}, the k with i(b0,bk) = 0"});
    }
  }
  L.add("S1.member.left", FactKind::Membership, "R1", "B_j^-1*B_i in G for all i, j", "step 1",
        with({G + "AX.sigma", G + "AX.tauB0", G + "EQ.sigma"}, step1_ids),
        [] { return ok("sigma^m-conjugates of the step-1 products"); });
  // Bridge to the B_i B_j^-1 form: disjoint b-curves commute.
  std::vector<std::string> bridge;
  std::vector<int> steps;
  for (int d = 1; d < n; ++d) {
    if (geometric_intersection(s.b(0), s.b(d)) != 0) continue;
    steps.push_back(d);
    std::string dj = L.add("S1.disjoint.b0-b" + std::to_string(d), FactKind::Disjointness, "R2",
                           "i(b0, b" + std::to_string(d) + ") = 0", "b-b intersection table", {},
                           [&s, d] { return detail::check_disjoint(s.b(0), s.b(d)); });
    bridge.push_back(L.add("S1.commute.b" + std::to_string(d), FactKind::ClassIdentity, "R2",
                           B(d) + "^-1*B0 = B0*" + B(d) + "^-1", "step 1", with({dj}, identity_lemmas),
                           [&, d] { return detail::check_classes(W(B(d) + "^-1*B0"), W("B0*" + B(d) + "^-1")); }));
  }
  const std::string S1 = L.add("S1.member", FactKind::Membership, "R1", "B_i*B_j^-1 in G for all i, j", "step 1",
                               with({G + "S1.member.left", G + "EQ.sigma"}, bridge), [n, steps]() -> CheckResult {
                                 int g = n;
                                 for (int d : steps) g = std::gcd(g, d);
                                 if (g != 1) return {false, "commuting steps generate only multiples of " + std::to_string(g)};
                                 return ok("commuting steps generate Z/" + std::to_string(n));
                               });

  // Step 2.
  std::string S2;
  std::string S2BC;  // genus 3: B_iC_j^-1 family
  if (genus == 4) {
    auto d1 = L.add("S2.disjoint.b11-b0", FactKind::Disjointness, "R2", "i(b11, b0) = 0", "step 2 (g=4)", {},
                    [&] { return detail::check_disjoint(s.b(11), s.b(0)); });
    auto d2 = L.add("S2.disjoint.b11-b6", FactKind::Disjointness, "R2", "i(b11, b6) = 0", "step 2 (g=4)", {},
                    [&] { return detail::check_disjoint(s.b(11), s.b(6)); });
    const CurveClass y1 = apply(W("B6^-1"), s.b(0));
    auto c1 = L.add("S2.curve.h1-b11", FactKind::CurveIdentity, "R2", "B11*B6^-1(b11) = b11", "step 2 (g=4)", {d2},
                    [&] { return detail::check_image(W("B11*B6^-1"), s.b(11), s.b(11)); });
    auto c2 = L.add("S2.curve.h1-b0", FactKind::CurveIdentity, "R2", "B11*B6^-1(b0) = B6^-1(b0)", "step 2 (g=4)",
                    {d1, d2}, [&] { return detail::check_image(W("B11*B6^-1"), s.b(0), y1); });
    auto t1 = L.add("S2.transport.B11-y1", FactKind::Membership, "R3", "B11*X[B6^-1(b0)]^-1 in G", "step 2 (g=4)",
                    {S1, c1, c2},
                    [&] { return detail::check_transport(W("B11*B6^-1"), s.b(11), s.b(0), s.b(11), y1); });
    auto m1 = L.add("S2.member.B5-y1", FactKind::Membership, "R1", "B5*X[B6^-1(b0)]^-1 = (B5*B11^-1)(B11*X[B6^-1(b0)]^-1) in G",
                    "step 2 (g=4)", {S1, t1}, [] { return ok(); });
    auto d3 = L.add("S2.disjoint.b1-b5", FactKind::Disjointness, "R2", "i(b1, b5) = 0", "step 2 (g=4)", {},
                    [&] { return detail::check_disjoint(s.b(1), s.b(5)); });
    auto a5 = L.add("S2.curve.a5", FactKind::CurveIdentity, "R2", "B1*B5^-1*B6^-1(b0) = a5", "step 2 (g=4)", {},
                    [&] { return detail::check_image(W("B1*B5^-1*B6^-1"), s.b(0), s.a(5)); });
    auto c3 = L.add("S2.curve.h2-b5", FactKind::CurveIdentity, "R2", "B1*B5^-1(b5) = b5", "step 2 (g=4)", {d3},
                    [&] { return detail::check_image(W("B1*B5^-1"), s.b(5), s.b(5)); });
    auto c4 = L.add("S2.curve.h2-y1", FactKind::CurveIdentity, "R2", "B1*B5^-1(B6^-1(b0)) = a5", "step 2 (g=4)", {a5},
                    [&] { return detail::check_image(W("B1*B5^-1"), y1, s.a(5)); });
    auto t2 = L.add("S2.transport.B5A5", FactKind::Membership, "R3", "B5*A5^-1 in G", "step 2 (g=4)", {S1, m1, c3, c4},
                    [&] { return detail::check_transport(W("B1*B5^-1"), s.b(5), y1, s.b(5), s.a(5)); });
    S2 = L.add("S2.member", FactKind::Membership, "R1", "B_i*A_j^-1 in G for all i, j", "step 2 (g=4)",
               {t2, S1, G + "EQ.sigma", G + "AX.sigma"}, [] { return ok("sigma-conjugates times B_i*B_j^-1"); });
  } else {
    auto d1 = L.add("S2.disjoint.b9-b0", FactKind::Disjointness, "R2", "i(b9, b0) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.b(9), s.b(0)); });
    auto d2 = L.add("S2.disjoint.b9-b4", FactKind::Disjointness, "R2", "i(b9, b4) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.b(9), s.b(4)); });
    const CurveClass y0 = apply(W("B4^-1"), s.b(0));
    auto c1 = L.add("S2.curve.h1-b9", FactKind::CurveIdentity, "R2", "B9*B4^-1(b9) = b9", "step 2 (g=3)", {d2},
                    [&] { return detail::check_image(W("B9*B4^-1"), s.b(9), s.b(9)); });
    auto c2 = L.add("S2.curve.h1-b0", FactKind::CurveIdentity, "R2", "B9*B4^-1(b0) = B4^-1(b0)", "step 2 (g=3)",
                    {d1, d2}, [&] { return detail::check_image(W("B9*B4^-1"), s.b(0), y0); });
    auto c0 = L.add("S2.curve.c0", FactKind::CurveIdentity, "R2", "B4^-1(b0) = c0", "step 2 (g=3)", {},
                    [&] { return detail::check_image(W("B4^-1"), s.b(0), s.c(0)); });
    report.notes.push_back(
        {G + "S2.typo.c0", "step 2 (g=3): the pair (b9, b0) is carried to (b9, B4^-1(b0)), which equals (b9, c0); the text writes "
        "B4^-1(c0) in that place, read here as B4^-1(b0)"});
    auto t1 = L.add("S2.transport.B9C0", FactKind::Membership, "R3", "B9*C0^-1 in G", "step 2 (g=3)",
                    {S1, c1, c2, c0},
                    [&] { return detail::check_transport(W("B9*B4^-1"), s.b(9), s.b(0), s.b(9), s.c(0)); });
    S2BC = L.add("S2.member.BC", FactKind::Membership, "R1",
                 "B_i*C_j^-1, C_i*B_j^-1, C_i*C_j^-1 in G for all i, j", "step 2 (g=3)",
                 {t1, S1, G + "EQ.sigma", G + "AX.sigma"}, [] { return ok(); });
    auto d3 = L.add("S2.disjoint.c0-b1", FactKind::Disjointness, "R2", "i(c0, b1) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(0), s.b(1)); });
    auto d4 = L.add("S2.disjoint.c0-b2", FactKind::Disjointness, "R2", "i(c0, b2) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(0), s.b(2)); });
    const CurveClass y1 = apply(W("B2"), s.b(1));
    auto c3 = L.add("S2.curve.h2-c0", FactKind::CurveIdentity, "R2", "B2*C0^-1(c0) = c0", "step 2 (g=3)", {d4},
                    [&] { return detail::check_image(W("B2*C0^-1"), s.c(0), s.c(0)); });
    auto c4 = L.add("S2.curve.h2-b1", FactKind::CurveIdentity, "R2", "B2*C0^-1(b1) = B2(b1)", "step 2 (g=3)", {d3},
                    [&] { return detail::check_image(W("B2*C0^-1"), s.b(1), y1); });
    auto t2 = L.add("S2.transport.C0-y1", FactKind::Membership, "R3", "C0*X[B2(b1)]^-1 in G", "step 2 (g=3)",
                    {S2BC, c3, c4},
                    [&] { return detail::check_transport(W("B2*C0^-1"), s.c(0), s.b(1), s.c(0), y1); });
    auto m1 = L.add("S2.member.C4-y1", FactKind::Membership, "R1", "C4*X[B2(b1)]^-1 = (C4*C0^-1)(C0*X[B2(b1)]^-1) in G",
                    "step 2 (g=3)", {S2BC, t2}, [] { return ok(); });
    auto d5 = L.add("S2.disjoint.c4-b6", FactKind::Disjointness, "R2", "i(c4, b6) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(4), s.b(6)); });
    auto d6 = L.add("S2.disjoint.c4-y1", FactKind::Disjointness, "R2", "i(c4, B2(b1)) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(4), y1); });
    const CurveClass y2 = apply(W("B6^-1"), y1);
    auto c5 = L.add("S2.curve.h3-c4", FactKind::CurveIdentity, "R2", "C4*B6^-1(c4) = c4", "step 2 (g=3)", {d5},
                    [&] { return detail::check_image(W("C4*B6^-1"), s.c(4), s.c(4)); });
    auto c6 = L.add("S2.curve.h3-y1", FactKind::CurveIdentity, "R2", "C4*B6^-1(B2(b1)) = B6^-1*B2(b1)",
                    "step 2 (g=3)", {d6}, [&] { return detail::check_image(W("C4*B6^-1"), y1, y2); });
    auto t3 = L.add("S2.transport.C4-y2", FactKind::Membership, "R3", "C4*X[B6^-1*B2(b1)]^-1 in G", "step 2 (g=3)",
                    {S2BC, m1, c5, c6},
                    [&] { return detail::check_transport(W("C4*B6^-1"), s.c(4), y1, s.c(4), y2); });
    report.notes.push_back(
        {G + "S2.shortcut.c4", "step 2 (g=3): transport along C4*B6^-1 yields C4*X[B6^-1*B2(b1)]^-1; the text names the C0 version, "
        "which follows from it by multiplying with C0*C4^-1"});
    auto d7 = L.add("S2.disjoint.c4-b5", FactKind::Disjointness, "R2", "i(c4, b5) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(4), s.b(5)); });
    auto d8 = L.add("S2.disjoint.c4-y2", FactKind::Disjointness, "R2", "i(c4, B6^-1*B2(b1)) = 0", "step 2 (g=3)", {},
                    [&] { return detail::check_disjoint(s.c(4), y2); });
    const CurveClass y3 = apply(W("B5^-1"), y2);
    auto c7 = L.add("S2.curve.h4-c4", FactKind::CurveIdentity, "R2", "C4*B5^-1(c4) = c4", "step 2 (g=3)", {d7},
                    [&] { return detail::check_image(W("C4*B5^-1"), s.c(4), s.c(4)); });
    auto c8 = L.add("S2.curve.h4-y2", FactKind::CurveIdentity, "R2", "C4*B5^-1(B6^-1*B2(b1)) = B5^-1*B6^-1*B2(b1)",
                    "step 2 (g=3)", {d8}, [&] { return detail::check_image(W("C4*B5^-1"), y2, y3); });
    auto t4 = L.add("S2.transport.C4-y3", FactKind::Membership, "R3", "C4*X[B5^-1*B6^-1*B2(b1)]^-1 in G",
                    "step 2 (g=3)", {S2BC, t3, c7, c8},
                    [&] { return detail::check_transport(W("C4*B5^-1"), s.c(4), y2, s.c(4), y3); });
    auto a2 = L.add("S2.curve.a2", FactKind::CurveIdentity, "R2", "B5^-1*B6^-1*B2(b1) = a2", "step 2 (g=3)", {},
                    [&] { return detail::check_image(W("B5^-1*B6^-1*B2"), s.b(1), s.a(2)); });
    auto m2 = L.add("S2.member.C4A2", FactKind::Membership, "R2", "C4*A2^-1 in G", "step 2 (g=3)", {t4, a2},
                    [&]() -> CheckResult {
                      if (y3 != s.a(2)) return {false, "twist curve differs from a2"};
                      return ok("same twist curve");
                    });
    S2 = L.add("S2.member", FactKind::Membership, "R1", "C_j*A_k^-1, B_i*A_k^-1 in G for all i, j, k",
               "step 2 (g=3)", {m2, S2BC, G + "EQ.sigma", G + "AX.sigma"}, [] { return ok(); });
  }

  // Step 3.
  const auto& e = s.e();
  const auto& f = s.f();
  auto fdef = L.add("S3.curve.f", FactKind::CurveIdentity, "R2", "f = B3^-1*A6*A5*A4(b0)", "step 3", {},
                    [&] { return detail::check_image(W("B3^-1*A6*A5*A4"), s.b(0), f); });
  auto edef = L.add("S3.curve.e", FactKind::CurveIdentity, "R2", "e = A2*A1*A4^-1*B1(a5)", "step 3", {},
                    [&] { return detail::check_image(W("A2*A1*A4^-1*B1"), s.a(5), e); });
  auto disjoint = [&](const std::string& xn, const CurveClass& x, const std::string& yn, const CurveClass& y,
                      const std::string& anchor) {
    return L.add("S3.disjoint." + xn + "-" + yn, FactKind::Disjointness, "R2", "i(" + xn + ", " + yn + ") = 0",
                 anchor, {}, [&x, &y] { return detail::check_disjoint(x, y); });
  };
  std::string EF;
  if (genus == 4) {
    const std::string anchor = "step 3 (g=4)";
    std::vector<std::string> dj;
    for (auto [nm, x] : std::vector<std::pair<std::string, const CurveClass*>>{
             {"a4", &s.a(4)}, {"a5", &s.a(5)}, {"a6", &s.a(6)}, {"b3", &s.b(3)}})
      dj.push_back(disjoint("b7", s.b(7), nm, *x, anchor));
    const MappingWord h = W("B7*B3^-1*A6*B7^-1*A5*B7^-1*A4*B7^-1");
    auto c1 = L.add("S3.curve.h-b7", FactKind::CurveIdentity, "R2", "(B7*B3^-1)(A6*B7^-1)(A5*B7^-1)(A4*B7^-1)(b7) = b7",
                    anchor, dj, [&] { return detail::check_image(h, s.b(7), s.b(7)); });
    auto c2 = L.add("S3.curve.h-b0", FactKind::CurveIdentity, "R2", "(B7*B3^-1)(A6*B7^-1)(A5*B7^-1)(A4*B7^-1)(b0) = f",
                    anchor, with(dj, {fdef}), [&] { return detail::check_image(h, s.b(0), f); });
    auto t1 = L.add("S3.transport.B7F", FactKind::Membership, "R3", "B7*F^-1 in G", anchor, {S1, S2, c1, c2},
                    [&] { return detail::check_transport(h, s.b(7), s.b(0), s.b(7), f); });
    std::vector<std::string> dk;
    for (auto [nm, x] : std::vector<std::pair<std::string, const CurveClass*>>{
             {"a1", &s.a(1)}, {"a2", &s.a(2)}, {"a4", &s.a(4)}, {"a5", &s.a(5)}, {"b1", &s.b(1)}})
      dk.push_back(disjoint("b12", s.b(12), nm, *x, anchor));
    const MappingWord k = W("A2*B12^-1*A1*B12^-1*B12*A4^-1*B1*B12^-1");
    auto c3 = L.add("S3.curve.k-a5", FactKind::CurveIdentity, "R2",
                    "(A2*B12^-1)(A1*B12^-1)(B12*A4^-1)(B1*B12^-1)(a5) = e", anchor, with(dk, {edef}),
                    [&] { return detail::check_image(k, s.a(5), e); });
    auto c4 = L.add("S3.curve.k-b12", FactKind::CurveIdentity, "R2",
                    "(A2*B12^-1)(A1*B12^-1)(B12*A4^-1)(B1*B12^-1)(b12) = b12", anchor, dk,
                    [&] { return detail::check_image(k, s.b(12), s.b(12)); });
    auto t2 = L.add("S3.transport.EB12", FactKind::Membership, "R3", "E*B12^-1 in G", anchor, {S1, S2, c3, c4},
                    [&] { return detail::check_transport(k, s.a(5), s.b(12), e, s.b(12)); });
    EF = L.add("S3.member.EF", FactKind::Membership, "R1", "E*F^-1 = (E*B12^-1)(B12*B7^-1)(B7*F^-1) in G", anchor,
               {t2, S1, t1}, [] { return ok(); });
  } else {
    const std::string anchor = "step 3 (g=3)";
    std::vector<std::string> d6;
    for (auto [nm, x] : std::vector<std::pair<std::string, const CurveClass*>>{
             {"a4", &s.a(4)}, {"a5", &s.a(5)}, {"b0", &s.b(0)}})
      d6.push_back(disjoint("c6", s.c(6), nm, *x, anchor));
    const MappingWord h1 = W("A5*C6^-1*A4*C6^-1");
    const CurveClass z = apply(W("A5*A4"), s.b(0));
    auto c1 = L.add("S3.curve.h1-c6", FactKind::CurveIdentity, "R2", "(A5*C6^-1)(A4*C6^-1)(c6) = c6", anchor, d6,
                    [&] { return detail::check_image(h1, s.c(6), s.c(6)); });
    auto c2 = L.add("S3.curve.h1-b0", FactKind::CurveIdentity, "R2", "(A5*C6^-1)(A4*C6^-1)(b0) = A5*A4(b0)", anchor,
                    d6, [&] { return detail::check_image(h1, s.b(0), z); });
    auto t1 = L.add("S3.transport.C6-z", FactKind::Membership, "R3", "C6*X[A5*A4(b0)]^-1 in G", anchor,
                    {S2, S2BC, c1, c2}, [&] { return detail::check_transport(h1, s.c(6), s.b(0), s.c(6), z); });
    auto m1 = L.add("S3.member.B8-z", FactKind::Membership, "R1",
                    "B8*X[A5*A4(b0)]^-1 = (B8*C6^-1)(C6*X[A5*A4(b0)]^-1) in G", anchor, {S2BC, t1},
                    [] { return ok(); });
    std::vector<std::string> d8;
    for (auto [nm, x] : std::vector<std::pair<std::string, const CurveClass*>>{
             {"a6", &s.a(6)}, {"b3", &s.b(3)}, {"z", &z}})
      d8.push_back(disjoint("b8", s.b(8), nm, *x, anchor));
    auto cm = L.add("S3.commute.b8-a6", FactKind::ClassIdentity, "R2", "B8^-1*A6 = A6*B8^-1", anchor,
                    with({d8[0]}, identity_lemmas),
                    [&] { return detail::check_classes(W("B8^-1*A6"), W("A6*B8^-1")); });
    const MappingWord h2 = W("B8*B3^-1*B8^-1*A6");
    auto c3 = L.add("S3.curve.h2-b8", FactKind::CurveIdentity, "R2", "(B8*B3^-1)(B8^-1*A6)(b8) = b8", anchor, d8,
                    [&] { return detail::check_image(h2, s.b(8), s.b(8)); });
    auto c4 = L.add("S3.curve.h2-z", FactKind::CurveIdentity, "R2", "(B8*B3^-1)(B8^-1*A6)(A5*A4(b0)) = f", anchor,
                    with(d8, {fdef}), [&] { return detail::check_image(h2, z, f); });
    auto t2 = L.add("S3.transport.B8F", FactKind::Membership, "R3", "B8*F^-1 in G", anchor, {S1, S2, cm, m1, c3, c4},
                    [&] { return detail::check_transport(h2, s.b(8), z, s.b(8), f); });
    std::vector<std::string> dc;
    for (auto [nm, x] : std::vector<std::pair<std::string, const CurveClass*>>{
             {"a1", &s.a(1)}, {"a2", &s.a(2)}, {"b1", &s.b(1)}})
      dc.push_back(disjoint("c6", s.c(6), nm, *x, anchor));
    dc.push_back(d6[0]);
    dc.push_back(d6[1]);
    const MappingWord k = W("A2*C6^-1*A1*C6^-1*C6*A4^-1*B1*C6^-1");
    auto c5 = L.add("S3.curve.k-a5", FactKind::CurveIdentity, "R2",
                    "(A2*C6^-1)(A1*C6^-1)(C6*A4^-1)(B1*C6^-1)(a5) = e", anchor, with(dc, {edef}),
                    [&] { return detail::check_image(k, s.a(5), e); });
    auto c6 = L.add("S3.curve.k-c6", FactKind::CurveIdentity, "R2",
                    "(A2*C6^-1)(A1*C6^-1)(C6*A4^-1)(B1*C6^-1)(c6) = c6", anchor, dc,
                    [&] { return detail::check_image(k, s.c(6), s.c(6)); });
    auto t3 = L.add("S3.transport.EC6", FactKind::Membership, "R3", "E*C6^-1 in G", anchor, {S2, S2BC, c5, c6},
                    [&] { return detail::check_transport(k, s.a(5), s.c(6), e, s.c(6)); });
    EF = L.add("S3.member.EF", FactKind::Membership, "R1", "E*F^-1 = (E*C6^-1)(C6*B8^-1)(B8*F^-1) in G", anchor,
               {t3, S2BC, t2}, [] { return ok(); });
  }
  auto lantern = L.add("S3.lantern", FactKind::ClassIdentity, "R2", "B0*B2*E = A1*A3*A5*F", "lantern relation",
                       with({fdef, edef}, identity_lemmas),
                       [&] { return detail::check_classes(W("B0*B2*E"), W("A1*A3*A5*F")); });
  auto decomposition =
      L.add("S3.decomposition", FactKind::ClassIdentity, "R2", "A1 = (B0*A3^-1)(B2*A5^-1)(E*F^-1)", "lantern relation",
            with({lantern}, identity_lemmas),
            [&] { return detail::check_classes(W("A1"), W("B0*A3^-1*B2*A5^-1*E*F^-1")); });
  auto A1 = L.add("S3.member.A1", FactKind::Membership, "R2", "A1 in G", "step 3", {decomposition, S2, EF},
                  [] { return ok(); });
  auto S3 = L.add("S3.member", FactKind::Membership, "R1", "A_i in G for all i", "step 3",
                  {A1, G + "EQ.sigma", G + "AX.sigma"}, [] { return ok(); });

  // Step 4.
  auto b0 = L.add("S4.member.B0", FactKind::Membership, "R1", "B0 = (B0*A1^-1)*A1 in G", "step 4", {S2, S3},
                  [] { return ok(); });
  auto mod = L.add("S4.mod", FactKind::Membership, "R4", "Mod(S_" + gs + ") is contained in G", "step 4",
                   {G + "TL.humphries", S3, b0}, [] { return ok(); });
  auto rev = L.add("S4.orientation", FactKind::Property, "R2", "T*B0 reverses orientation", "step 4",
                   {G + "AX.tauB0"}, [&]() -> CheckResult {
                     int ch = homology_rep(W("T*B0")).character;
                     return {ch == -1, "character " + std::to_string(ch)};
                   });
  L.add("S4.conclusion", FactKind::Membership, "R4", "G = Mod+-(S_" + gs + ")", "step 4",
        {mod, rev, G + "TL.index2"}, [] { return ok(); });

  report.facts = L.take();
  return report;
}

inline nlohmann::json to_json(const LedgerFact& f) {
  return nlohmann::json{{"fact_id", f.id},           {"kind", to_string(f.kind)},
                        {"statement", f.statement},  {"paper_anchor", f.anchor},
                        {"rule", f.rule},            {"antecedents", f.antecedents},
                        {"status", to_string(f.status)}, {"witness", f.witness}};
}

inline nlohmann::json to_json(const LedgerReport& r) {
  nlohmann::json facts = nlohmann::json::array();
  for (const auto& f : r.facts) facts.push_back(to_json(f));
  return facts;
}

/// Golden text rendering: one line per fact.
inline std::string render(const LedgerReport& r) {
  std::string out;
  for (const auto& f : r.facts) {
    out += f.id + " [" + to_string(f.status) + "] " + f.rule + ": " + f.statement;
    if (!f.antecedents.empty()) {
      out += " <=";
      for (const auto& a : f.antecedents) out += " " + a;
    }
    if (!f.witness.empty()) out += " {" + f.witness + "}";
    out += "\n";
  }
  for (const auto& note : r.notes) out += "note " + note.id + ": " + note.text + "\n";
  return out;
}

}  // namespace mcg
