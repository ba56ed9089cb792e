#pragma once

// Named curves, polygon symmetries and per-genus shared context.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mcg/curves.hpp"
#include "mcg/scheme.hpp"
#include "mcg/twist.hpp"

namespace mcg {

/// Hand transcription of the base curves as side-crossing sequences, valid
/// for every genus g >= 3 with h = 2g+1. a_1 cuts the two corners between
/// sides 1|2 and h|h+1; b_0 is the four-crossing curve meeting a_0 and a_4;
/// c_0 (genus 3 only) joins the midpoints of the sides 1 and 1+h.
/// data/transcriptions.txt carries the same table for g = 3, 4.
struct Transcription {
  static std::vector<int> a1(int genus) {
    const int h = 2 * genus + 1;
    return {2, h + 1};
  }
  static std::vector<int> b0(int genus) {
    const int h = 2 * genus + 1;
    return {1, h + 2, 3, h + 4};
  }
  static std::vector<int> c0(int genus) {
    if (genus != 3) {
      throw UnsupportedInput("curve family c is only transcribed for genus 3");
    }
    return {1};
  }
};

struct NamedCurveSpec {
  char family = 'a';  // one of a, b, c, e, f
  int index = 0;      // reduced mod 4g+2; ignored for e, f

  std::string name() const {
    if (family == 'e' || family == 'f') return std::string(1, family);
    return std::string(1, family) + std::to_string(index);
  }
};

/// Applies a polygon symmetry to a curve by relabelling its crossings.
inline CurveClass relabel(const CurveClass& x, const DartPermutation& p) {
  std::vector<int> w = x.walk();
  for (auto& s : w) s = p.map_side(s);
  return tighten(x.genus(), w);
}

inline CurveClass rotate(const CurveClass& x, int steps) {
  const int n = 4 * x.genus() + 2;
  std::vector<int> w = x.walk();
  for (auto& s : w) s = ((s + steps) % n + n) % n;
  return tighten(x.genus(), w);
}

/// Everything derived from the genus once: scheme, symmetries, named curves,
/// the probe family and the homology basis.
class Surface {
 public:
  explicit Surface(int genus) : scheme_(genus), sigma_(DartPermutation::rotation(scheme_)),
                                tau_(DartPermutation::identity(scheme_)) {
    const int n = scheme_.sides();
    CurveClass a1 = tighten(scheme_, Transcription::a1(genus));
    CurveClass b0 = tighten(scheme_, Transcription::b0(genus));
    for (int i = 0; i < n; ++i) {
      a_.push_back(rotate(a1, i - 1));
      b_.push_back(rotate(b0, i));
    }
    if (genus == 3) {
      CurveClass c0 = tighten(scheme_, Transcription::c0(genus));
      for (int i = 0; i < n; ++i) c_.push_back(rotate(c0, i));
    }
    // tau: a reflection of the polygon fixing b_0, calibrated so that
    // (tau B_0)^2 fixes every probe curve and every homology basis class.
    for (int i = 0; i < 2 * genus; ++i) basis_.push_back(basis_curve(genus, i));
    for (int axis = 0; axis < n; ++axis) {
      DartPermutation r = DartPermutation::reflection(scheme_, axis);
      if (relabel(b0, r) != b0) continue;
      tau_candidates_.push_back(axis);
      if (tau_axis_ < 0 && squares_to_identity(r, b0)) {
        tau_ = r;
        tau_axis_ = axis;
      }
    }
    if (tau_candidates_.empty()) throw TranscriptionError("no reflection of the polygon fixes b_0");
    if (tau_axis_ < 0) throw TranscriptionError("no reflection fixing b_0 satisfies (tau B_0)^2 = 1");
  }

  int genus() const noexcept { return scheme_.genus(); }
  int sides() const noexcept { return scheme_.sides(); }
  const PolygonScheme& scheme() const noexcept { return scheme_; }
  const DartPermutation& sigma() const noexcept { return sigma_; }
  const DartPermutation& tau() const noexcept { return tau_; }
  int tau_axis() const noexcept { return tau_axis_; }
  /// Axes of all reflections fixing b_0, before calibration.
  const std::vector<int>& tau_candidates() const noexcept { return tau_candidates_; }
  bool has_c() const noexcept { return !c_.empty(); }

  const CurveClass& a(int i) const { return a_[static_cast<std::size_t>(scheme_.mod(i))]; }
  const CurveClass& b(int i) const { return b_[static_cast<std::size_t>(scheme_.mod(i))]; }
  const CurveClass& c(int i) const {
    if (c_.empty()) {
      throw UnsupportedInput("curve family c is not defined at genus " + std::to_string(genus()));
    }
    return c_[static_cast<std::size_t>(scheme_.mod(i))];
  }

  /// f := B_3^{-1} A_6 A_5 A_4 (b_0), under the current twist handedness.
  const CurveClass& f() const { return lantern_curves().second; }
  /// e := A_2 A_1 A_4^{-1} B_1 (a_5), under the current twist handedness.
  const CurveClass& e() const { return lantern_curves().first; }

  CurveClass named(const NamedCurveSpec& spec) const {
    switch (spec.family) {
      case 'a': return a(spec.index);
      case 'b': return b(spec.index);
      case 'c': return c(spec.index);
      case 'e': return e();
      case 'f': return f();
      default:
        throw InvalidInput(std::string("unknown curve family '") + spec.family + "'");
    }
  }

  /// Named curves in a fixed order, with the lowest index for duplicates.
  std::vector<std::pair<std::string, CurveClass>> named_curves() const {
    std::vector<std::pair<std::string, CurveClass>> out = probes();
    out.emplace_back("e", e());
    out.emplace_back("f", f());
    return out;
  }

  std::optional<std::string> name_of(const CurveClass& x) const {
    for (const auto& [name, y] : named_curves())
      if (y == x) return name;
    return std::nullopt;
  }

  /// Probe family for identity certificates: every distinct a_i, b_i, c_i.
  const std::vector<std::pair<std::string, CurveClass>>& probes() const {
    std::call_once(probe_once_, [this] {
      auto add = [&](const std::string& name, const CurveClass& x) {
        for (const auto& entry : probes_)
          if (entry.second == x) return;
        probes_.emplace_back(name, x);
      };
      for (int i = 0; i < sides(); ++i) add("a" + std::to_string(i), a(i));
      for (int i = 0; i < sides(); ++i) add("b" + std::to_string(i), b(i));
      for (std::size_t i = 0; i < c_.size(); ++i) add("c" + std::to_string(i), c_[i]);
    });
    return probes_;
  }

  /// Oriented curves u_0..u_{2g-1} spanning H_1.
  const std::vector<CurveClass>& homology_basis() const noexcept { return basis_; }

  const std::vector<std::vector<long long>>& form() const {
    std::call_once(form_once_, [this] { form_ = intersection_form(genus()); });
    return form_;
  }

 private:
  bool squares_to_identity(const DartPermutation& r, const CurveClass& b0) const {
    auto step = [&](const CurveClass& x) { return relabel(twist(b0, x, 1), r); };
    auto check = [&](const std::vector<CurveClass>& family) {
      for (const auto& x : family)
        if (step(step(x)) != x) return false;
      return true;
    };
    if (!check(a_) || !check(b_) || !check(c_)) return false;
    for (const auto& u : basis_) {
      const CurveClass y = step(step(u));
      if (homology_of_word(genus(), y.walk()) != homology_of_word(genus(), u.walk())) return false;
    }
    return true;
  }

  const std::pair<CurveClass, CurveClass>& lantern_curves() const {
    const int h = twist_handedness();
    {
      std::lock_guard lock(ef_mu_);
      auto it = ef_.find(h);
      if (it != ef_.end()) return it->second;
    }
    CurveClass x = twist(b(1), a(5), 1);
    x = twist(a(4), x, -1);
    x = twist(a(1), x, 1);
    x = twist(a(2), x, 1);
    CurveClass y = twist(a(4), b(0), 1);
    y = twist(a(5), y, 1);
    y = twist(a(6), y, 1);
    y = twist(b(3), y, -1);
    std::lock_guard lock(ef_mu_);
    return ef_.try_emplace(h, x, y).first->second;
  }

  PolygonScheme scheme_;
  DartPermutation sigma_;
  DartPermutation tau_;
  int tau_axis_ = -1;
  std::vector<int> tau_candidates_;
  std::vector<CurveClass> a_, b_, c_, basis_;
  mutable std::once_flag probe_once_, form_once_;
  mutable std::mutex ef_mu_;
  mutable std::map<int, std::pair<CurveClass, CurveClass>> ef_;
  mutable std::vector<std::pair<std::string, CurveClass>> probes_;
  mutable std::vector<std::vector<long long>> form_;
};

/// Shared immutable context for a genus (g >= 3).
inline const Surface& surface(int genus) {
  if (genus < 3) {
    throw UnsupportedGenus("genus " + std::to_string(genus) +
                           " is not supported by the polygon model (need g >= 3)");
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Surface>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[genus];
  if (!slot) slot = std::make_unique<Surface>(genus);
  return *slot;
}

inline CurveClass named_curve(const PolygonScheme& scheme, const NamedCurveSpec& spec) {
  return surface(scheme.genus()).named(spec);
}

/// (sigma, tau) as dart permutations.
inline std::pair<DartPermutation, DartPermutation> dihedral_symmetries(const PolygonScheme& scheme) {
  const Surface& s = surface(scheme.genus());
  return {s.sigma(), s.tau()};
}

}  // namespace mcg
