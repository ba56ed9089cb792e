#pragma once

// Seeded property batteries over the twist engine. Each battery returns the
// number of cases checked and the first counterexample, if any.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mcg/action.hpp"

namespace mcg::props {

struct BatteryResult {
  bool ok = true;
  int cases = 0;
  std::string witness;  // first counterexample

  void fail(std::string w) {
    if (ok) witness = std::move(w);
    ok = false;
  }
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Uniform integer in [lo, hi]; written out so that draws do not depend on
/// the standard library's distribution implementation.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random word of 1..max_len tokens: twists about named curves with exponent
/// +-1, powers of the rotation, and the reflection.
inline MappingWord random_word(int genus, std::mt19937_64& rng, int max_len) {
  const Surface& s = surface(genus);
  MappingWord w(genus);
  const int len = draw(rng, 1, max_len);
  for (int i = 0; i < len; ++i) {
    const int kind = draw(rng, 0, 9);
    if (kind == 0) {
      w = w * MappingWord::sigma(genus, draw(rng, 1, s.sides() - 1));
    } else if (kind == 1) {
      w = w * MappingWord::tau(genus);
    } else {
      const char fam = kind < 5 ? 'a' : (kind < 9 || !s.has_c()) ? 'b' : 'c';
      w = w * MappingWord::twist(genus, fam, draw(rng, 0, s.sides() - 1), draw(rng, 0, 1) ? 1 : -1);
    }
  }
  return w;
}

/// (d, x) pairs of named curves: intersecting pairs first, then some
/// disjoint ones, in the fixed probe order.
inline std::vector<std::pair<std::string, std::string>> named_pairs(int genus, int with_one, int with_two,
                                                                     int disjoint) {
  const Surface& s = surface(genus);
  std::vector<std::pair<std::string, std::string>> out;
  int n1 = 0, n2 = 0, n0 = 0;
  const auto& probes = s.probes();
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j) {
      if (i == j) continue;
      const int v = geometric_intersection(probes[i].second, probes[j].second);
      int* count = v == 1 ? &n1 : v == 2 ? &n2 : v == 0 ? &n0 : nullptr;
      const int cap = v == 1 ? with_one : v == 2 ? with_two : disjoint;
      if (!count || *count >= cap) continue;
      ++*count;
      out.emplace_back(probes[i].first, probes[j].first);
    }
  return out;
}

inline CurveClass by_name(const Surface& s, const std::string& name) {
  for (const auto& [n, x] : s.probes())
    if (n == name) return x;
  throw InvalidInput("unknown probe " + name);
}

/// i(T_d^k(x), x) = |k| i(d, x)^2 for k = 1, 2, 3.
inline BatteryResult quadratic_growth(int genus) {
  BatteryResult r;
  const Surface& s = surface(genus);
  for (const auto& [dn, xn] : named_pairs(genus, 12, 8, 4)) {
    const CurveClass d = by_name(s, dn), x = by_name(s, xn);
    const int i0 = geometric_intersection(d, x);
    for (int k = 1; k <= 3; ++k) {
      ++r.cases;
      const CurveClass y = twist(d, x, k);
      const int got = geometric_intersection(y, x);
      if (got != k * i0 * i0 || !y.is_simple())
        r.fail("i(T_" + dn + "^" + std::to_string(k) + "(" + xn + "), " + xn + ") = " + std::to_string(got) +
               ", expected " + std::to_string(k * i0 * i0));
    }
  }
  return r;
}

/// F T_d F^-1 = T_{F(d)}^eps(F) on random short words F.
inline BatteryResult naturality(int genus, std::uint64_t seed, int words = 10, int max_len = 6) {
  BatteryResult r;
  const Surface& s = surface(genus);
  std::mt19937_64 rng(seed ^ 0x6e61747572616cULL);
  for (int i = 0; i < words; ++i) {
    const MappingWord f = random_word(genus, rng, max_len);
    const bool use_b = draw(rng, 0, 1) == 1;
    const int idx = draw(rng, 0, s.sides() - 1);
    const CurveClass d = use_b ? s.b(idx) : s.a(idx);
    const MappingWord lhs = f * MappingWord::twist_about(d) * f.inverse();
    const MappingWord rhs = MappingWord::twist_about(apply(f, d), f.orientation_character());
    ++r.cases;
    if (!classes_equal(lhs, rhs))
      r.fail("F = " + f.to_string() + ", d = " + (use_b ? "b" : "a") + std::to_string(idx));
  }
  return r;
}

/// homology_rep lands in the +-symplectic group and is multiplicative.
inline BatteryResult homology_symplectic(int genus, std::uint64_t seed, int words = 20) {
  BatteryResult r;
  std::mt19937_64 rng(seed ^ 0x686f6d6f6cULL);
  for (int i = 0; i < words; ++i) {
    const MappingWord v = random_word(genus, rng, 6);
    const MappingWord w = random_word(genus, rng, 6);
    ++r.cases;
    try {
      const HomologyRep rv = homology_rep(v), rw = homology_rep(w), rvw = homology_rep(v * w);
      if (rvw.matrix != multiply(rv.matrix, rw.matrix) || rvw.character != rv.character * rw.character ||
          rv.character != v.orientation_character())
        r.fail("rep(vw) != rep(v) rep(w) for v = " + v.to_string() + ", w = " + w.to_string());
    } catch (const InvalidInput& e) {
      r.fail(std::string(e.what()) + " for " + v.to_string());
    }
  }
  return r;
}

/// i(F x, F y) = i(x, y) over all pairs of a-, b- (and c-) curves.
inline BatteryResult invariance(int genus, std::uint64_t seed, int words = 3) {
  BatteryResult r;
  const Surface& s = surface(genus);
  std::mt19937_64 rng(seed ^ 0x696e76ULL);
  const auto& probes = s.probes();
  for (int i = 0; i < words; ++i) {
    const MappingWord f = random_word(genus, rng, 3);
    std::vector<CurveClass> images;
    for (const auto& p : probes) {
      images.push_back(apply(f, p.second));
      if (!images.back().is_simple()) r.fail("image of " + p.first + " under " + f.to_string() + " is not simple");
    }
    for (std::size_t j = 0; j < probes.size(); ++j)
      for (std::size_t k = j + 1; k < probes.size(); ++k) {
        ++r.cases;
        if (geometric_intersection(images[j], images[k]) !=
            geometric_intersection(probes[j].second, probes[k].second))
          r.fail("F = " + f.to_string() + " changes i(" + probes[j].first + ", " + probes[k].first + ")");
      }
  }
  return r;
}

/// T_x T_y = T_y T_x for disjoint named x, y.
inline BatteryResult commutation(int genus, int pairs = 6) {
  BatteryResult r;
  const Surface& s = surface(genus);
  for (const auto& [xn, yn] : named_pairs(genus, 0, 0, pairs)) {
    const MappingWord tx = MappingWord::twist_about(by_name(s, xn));
    const MappingWord ty = MappingWord::twist_about(by_name(s, yn));
    ++r.cases;
    if (!classes_equal(tx * ty, ty * tx)) r.fail("T_" + xn + " and T_" + yn + " do not commute");
  }
  return r;
}

/// Random cyclic walks: tightening is idempotent, and scrambling the raw
/// walk (inserting spurs, rotating, reversing) does not change the class.
/// Homology is the independent oracle: it must survive tightening.
inline BatteryResult tighten_oracle(int genus, std::uint64_t seed, int walks = 100) {
  BatteryResult r;
  const int n = 4 * genus + 2, h = n / 2;
  std::mt19937_64 rng(seed ^ 0x74696768ULL);
  int attempts = 0;
  while (r.cases < walks && attempts < 20 * walks) {
    ++attempts;
    std::vector<int> w(static_cast<std::size_t>(draw(rng, 1, 7)));
    for (auto& x : w) x = draw(rng, 0, n - 1);
    std::optional<CurveClass> x;
    try {
      x = tighten(genus, w);
    } catch (const InessentialCurve&) {
      continue;
    } catch (const UnsupportedInput&) {
      continue;  // proper powers
    }
    ++r.cases;
    std::string tag = "walk";
    for (int side : w) tag += " " + std::to_string(side);
    if (tighten(genus, x->walk()).oriented_key() != x->oriented_key()) r.fail(tag + ": not idempotent");
    if (homology_of_word(genus, w) != homology_of_word(genus, x->walk())) r.fail(tag + ": homology changed");
    // Scramble: spur insertions, then a rotation.
    std::vector<int> v = w;
    for (int k = draw(rng, 1, 3); k > 0; --k) {
      const std::size_t at = static_cast<std::size_t>(draw(rng, 0, static_cast<int>(v.size())));
      const int side = draw(rng, 0, n - 1);
      v.insert(v.begin() + static_cast<long>(at), {side, (side + h) % n});
    }
    std::rotate(v.begin(), v.begin() + static_cast<long>(draw(rng, 0, static_cast<int>(v.size()) - 1)), v.end());
    const CurveClass y = tighten(genus, v);
    if (y.oriented_key() != x->oriented_key()) r.fail(tag + ": scrambled copy tightens differently");
    // Reversal gives the same unoriented class with negated homology.
    std::vector<int> rev;
    for (auto it = w.rbegin(); it != w.rend(); ++it) rev.push_back((*it + h) % n);
    const CurveClass z = tighten(genus, rev);
    if (z != *x || homology_of_word(genus, z.walk()) != -homology_of_word(genus, x->walk()))
      r.fail(tag + ": reversal is not the inverse class");
  }
  if (r.cases < walks) r.fail("only " + std::to_string(r.cases) + " essential walks drawn");
  return r;
}

}  // namespace mcg::props
