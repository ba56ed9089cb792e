#pragma once

// The thirteen intersection rules for the named families a, b, c, evaluated
// on the computed curves under three readings of the index arithmetic.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcg/surface.hpp"

namespace mcg {

enum class IndexReading { Literal, Cyclic, HalfCyclic };

inline const char* to_string(IndexReading r) {
  switch (r) {
    case IndexReading::Literal: return "literal";
    case IndexReading::Cyclic: return "cyclic mod 4g+2";
    default: return "cyclic mod 2g+1";
  }
}

/// A rule "i(x_j, y_k) = value iff P(j, k)".
struct IntersectionRule {
  char x = 'a', y = 'a';
  int value = 0;
  // Symmetric rules test |j - k| against `set`; one-sided rules test j - k
  // (or k - j when `reverse`) against `set`. `negate` turns "in" into "not in".
  bool symmetric = true;
  bool reverse = false;
  bool negate = false;
  std::function<std::set<int>(int genus)> set;

  /// Whether the predicate holds for indices j, k under a reading.
  bool predicate(int genus, int j, int k, IndexReading reading) const {
    const int full = 4 * genus + 2;
    const int m = reading == IndexReading::HalfCyclic ? full / 2 : full;
    const std::set<int> s = set(genus);
    bool in = false;
    if (symmetric) {
      int d = j - k;
      if (reading == IndexReading::Literal) {
        d = d < 0 ? -d : d;
      } else {
        d = ((d % m) + m) % m;
        d = std::min(d, m - d);
      }
      in = s.count(d) > 0;
    } else {
      int d = reverse ? k - j : j - k;
      if (reading == IndexReading::Literal) {
        in = s.count(d) > 0;
      } else {
        d = ((d % m) + m) % m;
        for (int v : s)
          if (((v % m) + m) % m == d) in = true;
      }
    }
    return negate ? !in : in;
  }

  /// Stable key: the family pair and the value, e.g. "bb.2".
  std::string key() const { return std::string{x, y} + "." + std::to_string(value); }

  std::string text(int genus) const {
    std::string lhs = "i(" + std::string(1, x) + "_j, " + std::string(1, y) + "_k) = " + std::to_string(value);
    std::string var = symmetric ? "|j-k|" : reverse ? "k-j" : "j-k";
    std::string members;
    for (int v : set(genus)) members += (members.empty() ? "" : ", ") + std::to_string(v);
    return lhs + " iff " + var + (negate ? " not in {" : " in {") + members + "}";
  }
};

inline const std::vector<IntersectionRule>& intersection_rules() {
  static const std::vector<IntersectionRule> rules = [] {
    auto fixed = [](std::set<int> s) { return [s](int) { return s; }; };
    auto b1 = [](int g) { return std::set<int>{1, 3, 2 * g - 2, 2 * g}; };
    auto b0 = [](int g) { return std::set<int>{1, 2, 3, 2 * g - 2, 2 * g}; };
    std::vector<IntersectionRule> r;
    r.push_back({'a', 'a', 0, true, false, true, fixed({1})});
    r.push_back({'a', 'a', 1, true, false, false, fixed({1})});
    r.push_back({'b', 'b', 0, true, false, true, b0});
    r.push_back({'b', 'b', 1, true, false, false, b1});
    r.push_back({'b', 'b', 2, true, false, false, fixed({2})});
    r.push_back({'c', 'c', 0, true, false, false, fixed({0})});
    r.push_back({'c', 'c', 1, true, false, true, fixed({0})});
    r.push_back({'a', 'b', 0, false, false, true, fixed({0, 4})});
    r.push_back({'a', 'b', 1, false, false, false, fixed({0, 4})});
    r.push_back({'a', 'c', 0, false, true, true, fixed({-1, 0})});
    r.push_back({'a', 'c', 1, false, true, false, fixed({-1, 0})});
    r.push_back({'b', 'c', 0, false, true, true, fixed({0, 1, 2, 3})});
    r.push_back({'b', 'c', 1, false, true, false, fixed({0, 1, 2, 3})});
    return r;
  }();
  return rules;
}

/// Computed i(x_j, y_k) for one family pair over all j, k in [0, 4g+2).
struct FamilyTable {
  char x = 'a', y = 'a';
  std::vector<std::vector<int>> values;
};

inline FamilyTable family_table(const Surface& s, char x, char y) {
  FamilyTable t{x, y, {}};
  const int n = s.sides();
  t.values.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      t.values[j][k] = geometric_intersection(s.named({x, j}), s.named({y, k}));
  return t;
}

struct RuleMismatch {
  int j = 0, k = 0;
  int computed = 0;
  bool predicate = false;
};

/// First pair (j, k) violating "i = value iff P", or nothing if the rule holds.
inline std::optional<RuleMismatch> check_rule(const IntersectionRule& r, const FamilyTable& t, int genus,
                                              IndexReading reading) {
  const int n = static_cast<int>(t.values.size());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int v = t.values[j][k];
      const bool p = r.predicate(genus, j, k, reading);
      if ((v == r.value) != p) return RuleMismatch{j, k, v, p};
    }
  return std::nullopt;
}

}  // namespace mcg
