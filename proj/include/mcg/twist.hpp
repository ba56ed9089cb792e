#pragma once

// Dehn twists by surgery on geodesic representatives: at every crossing of x
// with d, x is cut open and a full copy of d (in the direction dictated by the
// handedness constant and the crossing sign) is spliced in; the resulting
// closed crossing word is then straightened again.

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "mcg/curves.hpp"

namespace mcg {

/// Global splice direction. +1: at a crossing where d passes from the right of
/// x to its left, a positive twist continues along d's own direction. The
/// value is pinned by the calibration suite (B_4^{-1}(b_0) = c_0 and the
/// lantern relation both fail when it is flipped).
inline constexpr int kTwistHandedness = -1;

namespace detail {
inline int& handedness_slot() {
  thread_local int h = kTwistHandedness;
  return h;
}
}  // namespace detail

/// Splice direction used by default on this thread.
inline int twist_handedness() { return detail::handedness_slot(); }

/// Flips or pins the splice direction for the current thread while alive;
/// only the calibration guard uses this.
class ScopedHandedness {
 public:
  explicit ScopedHandedness(int h) : saved_(detail::handedness_slot()) { detail::handedness_slot() = h; }
  ~ScopedHandedness() { detail::handedness_slot() = saved_; }
  ScopedHandedness(const ScopedHandedness&) = delete;
  ScopedHandedness& operator=(const ScopedHandedness&) = delete;

 private:
  int saved_;
};

namespace detail {

/// Crossing word of d traversed once, starting inside chord m.
inline std::vector<int> loop_from(const CurveClass& d, std::size_t m, bool forward, int n) {
  const auto& w = d.walk();
  const std::size_t len = w.size();
  std::vector<int> out;
  out.reserve(len);
  if (forward) {
    for (std::size_t i = 0; i < len; ++i) out.push_back(w[(m + i) % len]);
  } else {
    for (std::size_t i = 1; i <= len; ++i) out.push_back((w[(m + len - i) % len] + n / 2) % n);
  }
  return out;
}

/// Distance along the right-hand boundary arc of chord p to the endpoint of q
/// lying on that arc; orders the crossings of p from its start to its end.
inline hyperbolic::Real order_along(const hyperbolic::Chord& p, const hyperbolic::Chord& q, int n) {
  const hyperbolic::Real& e = in_arc(q.in_pos, p.in_pos, p.out_pos, n) ? q.in_pos : q.out_pos;
  hyperbolic::Real dist = e - p.in_pos;
  while (dist < 0) dist += n;
  while (dist >= n) dist -= n;
  return dist;
}

}  // namespace detail

/// Crossing word of T_d^power(x) before straightening; x's orientation is kept.
inline std::vector<int> twist_word(const CurveClass& d, const CurveClass& x, int power,
                                   int handedness = twist_handedness()) {
  const int n = 4 * x.genus() + 2;
  const auto& xc = x.geodesic().chords;
  const auto& dc = d.geodesic().chords;
  std::vector<int> out;
  for (std::size_t i = 0; i < xc.size(); ++i) {
    struct Hit {
      hyperbolic::Real where;
      std::size_t chord;
      int sign;
    };
    std::vector<Hit> hits;
    for (std::size_t m = 0; m < dc.size(); ++m) {
      int s = detail::crossing_sign(xc[i], dc[m], n);
      if (s != 0) hits.push_back({detail::order_along(xc[i], dc[m], n), m, s});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.where < b.where; });
    for (const Hit& hit : hits) {
      bool forward = hit.sign * handedness * (power > 0 ? 1 : -1) > 0;
      std::vector<int> loop = detail::loop_from(d, hit.chord, forward, n);
      for (int k = 0; k < std::abs(power); ++k) out.insert(out.end(), loop.begin(), loop.end());
    }
    out.push_back(x.walk()[i]);
  }
  return out;
}

/// T_d^power(x) for simple d. Results are memoised on oriented keys.
inline CurveClass twist(const CurveClass& d, const CurveClass& x, int power,
                        int handedness = twist_handedness()) {
  require_same_scheme(d, x);
  if (!d.is_simple()) throw UnsupportedInput("twist about a non-simple curve");
  if (power == 0 || d == x) return x;
  using Key = std::tuple<int, int, int, std::vector<int>, std::vector<int>>;
  static std::mutex mu;
  static std::map<Key, CurveClass> memo;
  Key key{x.genus(), power, handedness, d.canonical_key(), x.oriented_key()};
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  std::vector<int> w = twist_word(d, x, power, handedness);
  CurveClass result = w.size() == x.walk().size() ? x : tighten(x.genus(), w);
  std::lock_guard lock(mu);
  memo.emplace(std::move(key), result);
  return result;
}

}  // namespace mcg
