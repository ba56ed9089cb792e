#pragma once

// Isotopy classes of essential closed curves on the glued polygon.
//
// A curve is stored as the cutting sequence of its closed geodesic: the cyclic
// list of sides it leaves the polygon through. Geodesics are unique in their
// free homotopy class, so the rotation/reversal-minimal form of the cutting
// sequence is a complete invariant, and pairs of geodesics are automatically
// in minimal position, so crossings can be counted chord by chord.

#include <algorithm>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "mcg/error.hpp"
#include "mcg/hyperbolic.hpp"
#include "mcg/scheme.hpp"

namespace mcg {

enum class Orientation { Forward, Backward };

/// Integer vector in H_1(S_g) with respect to the basis u_0..u_{2g-1}, where
/// u_i is the class of the loop crossing side i once.
struct HomologyVector {
  std::vector<long long> coords;

  HomologyVector operator-() const {
    HomologyVector r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
  }
  friend HomologyVector operator+(HomologyVector a, const HomologyVector& b) {
    for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend HomologyVector operator-(const HomologyVector& a, const HomologyVector& b) {
    return a + (-b);
  }
  friend bool operator==(const HomologyVector&, const HomologyVector&) = default;
};

namespace detail {

inline std::vector<int> min_rotation(const std::vector<int>& w) {
  std::vector<int> best = w;
  std::vector<int> cur = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

/// The same loop traversed backwards: reverse order, invert every letter.
inline std::vector<int> inverse_word(const std::vector<int>& w, int n) {
  std::vector<int> r(w.rbegin(), w.rend());
  for (auto& s : r) s = (s + n / 2) % n;
  return r;
}

/// Position p lies strictly inside the counter-clockwise arc from a to b on a
/// boundary circle of circumference n.
inline bool in_arc(const hyperbolic::Real& p, const hyperbolic::Real& a, const hyperbolic::Real& b,
                   int n) {
  auto wrap = [n](hyperbolic::Real x) {
    while (x < 0) x += n;
    while (x >= n) x -= n;
    return x;
  };
  hyperbolic::Real dp = wrap(p - a);
  hyperbolic::Real db = wrap(b - a);
  return dp > 0 && dp < db;
}

/// +1 if chord q crosses chord p from its right to its left, -1 for the other
/// direction, 0 if they do not cross.
inline int crossing_sign(const hyperbolic::Chord& p, const hyperbolic::Chord& q, int n) {
  bool in_right = in_arc(q.in_pos, p.in_pos, p.out_pos, n);
  bool out_right = in_arc(q.out_pos, p.in_pos, p.out_pos, n);
  if (in_right == out_right) return 0;
  return in_right ? 1 : -1;
}

}  // namespace detail

class CurveClass {
 public:
  CurveClass(int genus, hyperbolic::TracedGeodesic geodesic)
      : genus_(genus), geo_(std::make_shared<const hyperbolic::TracedGeodesic>(std::move(geodesic))) {
    const int n = 4 * genus + 2;
    std::vector<int> fwd = detail::min_rotation(geo_->word);
    std::vector<int> bwd = detail::min_rotation(detail::inverse_word(geo_->word, n));
    key_ = std::min(fwd, bwd);
    oriented_key_ = fwd;
    const auto& ch = geo_->chords;
    for (std::size_t i = 0; i < ch.size() && simple_; ++i)
      for (std::size_t j = i + 1; j < ch.size(); ++j)
        if (detail::crossing_sign(ch[i], ch[j], n) != 0) {
          simple_ = false;
          break;
        }
  }

  int genus() const noexcept { return genus_; }
  /// Oriented cutting sequence, starting at an arbitrary chord.
  const std::vector<int>& walk() const noexcept { return geo_->word; }
  /// Rotation- and reversal-minimal cutting sequence.
  const std::vector<int>& canonical_key() const noexcept { return key_; }
  /// Rotation-minimal cutting sequence keeping the traversal direction.
  const std::vector<int>& oriented_key() const noexcept { return oriented_key_; }
  bool is_simple() const noexcept { return simple_; }
  std::size_t length() const noexcept { return geo_->word.size(); }
  const hyperbolic::TracedGeodesic& geodesic() const noexcept { return *geo_; }

  CurveClass reversed() const {
    const int n = 4 * genus_ + 2;
    hyperbolic::TracedGeodesic g;
    g.word.resize(geo_->word.size());
    g.chords.resize(geo_->chords.size());
    const std::size_t len = geo_->word.size();
    for (std::size_t i = 0; i < len; ++i) {
      const auto& c = geo_->chords[len - 1 - i];
      g.chords[i] = {c.out_side, c.in_side, c.out_pos, c.in_pos};
      g.word[i] = c.in_side;
    }
    (void)n;
    return CurveClass(genus_, std::move(g));
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < key_.size(); ++i) os << (i ? " " : "") << key_[i];
    return os.str();
  }

  friend bool operator==(const CurveClass& a, const CurveClass& b) {
    return a.genus_ == b.genus_ && a.key_ == b.key_;
  }
  friend bool operator<(const CurveClass& a, const CurveClass& b) {
    if (a.genus_ != b.genus_) return a.genus_ < b.genus_;
    return a.key_ < b.key_;
  }

 private:
  int genus_;
  std::shared_ptr<const hyperbolic::TracedGeodesic> geo_;
  std::vector<int> key_;
  std::vector<int> oriented_key_;
  bool simple_ = true;
};

/// Canonical class of the closed crossing word `raw_walk` (side labels exited,
/// cyclic). Throws MalformedWalk for labels outside the polygon and
/// InessentialCurve for null-homotopic words.
inline CurveClass tighten(const PolygonScheme& scheme, const std::vector<int>& raw_walk) {
  return CurveClass(scheme.genus(), hyperbolic::straighten(scheme.genus(), raw_walk));
}

inline CurveClass tighten(int genus, const std::vector<int>& raw_walk) {
  return CurveClass(genus, hyperbolic::straighten(genus, raw_walk));
}

inline void require_same_scheme(const CurveClass& x, const CurveClass& y) {
  if (x.genus() != y.genus()) {
    throw SchemeMismatch("curves live on different surfaces (genus " + std::to_string(x.genus()) +
                         " vs " + std::to_string(y.genus()) + ")");
  }
}

/// Isotopy as unoriented curves.
inline bool equal(const CurveClass& x, const CurveClass& y) {
  require_same_scheme(x, y);
  return x == y;
}

/// Signed count of crossings; +1 where y passes from the right of x to its left.
inline int algebraic_intersection(const CurveClass& x, const CurveClass& y) {
  require_same_scheme(x, y);
  if (x == y) return 0;
  const int n = 4 * x.genus() + 2;
  int total = 0;
  for (const auto& p : x.geodesic().chords)
    for (const auto& q : y.geodesic().chords) total += detail::crossing_sign(p, q, n);
  return total;
}

/// Minimal number of crossings over representatives, for simple curves.
inline int geometric_intersection(const CurveClass& x, const CurveClass& y) {
  require_same_scheme(x, y);
  if (!x.is_simple() || !y.is_simple()) {
    throw UnsupportedInput("geometric intersection is only supported for simple curves");
  }
  if (x == y) return 0;
  const int n = 4 * x.genus() + 2;
  int total = 0;
  for (const auto& p : x.geodesic().chords)
    for (const auto& q : y.geodesic().chords) total += detail::crossing_sign(p, q, n) != 0;
  return total;
}

/// Homology class of a crossing word. Crossing side s < 2g+1 counts +e_s, its
/// partner counts -e_s; the relation sum (-1)^s e_s = 0 coming from either
/// vertex eliminates e_{2g}.
inline HomologyVector homology_of_word(int genus, const std::vector<int>& word) {
  const int h = 2 * genus + 1;
  std::vector<long long> v(h, 0);
  for (int s : word) {
    if (s < h)
      ++v[s];
    else
      --v[s - h];
  }
  HomologyVector out;
  out.coords.resize(2 * genus);
  for (int i = 0; i < 2 * genus; ++i) out.coords[i] = v[i] - ((i % 2 == 0) ? 1 : -1) * v[2 * genus];
  return out;
}

inline HomologyVector homology_class(const CurveClass& x,
                                     Orientation orientation = Orientation::Forward) {
  HomologyVector v = homology_of_word(x.genus(), x.walk());
  return orientation == Orientation::Forward ? v : -v;
}

/// Loop crossing side i once: the basis curve u_i.
inline CurveClass basis_curve(int genus, int i) { return tighten(genus, {i}); }

/// Intersection form on the basis u_0..u_{2g-1}, read off the basis geodesics.
inline std::vector<std::vector<long long>> intersection_form(int genus) {
  const int r = 2 * genus;
  std::vector<CurveClass> basis;
  for (int i = 0; i < r; ++i) basis.push_back(basis_curve(genus, i));
  std::vector<std::vector<long long>> j(r, std::vector<long long>(r, 0));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b) j[a][b] = algebraic_intersection(basis[a], basis[b]);
  return j;
}

inline long long pair(const std::vector<std::vector<long long>>& form, const HomologyVector& x,
                      const HomologyVector& y) {
  long long total = 0;
  for (std::size_t a = 0; a < x.coords.size(); ++a)
    for (std::size_t b = 0; b < y.coords.size(); ++b) total += x.coords[a] * form[a][b] * y.coords[b];
  return total;
}

/// Debug dump line: `<name>: <side-crossing sequence>`.
inline std::string dump_line(const std::string& name, const CurveClass& x) {
  return name + ": " + x.to_string();
}

}  // namespace mcg
