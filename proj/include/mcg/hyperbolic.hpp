#pragma once

// Hyperbolic realisation of the polygon model. The surface group acts on the
// hyperboloid model through the side-pairing translations of a regular
// (4g+2)-gon with angles 2*pi/(2g+1); every essential closed curve has a unique
// closed geodesic, and its cutting sequence against the polygon edges is the
// canonical crossing word used by CurveClass.
//
// Corners of the fundamental domain are moved off their symmetric positions by
// a small fixed offset (deck-equivariantly) so that no geodesic the library
// meets runs through a vertex of the tiling.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "mcg/error.hpp"

namespace mcg::hyperbolic {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Vec = std::array<Real, 3>;
using Mat = std::array<Real, 9>;

/// Sets the default MPFR precision (decimal digits) for the current scope.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Minkowski form of signature (-,+,+).
inline Real lorentz(const Vec& a, const Vec& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec transform(const Mat& m, const Vec& v) {
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
          m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

inline Mat multiply(const Mat& a, const Mat& b) {
  Mat c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
  return c;
}

inline Mat identity_matrix() {
  Mat m;
  for (int i = 0; i < 9; ++i) m[i] = (i % 4 == 0) ? 1 : 0;
  return m;
}

/// Inverse of a Lorentz transformation: J M^T J.
inline Mat lorentz_inverse(const Mat& m) {
  static constexpr int sign[3] = {-1, 1, 1};
  Mat r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[3 * i + j] = m[3 * j + i] * (sign[i] * sign[j]);
  return r;
}

inline Vec euclid_cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Normal of the plane through a and b with respect to the Minkowski form.
inline Vec lorentz_cross(const Vec& a, const Vec& b) {
  Vec c = euclid_cross(a, b);
  c[0] = -c[0];
  return c;
}

inline Real max_abs(const Vec& v) {
  return std::max({abs(v[0]), abs(v[1]), abs(v[2])});
}

/// Kernel of a rank-2 3x3 matrix: the best-conditioned cross product of rows.
inline Vec kernel(const Mat& m) {
  Vec r0{m[0], m[1], m[2]}, r1{m[3], m[4], m[5]}, r2{m[6], m[7], m[8]};
  std::array<Vec, 3> cands{euclid_cross(r0, r1), euclid_cross(r0, r2), euclid_cross(r1, r2)};
  return *std::max_element(cands.begin(), cands.end(),
                           [](const Vec& a, const Vec& b) { return max_abs(a) < max_abs(b); });
}

/// Scales a future-pointing light-like vector to x0 = 1.
inline Vec normalize_null(Vec v) {
  Real s = v[0];
  for (auto& x : v) x /= s;
  return v;
}

/// One piece of a closed geodesic inside the fundamental domain. Boundary
/// positions are `side + fraction`, increasing counter-clockwise.
struct Chord {
  int in_side = 0;
  int out_side = 0;
  Real in_pos;
  Real out_pos;
};

/// Closed geodesic traced through the tiling: the crossing word (side labels
/// exited, in traversal order) and one chord per letter.
struct TracedGeodesic {
  std::vector<int> word;
  std::vector<Chord> chords;
};

class Model {
 public:
  Model(int genus, unsigned digits) : genus_(genus), n_(4 * genus + 2), digits_(digits) {
    PrecisionGuard guard(digits);
    const Real pi = boost::math::constants::pi<Real>();
    const Real n = n_;
    const Real half_angle = pi / Real(2 * genus + 1);
    // cosh(inradius) = cos(alpha/2) / sin(pi/n); cosh(circumradius) = cot(pi/n) cot(alpha/2)
    const Real inradius = acosh(cos(half_angle) / sin(pi / n));
    const Real circumradius = acosh(1 / (tan(pi / n) * tan(half_angle)));
    const Real d = 2 * inradius;

    for (int k = 0; k < n_; ++k) {
      Real phi = (2 * k + 1) * pi / n;
      Real c = cos(phi), s = sin(phi), ch = cosh(d), sh = sinh(d);
      // rotation(phi) * boost_x(d) * rotation(-phi)
      Mat g;
      g[0] = ch;
      g[1] = sh * c;
      g[2] = sh * s;
      g[3] = sh * c;
      g[4] = 1 + (ch - 1) * c * c;
      g[5] = (ch - 1) * c * s;
      g[6] = sh * s;
      g[7] = (ch - 1) * c * s;
      g[8] = 1 + (ch - 1) * s * s;
      gen_.push_back(g);
      geninv_.push_back(lorentz_inverse(g));
    }

    std::vector<Vec> regular(n_);
    for (int k = 0; k < n_; ++k) {
      Real theta = 2 * k * pi / n;
      regular[k] = {cosh(circumradius), sinh(circumradius) * cos(theta),
                    sinh(circumradius) * sin(theta)};
    }

    // Corner maps: H_{j+2} = (g_j g_{j+h+1})^{-1} H_j, anchored at corners 0 and 1.
    const int h = 2 * genus + 1;
    std::vector<Mat> corner_map(n_);
    corner_map[0] = identity_matrix();
    corner_map[1] = identity_matrix();
    for (int j = 0; j + 2 < n_; ++j) {
      Mat step = multiply(gen_[j], gen_[(j + h + 1) % n_]);
      corner_map[j + 2] = multiply(lorentz_inverse(step), corner_map[j]);
    }
    auto nudge = [](Vec v, const Real& dx, const Real& dy) {
      v[1] += dx;
      v[2] += dy;
      v[0] = sqrt(1 + v[1] * v[1] + v[2] * v[2]);
      return v;
    };
    Vec base_even = nudge(regular[0], Real(137) / 10000, Real(-71) / 10000);
    Vec base_odd = nudge(regular[1], Real(-53) / 10000, Real(97) / 10000);
    for (int k = 0; k < n_; ++k) {
      vertex_.push_back(transform(corner_map[k], k % 2 == 0 ? base_even : base_odd));
      corner_error_ = std::max(corner_error_, static_cast<double>(max_abs(
                                                  diff(transform(corner_map[k], regular[k % 2]),
                                                       regular[k]))));
    }

    const Vec origin{Real(1), Real(0), Real(0)};
    for (int k = 0; k < n_; ++k) {
      normal_.push_back(outward(vertex_[k], vertex_[(k + 1) % n_], origin));
      dirichlet_.push_back(outward(regular[k], regular[(k + 1) % n_], origin));
      side_gram_.push_back(lorentz(vertex_[k], vertex_[(k + 1) % n_]));
    }
  }

  int genus() const noexcept { return genus_; }
  int sides() const noexcept { return n_; }
  unsigned digits() const noexcept { return digits_; }
  const Mat& generator(int k) const { return gen_[k]; }
  const Mat& generator_inverse(int k) const { return geninv_[k]; }
  const Vec& vertex(int k) const { return vertex_[k]; }
  const Vec& side_normal(int k) const { return normal_[k]; }
  /// Largest deviation of the corner maps from the regular corners; ~0 iff the
  /// side pairings close up around both vertices.
  double corner_error() const noexcept { return corner_error_; }

  /// Shared, lazily built model for a genus at a precision level.
  static const Model& get(int genus, unsigned digits) {
    static std::mutex mu;
    static std::map<std::pair<int, unsigned>, std::unique_ptr<Model>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{genus, digits}];
    if (!slot) slot = std::make_unique<Model>(genus, digits);
    return *slot;
  }

  struct Clip {
    bool hit = false;
    int in_side = -1;
    int out_side = -1;
    Real s_in;
    Real s_out;
  };

  /// Intersects the geodesic from em to ep with the fundamental domain.
  /// Points of the geodesic are s*ep + em for s in (0, inf).
  Clip clip(const Vec& ep, const Vec& em) const {
    Clip c;
    bool have_lower = false, have_upper = false;
    for (int k = 0; k < n_; ++k) {
      Real a = lorentz(normal_[k], ep);
      Real b = lorentz(normal_[k], em);
      if (a > 0 && b > 0) return c;
      if (a > 0 && b < 0) {
        Real s = -b / a;
        if (!have_upper || s < c.s_out) {
          c.s_out = s;
          c.out_side = k;
          have_upper = true;
        }
      } else if (a < 0 && b > 0) {
        Real s = -b / a;
        if (!have_lower || s > c.s_in) {
          c.s_in = s;
          c.in_side = k;
          have_lower = true;
        }
      }
    }
    c.hit = have_lower && have_upper && c.s_in < c.s_out;
    return c;
  }

  /// Boundary position (side + fraction) of the point s*ep + em on side k.
  Real boundary_position(int k, const Vec& ep, const Vec& em, const Real& s) const {
    Vec x{s * ep[0] + em[0], s * ep[1] + em[1], s * ep[2] + em[2]};
    Real xa = lorentz(x, vertex_[k]);
    Real xb = lorentz(x, vertex_[(k + 1) % n_]);
    const Real& m = side_gram_[k];
    return k + (m * xa + xb) / ((1 + m) * (xa + xb));
  }

  /// Moves a point into the regular Dirichlet domain; returns the isometry used.
  Mat locate(Vec p) const {
    Mat acc = identity_matrix();
    for (int guard = 0; guard < 100000; ++guard) {
      int worst = -1;
      Real worst_val = 0;
      for (int k = 0; k < n_; ++k) {
        Real v = lorentz(dirichlet_[k], p);
        if (v > worst_val) {
          worst_val = v;
          worst = k;
        }
      }
      if (worst < 0) return acc;
      p = transform(geninv_[worst], p);
      acc = multiply(geninv_[worst], acc);
    }
    throw Error("point location in the tiling did not terminate");
  }

 private:
  static Vec diff(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

  static Vec outward(const Vec& a, const Vec& b, const Vec& inside) {
    Vec nrm = lorentz_cross(a, b);
    if (lorentz(nrm, inside) > 0)
      for (auto& x : nrm) x = -x;
    return nrm;
  }

  int genus_;
  int n_;
  unsigned digits_;
  std::vector<Mat> gen_, geninv_;
  std::vector<Vec> vertex_, normal_, dirichlet_;
  std::vector<Real> side_gram_;
  double corner_error_ = 0;
};

/// Precision level (decimal digits) for straightening a word. Partial
/// products are tracked in long double with rescaling to find the peak entry
/// size 2^M; 192 + 3M bits leave room for the product's rounding and for the
/// error growth while tracing one period of the geodesic.
inline unsigned required_digits(int genus, const std::vector<int>& word) {
  const int n = 4 * genus + 2;
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double half_angle = pi / (2 * genus + 1);
  const long double d = 2 * std::acosh(std::cos(half_angle) / std::sin(pi / n));
  const long double ch = std::cosh(d), sh = std::sinh(d);
  using M3 = std::array<long double, 9>;
  auto gen = [&](int k) {
    long double phi = (2 * k + 1) * pi / n, c = std::cos(phi), s = std::sin(phi);
    return M3{ch,     sh * c, sh * s, sh * c, 1 + (ch - 1) * c * c, (ch - 1) * c * s,
              sh * s, (ch - 1) * c * s, 1 + (ch - 1) * s * s};
  };
  M3 acc{1, 0, 0, 0, 1, 0, 0, 0, 1};
  long double scale = 0, peak = 0;
  for (int letter : word) {
    M3 g = gen(letter), c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        c[3 * i + j] = acc[3 * i] * g[j] + acc[3 * i + 1] * g[3 + j] + acc[3 * i + 2] * g[6 + j];
    long double big = 0;
    for (auto x : c) big = std::max(big, std::fabs(x));
    for (auto& x : c) x /= big;
    scale += std::log2(big);
    peak = std::max(peak, scale);
    acc = c;
  }
  const long double bits = 192 + 3 * peak;
  const unsigned digits = static_cast<unsigned>(bits * 0.30103L) + 1;
  unsigned level = 40;
  while (level < digits) level *= 2;
  return level;
}

namespace detail {

inline bool close(const Vec& a, const Vec& b, const Real& tol) {
  return abs(a[1] - b[1]) < tol && abs(a[2] - b[2]) < tol;
}

/// Traces one period of the axis of the product of `word` at a fixed
/// precision. Returns false when the trace did not close up (precision too low).
inline bool trace_at(int genus, const std::vector<int>& word, unsigned digits,
                     TracedGeodesic& out) {
  const Model& model = Model::get(genus, digits);
  PrecisionGuard guard(digits);
  const int n = model.sides();

  Mat w = identity_matrix();
  for (int letter : word) w = multiply(w, model.generator(letter));
  const Real trace = w[0] + w[4] + w[8];
  // tr = 1 + 2 cosh(length); the systole of the regular structure keeps
  // essential curves far from tr = 3.
  if (trace < Real(7) / 2) {
    throw InessentialCurve("crossing word is null-homotopic");
  }
  const Real u = trace - 1;
  const Real lambda = (u + sqrt(u * u - 4)) / 2;
  Mat shifted = w;
  for (int i = 0; i < 3; ++i) shifted[4 * i] -= lambda;
  Vec ep = kernel(shifted);
  Mat inv_shifted = lorentz_inverse(w);
  for (int i = 0; i < 3; ++i) inv_shifted[4 * i] -= lambda;
  Vec em = kernel(inv_shifted);
  ep = normalize_null(ep);
  em = normalize_null(em);

  // Closest point of the axis to the centre, moved into the domain.
  Vec p{em[0] * ep[0] + ep[0] * em[0], em[0] * ep[1] + ep[0] * em[1],
        em[0] * ep[2] + ep[0] * em[2]};
  Mat to_domain = model.locate(p);
  ep = normalize_null(transform(to_domain, ep));
  em = normalize_null(transform(to_domain, em));

  Model::Clip clip = model.clip(ep, em);
  if (!clip.hit) {
    bool found = false;
    for (int k = 0; k < n && !found; ++k) {
      Vec ep2 = normalize_null(transform(model.generator_inverse(k), ep));
      Vec em2 = normalize_null(transform(model.generator_inverse(k), em));
      Model::Clip c2 = model.clip(ep2, em2);
      if (c2.hit) {
        ep = ep2;
        em = em2;
        clip = c2;
        found = true;
      }
    }
    if (!found) return false;
  }

  // Bits of the peak partial product: digits were chosen as 192 + 3M bits.
  const long double bits = digits / 0.30103L;
  const long double peak_bits = std::max<long double>(0, (bits - 192) / 3);
  const Real tol = pow(Real(2), -static_cast<long>(96 + peak_bits));

  const Vec start_ep = ep, start_em = em;
  const int start_in = clip.in_side;
  const std::size_t limit = 64 * word.size() + 256;
  out.word.clear();
  out.chords.clear();
  for (std::size_t step = 0; step < limit; ++step) {
    if (!clip.hit) return false;
    Chord ch;
    ch.in_side = clip.in_side;
    ch.out_side = clip.out_side;
    ch.in_pos = model.boundary_position(clip.in_side, ep, em, clip.s_in);
    ch.out_pos = model.boundary_position(clip.out_side, ep, em, clip.s_out);
    out.word.push_back(clip.out_side);
    out.chords.push_back(std::move(ch));
    ep = normalize_null(transform(model.generator_inverse(clip.out_side), ep));
    em = normalize_null(transform(model.generator_inverse(clip.out_side), em));
    clip = model.clip(ep, em);
    if (clip.hit && clip.in_side == start_in && close(ep, start_ep, tol) &&
        close(em, start_em, tol)) {
      // One period of the axis: a shorter translation than the word's own
      // means the word is a proper power, which has no simple representative.
      Mat r = identity_matrix();
      for (int letter : out.word) r = multiply(r, model.generator(letter));
      const Real root_trace = r[0] + r[4] + r[8];
      if (abs(root_trace - trace) > trace / 1000) {
        throw UnsupportedInput("crossing word is a proper power of a shorter closed curve");
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Straightens a closed crossing word to the cutting sequence of its geodesic.
inline TracedGeodesic straighten(int genus, const std::vector<int>& word) {
  const int n = 4 * genus + 2;
  if (word.empty()) throw InessentialCurve("empty crossing word");
  for (int letter : word) {
    if (letter < 0 || letter >= n) {
      throw MalformedWalk("side label " + std::to_string(letter) + " outside 0.." +
                          std::to_string(n - 1));
    }
  }
  unsigned digits = required_digits(genus, word);
  TracedGeodesic out;
  for (int attempt = 0; attempt < 4; ++attempt, digits *= 2) {
    if (detail::trace_at(genus, word, digits, out)) return out;
  }
  throw Error("geodesic tracing failed to close up");
}

}  // namespace mcg::hyperbolic
