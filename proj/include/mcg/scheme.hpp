#pragma once

// Combinatorial model of the closed genus-g surface as a (4g+2)-gon with
// opposite sides identified.

#include <numeric>
#include <string>
#include <vector>

#include "mcg/error.hpp"

namespace mcg {

/// An oriented side of the polygon boundary. dir = +1 runs from corner `side`
/// to corner `side + 1` (counter-clockwise), dir = -1 runs backwards.
struct Dart {
  int side = 0;
  int dir = 1;

  friend bool operator==(const Dart&, const Dart&) = default;
};

class PolygonScheme {
 public:
  explicit PolygonScheme(int genus) : genus_(genus), n_(4 * genus + 2) {
    if (genus < 3) {
      throw UnsupportedGenus("genus " + std::to_string(genus) +
                             " is not supported by the polygon model (need g >= 3)");
    }
    for (int s = 0; s < n_; ++s) {
      darts_.push_back({s, 1});
      darts_.push_back({s, -1});
    }
    build_vertices();
  }

  int genus() const noexcept { return genus_; }
  int sides() const noexcept { return n_; }
  /// Number of edge classes, 2g+1; side s is glued to side s + half().
  int half() const noexcept { return 2 * genus_ + 1; }
  int opposite(int side) const noexcept { return mod(side + half()); }
  int mod(int i) const noexcept { return ((i % n_) + n_) % n_; }

  const std::vector<Dart>& darts() const noexcept { return darts_; }
  int dart_index(Dart d) const noexcept { return 2 * mod(d.side) + (d.dir > 0 ? 0 : 1); }

  /// The identification involution. Sides are glued by translation, so the
  /// partner of a dart runs the opposite way around the boundary.
  Dart identify(Dart d) const noexcept { return {opposite(d.side), -d.dir}; }

  /// Corners grouped by the vertex of the glued surface they become.
  const std::vector<std::vector<int>>& vertex_classes() const noexcept { return classes_; }

  /// For every vertex, the darts leaving it in rotational order.
  const std::vector<std::vector<Dart>>& vertex_cyclic_order() const noexcept { return cyclic_; }

  int vertex_count() const noexcept { return static_cast<int>(classes_.size()); }
  int edge_count() const noexcept { return half(); }
  int euler_characteristic() const noexcept { return vertex_count() - edge_count() + 1; }

  /// Every edge label must occur once in each direction along the boundary word.
  bool orientable() const {
    for (int s = 0; s < n_; ++s) {
      Dart partner = identify({s, 1});
      if (partner.dir != -1 || identify(partner) != Dart{s, 1}) return false;
    }
    return true;
  }

  friend bool operator==(const PolygonScheme& a, const PolygonScheme& b) {
    return a.genus_ == b.genus_;
  }

 private:
  void build_vertices() {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int a, int b) { parent[find(mod(a))] = find(mod(b)); };
    // side s = [c_s, c_{s+1}] is glued to the reverse of [c_{s+h}, c_{s+h+1}]
    for (int s = 0; s < n_; ++s) {
      unite(s, s + half() + 1);
      unite(s + 1, s + half());
    }
    std::vector<int> root_to_class(n_, -1);
    for (int c = 0; c < n_; ++c) {
      int r = find(c);
      if (root_to_class[r] < 0) {
        root_to_class[r] = static_cast<int>(classes_.size());
        classes_.emplace_back();
      }
      classes_[root_to_class[r]].push_back(c);
    }
    // Walking around a vertex: leave corner c along side c, re-enter at the
    // glued corner c + h + 1 and leave along the next side.
    for (const auto& cls : classes_) {
      std::vector<Dart> order;
      int c = cls.front();
      do {
        order.push_back({c, 1});
        order.push_back({mod(c - 1), -1});
        c = mod(c + half() + 1);
      } while (c != cls.front());
      cyclic_.push_back(std::move(order));
    }
  }

  int genus_;
  int n_;
  std::vector<Dart> darts_;
  std::vector<std::vector<int>> classes_;
  std::vector<std::vector<Dart>> cyclic_;
};

inline PolygonScheme build_scheme(int genus) { return PolygonScheme(genus); }

/// A symmetry of the polygon, stored as its action on darts.
class DartPermutation {
 public:
  DartPermutation(const PolygonScheme& scheme, std::vector<Dart> image, int character)
      : n_(scheme.sides()), half_(scheme.half()), image_(std::move(image)), character_(character) {}

  static DartPermutation identity(const PolygonScheme& scheme) {
    std::vector<Dart> img;
    for (int s = 0; s < scheme.sides(); ++s) {
      img.push_back({s, 1});
      img.push_back({s, -1});
    }
    return DartPermutation(scheme, std::move(img), 1);
  }

  /// Rotation by one step: side s -> side s+1.
  static DartPermutation rotation(const PolygonScheme& scheme) {
    std::vector<Dart> img;
    for (int s = 0; s < scheme.sides(); ++s) {
      img.push_back({scheme.mod(s + 1), 1});
      img.push_back({scheme.mod(s + 1), -1});
    }
    return DartPermutation(scheme, std::move(img), 1);
  }

  /// Reflection mapping corner c to corner axis - c, hence side s to side
  /// axis - 1 - s with the direction reversed.
  static DartPermutation reflection(const PolygonScheme& scheme, int axis) {
    std::vector<Dart> img;
    for (int s = 0; s < scheme.sides(); ++s) {
      img.push_back({scheme.mod(axis - 1 - s), -1});
      img.push_back({scheme.mod(axis - 1 - s), 1});
    }
    return DartPermutation(scheme, std::move(img), -1);
  }

  Dart operator()(Dart d) const { return image_[index(d)]; }
  /// Image of a crossing label (the side a curve leaves the polygon through).
  int map_side(int side) const { return image_[index({side, 1})].side; }
  int orientation_character() const noexcept { return character_; }

  /// (a * b)(d) = a(b(d)).
  friend DartPermutation operator*(const DartPermutation& a, const DartPermutation& b) {
    DartPermutation out = b;
    for (auto& d : out.image_) d = a(d);
    out.character_ = a.character_ * b.character_;
    return out;
  }

  DartPermutation inverse() const {
    DartPermutation out = *this;
    for (int s = 0; s < n_; ++s) {
      for (int dir : {1, -1}) {
        Dart src{s, dir};
        out.image_[index((*this)(src))] = src;
      }
    }
    return out;
  }

  bool is_identity() const {
    for (int s = 0; s < n_; ++s) {
      if (image_[index({s, 1})] != Dart{s, 1}) return false;
      if (image_[index({s, -1})] != Dart{s, -1}) return false;
    }
    return true;
  }

  bool respects_identification() const {
    for (int s = 0; s < n_; ++s) {
      for (int dir : {1, -1}) {
        Dart d{s, dir};
        Dart glued{(s + half_) % n_, -dir};
        Dart a = (*this)(glued);
        Dart b = (*this)(d);
        if (a != Dart{(b.side + half_) % n_, -b.dir}) return false;
      }
    }
    return true;
  }

  friend bool operator==(const DartPermutation& a, const DartPermutation& b) {
    return a.image_ == b.image_ && a.character_ == b.character_;
  }

 private:
  int index(Dart d) const { return 2 * (((d.side % n_) + n_) % n_) + (d.dir > 0 ? 0 : 1); }

  int n_;
  int half_;
  std::vector<Dart> image_;
  int character_;
};

}  // namespace mcg
