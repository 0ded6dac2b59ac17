#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace hadamard {

enum class SpaceKind { euclidean, hyperbolic, tree };

/// Position on a metric tree: an edge index and the arclength offset from the
/// edge's first endpoint.
struct TreePos {
  std::size_t edge = 0;
  double offset = 0.0;

  friend bool operator==(const TreePos&, const TreePos&) = default;
};

/// A point of one of the model spaces. Euclidean points use `coords` with
/// `dim` entries, hyperboloid points use `coords` with `dim + 1` entries
/// (time coordinate first), tree points use `pos`.
struct Point {
  std::vector<double> coords;
  TreePos pos;

  static Point at(std::vector<double> c) { return Point{std::move(c), {}}; }
  static Point on_edge(std::size_t edge, double offset) { return Point{{}, {edge, offset}}; }

  friend bool operator==(const Point&, const Point&) = default;
  friend std::partial_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.coords <=> b.coords; c != 0) return c;
    if (auto c = a.pos.edge <=> b.pos.edge; c != 0) return c;
    return a.pos.offset <=> b.pos.offset;
  }
};

/// A point of the ideal boundary. Euclidean: unit direction. Hyperbolic:
/// future-pointing null vector normalized so that its Minkowski product with
/// the basepoint is -1. Tree: vertex index of a marked ideal leaf.
struct IdealPoint {
  std::vector<double> direction;
  std::size_t end_leaf = 0;

  friend bool operator==(const IdealPoint&, const IdealPoint&) = default;
};

}  // namespace hadamard
