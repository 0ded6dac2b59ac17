#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hadamard/point.hpp"
#include "hadamard/tree.hpp"

namespace hadamard {

/// One of the model Hadamard spaces: flat R^n, the hyperboloid model of H^n,
/// or a metric tree with ends. Immutable after construction; copies share the
/// tree tables.
class Space {
 public:
  static Space euclidean(std::size_t dim);
  static Space hyperbolic(std::size_t dim);
  static Space tree(std::shared_ptr<const MetricTree> tree, std::optional<TreePos> basepoint = {});

  SpaceKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const MetricTree& tree_graph() const;
  const Point& basepoint() const { return basepoint_; }
  std::string name() const;

  /// Throws InvalidInput unless the point belongs to this space.
  void validate(const Point& x) const;
  void validate(const IdealPoint& xi, const Point& origin) const;

  /// Canonical representative: hyperboloid points are lifted back onto the
  /// sheet, tree points sitting on a vertex move to its lowest incident edge.
  Point canonical(Point x) const;

  double distance(const Point& x, const Point& y) const;

  /// Point at arclength fraction t in [0,1] along the geodesic from x to y.
  Point geodesic_point(const Point& x, const Point& y, double t) const;

  /// b(x) = lim (d(x, ray(o, s)) - s); decreases towards the ideal point and
  /// vanishes at `origin`.
  double busemann(const IdealPoint& xi, const Point& origin, const Point& x) const;

  /// Point at arclength s >= 0 along the unit-speed ray from x to xi.
  Point ray_point(const Point& x, const IdealPoint& xi, double s) const;

  /// d(ray_point(x, xi, s), ray_point(y, xi, s)); closed forms are used where
  /// the ray points themselves would lose precision.
  double ray_separation(const Point& x, const Point& y, const IdealPoint& xi, double s) const;

  /// Deterministic random point within `scale` of the basepoint.
  Point random_point(std::uint64_t seed, double scale) const;

  /// Geodesic step of length `len` from x in a uniformly random direction. In a
  /// tree the step stops early if it runs into a finite leaf.
  Point random_step(const Point& x, double len, std::mt19937_64& rng) const;

  /// Ideal point in the given direction, normalized against the basepoint.
  /// For trees `direction` is ignored and the first marked end is used.
  IdealPoint ideal_toward(const std::vector<double>& direction) const;
  IdealPoint ideal_end(std::size_t leaf) const;

  /// Singular points (tree vertices of degree >= 3) within `radius` of x,
  /// nearest first.
  std::optional<Point> nearest_singular(const Point& x, double radius) const;

 private:
  Space(SpaceKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_;
  std::size_t dim_;
  std::shared_ptr<const MetricTree> tree_;
  Point basepoint_;
};

}  // namespace hadamard
