#include "hadamard/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hadamard/errors.hpp"
#include "hadamard/hyperboloid.hpp"

namespace hadamard {

namespace hb = hyperboloid;

namespace {

constexpr double kSheetTol = 1e-9;
constexpr double kUnitTol = 1e-12;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<double> gaussian_direction(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(dim);
  double n = 0.0;
  do {
    for (double& c : v) c = gauss(rng);
    n = norm(v);
  } while (n < 1e-12);
  for (double& c : v) c /= n;
  return v;
}

}  // namespace

Space Space::euclidean(std::size_t dim) {
  if (dim == 0) throw InvalidInput("euclidean space: dim must be >= 1");
  Space s(SpaceKind::euclidean, dim);
  s.basepoint_ = Point::at(std::vector<double>(dim, 0.0));
  return s;
}

Space Space::hyperbolic(std::size_t dim) {
  if (dim == 0) throw InvalidInput("hyperbolic space: dim must be >= 1");
  Space s(SpaceKind::hyperbolic, dim);
  std::vector<double> o(dim + 1, 0.0);
  o[0] = 1.0;
  s.basepoint_ = Point::at(std::move(o));
  return s;
}

Space Space::tree(std::shared_ptr<const MetricTree> tree, std::optional<TreePos> basepoint) {
  if (!tree) throw InvalidInput("tree space: missing topology");
  Space s(SpaceKind::tree, 1);
  const TreePos base = basepoint.value_or(TreePos{0, 0.0});
  if (!tree->valid(base)) throw InvalidInput("tree space: basepoint is not on the tree");
  s.basepoint_ = Point::on_edge(0, 0.0);
  s.basepoint_.pos = tree->canonical(base);
  s.tree_ = std::move(tree);
  return s;
}

const MetricTree& Space::tree_graph() const {
  if (!tree_) throw InvalidInput("space has no tree topology");
  return *tree_;
}

std::string Space::name() const {
  switch (kind_) {
    case SpaceKind::euclidean:
      return "euclidean";
    case SpaceKind::hyperbolic:
      return "hyperbolic";
    case SpaceKind::tree:
      return "tree";
  }
  return {};
}

void Space::validate(const Point& x) const {
  switch (kind_) {
    case SpaceKind::euclidean:
      if (x.coords.size() != dim_ || !all_finite(x.coords))
        throw InvalidInput("euclidean point must have " + std::to_string(dim_) + " finite coordinates");
      return;
    case SpaceKind::hyperbolic:
      if (x.coords.size() != dim_ + 1 || !all_finite(x.coords))
        throw InvalidInput("hyperboloid point must have " + std::to_string(dim_ + 1) +
                           " finite coordinates");
      if (x.coords[0] <= 0.0) throw InvalidInput("hyperboloid point must have x0 > 0");
      if (hb::sheet_error(x.coords) > kSheetTol)
        throw InvalidInput("point is off the hyperboloid <x,x> = -1");
      return;
    case SpaceKind::tree:
      if (!tree_->valid(x.pos)) throw InvalidInput("tree point has an invalid edge or offset");
      return;
  }
}

void Space::validate(const IdealPoint& xi, const Point& origin) const {
  switch (kind_) {
    case SpaceKind::euclidean:
      if (xi.direction.size() != dim_ || std::abs(norm(xi.direction) - 1.0) > kUnitTol)
        throw InvalidInput("euclidean ideal point must be a unit direction of length " +
                           std::to_string(dim_));
      return;
    case SpaceKind::hyperbolic: {
      const auto& v = xi.direction;
      if (v.size() != dim_ + 1 || !all_finite(v) || v[0] <= 0.0)
        throw InvalidInput("hyperbolic ideal point must be a future-pointing null vector");
      if (std::abs(hb::minkowski(v, v)) > kSheetTol * v[0] * v[0])
        throw InvalidInput("hyperbolic ideal point is not a null vector");
      if (std::abs(hb::minkowski(origin.coords, v) + 1.0) > kSheetTol)
        throw InvalidInput("hyperbolic ideal point is not normalized against the basepoint");
      return;
    }
    case SpaceKind::tree:
      if (!tree_->is_ideal_leaf(xi.end_leaf)) throw InvalidInput("tree ideal point is not a marked end");
      return;
  }
}

Point Space::canonical(Point x) const {
  if (kind_ == SpaceKind::hyperbolic) hb::lift(x.coords);
  if (kind_ == SpaceKind::tree) x.pos = tree_->canonical(x.pos);
  return x;
}

double Space::distance(const Point& x, const Point& y) const {
  switch (kind_) {
    case SpaceKind::euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double d = x.coords[i] - y.coords[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case SpaceKind::hyperbolic:
      return hb::distance(x.coords, y.coords);
    case SpaceKind::tree:
      return tree_->distance(x.pos, y.pos);
  }
  return 0.0;
}

Point Space::geodesic_point(const Point& x, const Point& y, double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("geodesic parameter must lie in [0, 1]");
  switch (kind_) {
    case SpaceKind::euclidean: {
      Point out = x;
      for (std::size_t i = 0; i < dim_; ++i) out.coords[i] = (1.0 - t) * x.coords[i] + t * y.coords[i];
      return out;
    }
    case SpaceKind::hyperbolic:
      return Point::at(hb::geodesic(x.coords, y.coords, t));
    case SpaceKind::tree: {
      Point out;
      out.pos = tree_->walk(x.pos, y.pos, t * tree_->distance(x.pos, y.pos));
      return out;
    }
  }
  return x;
}

double Space::busemann(const IdealPoint& xi, const Point& origin, const Point& x) const {
  validate(xi, origin);
  switch (kind_) {
    case SpaceKind::euclidean: {
      double b = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) b -= (x.coords[i] - origin.coords[i]) * xi.direction[i];
      return b;
    }
    case SpaceKind::hyperbolic:
      return hb::busemann(xi.direction, origin.coords, x.coords);
    case SpaceKind::tree:
      return tree_->height(xi.end_leaf, origin.pos) - tree_->height(xi.end_leaf, x.pos);
  }
  return 0.0;
}

Point Space::ray_point(const Point& x, const IdealPoint& xi, double s) const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidInput("ray length must be a finite value >= 0");
  switch (kind_) {
    case SpaceKind::euclidean: {
      Point out = x;
      for (std::size_t i = 0; i < dim_; ++i) out.coords[i] += s * xi.direction[i];
      return out;
    }
    case SpaceKind::hyperbolic:
      return Point::at(hb::ray(x.coords, xi.direction, s));
    case SpaceKind::tree: {
      Point out;
      out.pos = tree_->ray(xi.end_leaf, x.pos, s);
      return out;
    }
  }
  return x;
}

double Space::ray_separation(const Point& x, const Point& y, const IdealPoint& xi, double s) const {
  switch (kind_) {
    case SpaceKind::euclidean:
      return distance(ray_point(x, xi, s), ray_point(y, xi, s));
    case SpaceKind::hyperbolic:
      return hb::ray_separation(x.coords, y.coords, xi.direction, s);
    case SpaceKind::tree:
      return tree_->ray_separation(xi.end_leaf, x.pos, y.pos, s);
  }
  return 0.0;
}

Point Space::random_point(std::uint64_t seed, double scale) const {
  if (!(scale > 0.0)) throw InvalidInput("random_point: scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind_) {
    case SpaceKind::euclidean: {
      auto dir = gaussian_direction(dim_, rng);
      const double r = scale * std::pow(unit(rng), 1.0 / static_cast<double>(dim_));
      for (double& c : dir) c *= r;
      return Point::at(std::move(dir));
    }
    case SpaceKind::hyperbolic: {
      const auto v = hb::random_unit_tangent(basepoint_.coords, rng);
      return Point::at(hb::exp_map(basepoint_.coords, v, scale * unit(rng)));
    }
    case SpaceKind::tree: {
      Point p;
      p.pos = tree_->random_pos(rng);
      if (tree_->distance(basepoint_.pos, p.pos) > scale)
        p.pos = tree_->walk(basepoint_.pos, p.pos, scale * unit(rng));
      return p;
    }
  }
  return basepoint_;
}

Point Space::random_step(const Point& x, double len, std::mt19937_64& rng) const {
  switch (kind_) {
    case SpaceKind::euclidean: {
      const auto dir = gaussian_direction(dim_, rng);
      Point out = x;
      for (std::size_t i = 0; i < dim_; ++i) out.coords[i] += len * dir[i];
      return out;
    }
    case SpaceKind::hyperbolic: {
      const auto v = hb::random_unit_tangent(x.coords, rng);
      return Point::at(hb::exp_map(x.coords, v, len));
    }
    case SpaceKind::tree: {
      Point out;
      out.pos = tree_->random_step(x.pos, len, rng);
      return out;
    }
  }
  return x;
}

IdealPoint Space::ideal_toward(const std::vector<double>& direction) const {
  IdealPoint xi;
  switch (kind_) {
    case SpaceKind::euclidean:
    case SpaceKind::hyperbolic: {
      if (direction.size() != dim_) throw InvalidInput("ideal direction must have dim entries");
      const double n = norm(direction);
      if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("ideal direction must be nonzero");
      std::vector<double> u(direction);
      for (double& c : u) c /= n;
      if (kind_ == SpaceKind::euclidean) {
        xi.direction = std::move(u);
        return xi;
      }
      std::vector<double> v(dim_ + 1, 1.0);
      std::copy(u.begin(), u.end(), v.begin() + 1);
      const double k = -hb::minkowski(basepoint_.coords, v);
      for (double& c : v) c /= k;
      xi.direction = std::move(v);
      return xi;
    }
    case SpaceKind::tree:
      if (tree_->ideal_leaves().empty()) throw InvalidInput("tree has no marked ideal leaves");
      xi.end_leaf = tree_->ideal_leaves().front();
      return xi;
  }
  return xi;
}

IdealPoint Space::ideal_end(std::size_t leaf) const {
  IdealPoint xi;
  xi.end_leaf = leaf;
  validate(xi, basepoint_);
  return xi;
}

std::optional<Point> Space::nearest_singular(const Point& x, double radius) const {
  if (kind_ != SpaceKind::tree) return std::nullopt;
  std::optional<Point> best;
  double best_d = radius;
  for (std::size_t v : tree_->branch_vertices()) {
    const double d = tree_->distance_to_vertex(x.pos, v);
    if (d <= best_d) {
      best_d = d;
      best = Point::on_edge(0, 0.0);
      best->pos = tree_->vertex_pos(v);
    }
  }
  return best;
}

}  // namespace hadamard
