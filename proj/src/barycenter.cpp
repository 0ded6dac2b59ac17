#include "hadamard/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

// Sub-centers are resolved more tightly than the outer loop.
constexpr double kSubCenterTolFactor = 1e-2;
constexpr double kSubCenterTolFloor = 1e-13;

}  // namespace

double total_mass(const Configuration& X) {
  double m = 0.0;
  for (const auto& w : X) m += w.mass;
  return m;
}

void validate(const Space& space, const Configuration& X) {
  if (X.empty()) throw InvalidInput("configuration must contain at least one point");
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (!(X[i].mass > 0.0) || !std::isfinite(X[i].mass))
      throw InvalidInput("points[" + std::to_string(i) + "].mass must be positive and finite");
    space.validate(X[i].point);
  }
}

Point two_point_center(const Space& space, const WeightedPoint& a, const WeightedPoint& b) {
  if (!(a.mass > 0.0) || !(b.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(b.mass))
    throw InvalidInput("two_point_center: masses must be positive and finite");
  // Fixed argument order makes the result exactly symmetric.
  if (b.point < a.point) return two_point_center(space, b, a);
  return space.geodesic_point(a.point, b.point, b.mass / (a.mass + b.mass));
}

double config_diameter(const Space& space, const Configuration& X) {
  double d = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j) d = std::max(d, space.distance(X[i].point, X[j].point));
  return d;
}

Configuration leave_one_out_step(const Space& space, const Configuration& X,
                                 const BarycenterOptions& opts) {
  const std::size_t n = X.size();
  if (n < 3) throw InvalidInput("leave_one_out_step needs at least 3 points");
  const double M = total_mass(X);
  Configuration out;
  out.reserve(n);
  Configuration rest;
  rest.reserve(n - 1);
  BarycenterOptions sub_opts = opts;
  sub_opts.tol = std::max(opts.tol * kSubCenterTolFactor, kSubCenterTolFloor);
  for (std::size_t i = 0; i < n; ++i) {
    rest.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) rest.push_back(X[j]);
    const BarycenterResult sub = center_of_mass(space, rest, sub_opts);
    if (!sub.converged)
      throw ConvergenceError("sub-center of " + std::to_string(n - 1) + " points did not converge");
    const double complement = M - X[i].mass;
    out.push_back({two_point_center(space, X[i], {sub.center, complement}),
                   complement / static_cast<double>(n - 1)});
  }
  return out;
}

BarycenterResult center_of_mass(const Space& space, const Configuration& X,
                                const BarycenterOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (opts.max_iters < 1) throw InvalidInput("max_iters must be positive");
  validate(space, X);
  if (X.size() > opts.max_points)
    throw InvalidInput("configuration has " + std::to_string(X.size()) + " points; the limit is " +
                       std::to_string(opts.max_points));

  BarycenterResult result;
  if (X.size() == 1) {
    result.center = X.front().point;
    result.diameter_trace = {0.0};
    result.converged = true;
    return result;
  }
  if (X.size() == 2) {
    result.center = two_point_center(space, X[0], X[1]);
    result.diameter_trace = {0.0};
    result.converged = true;
    return result;
  }

  Configuration current = X;
  result.diameter_trace.push_back(config_diameter(space, current));
  while (result.diameter_trace.back() >= opts.tol) {
    if (result.iterations == opts.max_iters) {
      result.center = current.front().point;
      return result;
    }
    try {
      current = leave_one_out_step(space, current, opts);
    } catch (const ConvergenceError&) {
      result.center = current.front().point;
      return result;
    }
    ++result.iterations;
    result.diameter_trace.push_back(config_diameter(space, current));
  }
  result.center = current.front().point;
  result.converged = true;
  return result;
}

std::vector<Point> hull_sample(const Space& space, const Configuration& X, int depth,
                               std::uint64_t seed, std::size_t count) {
  if (X.size() < 2) throw InvalidInput("hull_sample needs at least 2 points");
  if (depth < 1) throw InvalidInput("hull_sample depth must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Point> pool;
  for (const auto& w : X) pool.push_back(w.point);
  std::vector<Point> round;
  for (int r = 0; r < depth; ++r) {
    round.clear();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t k = 0; k < count; ++k) {
      const Point& a = pool[pick(rng)];
      const Point& b = pool[pick(rng)];
      round.push_back(space.geodesic_point(a, b, unit(rng)));
    }
    pool.insert(pool.end(), round.begin(), round.end());
  }
  return round;
}

}  // namespace hadamard
