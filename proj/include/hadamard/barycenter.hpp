#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hadamard/point.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct WeightedPoint {
  Point point;
  double mass = 1.0;
};

/// An ordered, nonempty set of weighted points of one space.
using Configuration = std::vector<WeightedPoint>;

struct BarycenterOptions {
  double tol = 1e-8;
  int max_iters = 200;
  // The leave-one-out recursion costs roughly n! sub-centers per step.
  std::size_t max_points = 7;
};

struct BarycenterResult {
  Point center;
  int iterations = 0;
  /// Configuration diameter before the first step and after every step.
  std::vector<double> diameter_trace;
  bool converged = false;
};

double total_mass(const Configuration& X);

/// Throws InvalidInput for an empty configuration, a nonpositive or
/// non-finite mass, or a point that does not belong to `space`.
void validate(const Space& space, const Configuration& X);

/// The point dividing [a, b] so that d(a, c) : d(c, b) = m_b : m_a. The result
/// does not depend on argument order.
Point two_point_center(const Space& space, const WeightedPoint& a, const WeightedPoint& b);

/// max_{i,j} d(x_i, x_j); by convexity this is also the diameter of the hull.
double config_diameter(const Space& space, const Configuration& X);

/// One round of the leave-one-out construction on n >= 3 points. Point i is
/// replaced by the center of (x_i, m_i) and (c_i, M - m_i), where c_i is the
/// center of mass of the other n - 1 points, and relabelled with mass
/// (M - m_i) / (n - 1). Throws ConvergenceError if a sub-center fails.
Configuration leave_one_out_step(const Space& space, const Configuration& X,
                                 const BarycenterOptions& opts = {});

/// Iterated center of mass. Non-convergence is reported through
/// `converged == false` together with the partial diameter trace.
BarycenterResult center_of_mass(const Space& space, const Configuration& X,
                                const BarycenterOptions& opts = {});

/// `count` points of the geodesic hull of X, produced by `depth` rounds of
/// random geodesic interpolation between already generated points.
std::vector<Point> hull_sample(const Space& space, const Configuration& X, int depth,
                               std::uint64_t seed, std::size_t count = 1000);

}  // namespace hadamard
