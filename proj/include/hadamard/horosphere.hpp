#pragma once

#include <vector>

#include "hadamard/barycenter.hpp"
#include "hadamard/point.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

/// A convex body given by finitely many generators; the body is their
/// geodesic hull, which is never materialized.
struct ConvexBody {
  std::vector<Point> generators;
};

/// Validates every generator and drops exact duplicates (after
/// canonicalization), keeping first occurrences in order.
ConvexBody make_body(const Space& space, std::vector<Point> generators);
double body_diameter(const Space& space, const ConvexBody& body);

/// The horosphere {x : b(x) = level} of an ideal point.
struct HorosphereLevel {
  IdealPoint ideal;
  double level = 0.0;
  Point basepoint;
};

struct FirstContact {
  HorosphereLevel horosphere;
  std::vector<Point> contact;
};

enum class ShrinkVerdict { shrinking, non_shrinking };

struct ShrinkClass {
  ShrinkVerdict verdict = ShrinkVerdict::non_shrinking;
  double max_limit_separation = 0.0;
  double probe_horizon = 0.0;
};

struct LimitSeparation {
  double value = 0.0;
  bool resolved = false;
  /// (s, separation) at s = 0 and along the geometric schedule 1, 2, 4, ...
  std::vector<std::pair<double, double>> probes;
};

struct SelectOptions {
  double horizon = 64.0;
  double classify_tol = 1e-6;
  bool smoothing = true;
  double snap_tol = 1e-4;
  BarycenterOptions barycenter;
};

/// Generators within this distance of the minimal Busemann level are contacts.
inline constexpr double kContactSlack = 1e-9;

/// The first horosphere {b = t*} met by the body as the horoballs {b <= t}
/// grow from t = -inf, together with the generators it touches.
FirstContact first_horosphere(const Space& space, const ConvexBody& body, const IdealPoint& xi,
                              const Point& origin);

/// Slide x along its ray towards xi until it reaches level t. Moving away from
/// xi is rejected.
Point project_to_level(const Space& space, const Point& x, const IdealPoint& xi, const Point& origin,
                       double t);

/// Probe s -> d(x(s), y(s)) for the rays towards xi on the schedule
/// 0, 1, 2, 4, ..., horizon. Throws GeometryError if the sequence increases.
LimitSeparation limit_separation(const Space& space, const Point& x, const Point& y,
                                 const IdealPoint& xi, double horizon, double tol);

/// Projects the generators onto their common first-contact horosphere and
/// takes the largest pairwise limit separation. Throws ConvergenceError when
/// some pair is unresolved at the horizon.
ShrinkClass classify_body(const Space& space, const ConvexBody& body, const IdealPoint& xi,
                          double horizon, double tol);

/// Returns the branch vertex within snap_tol of x if there is one; x otherwise.
Point snap_singular(const Space& space, const Point& x, double snap_tol);

/// The selector C -> f(C) with f({x}) = x.
Point select(const Space& space, const ConvexBody& body, const IdealPoint& xi, const Point& origin,
             const SelectOptions& opts = {});

}  // namespace hadamard
