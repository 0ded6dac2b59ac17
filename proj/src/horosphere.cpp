#include "hadamard/horosphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

constexpr double kMonotoneSlack = 1e-9;

std::vector<double> probe_schedule(double horizon) {
  std::vector<double> s{0.0};
  for (double t = 1.0; t <= horizon; t *= 2.0) s.push_back(t);
  if (s.back() < horizon) s.push_back(horizon);
  return s;
}

// Pairwise limit separations of points already on a common horosphere.
ShrinkClass classify_on_level(const Space& space, const std::vector<Point>& pts, const IdealPoint& xi,
                              double horizon, double tol) {
  ShrinkClass out;
  out.probe_horizon = horizon;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const LimitSeparation sep = limit_separation(space, pts[i], pts[j], xi, horizon, tol);
      if (!sep.resolved)
        throw ConvergenceError("limit separation of generators " + std::to_string(i) + " and " +
                               std::to_string(j) + " is unresolved at horizon " +
                               std::to_string(horizon));
      out.max_limit_separation = std::max(out.max_limit_separation, sep.value);
    }
  out.verdict = out.max_limit_separation < tol ? ShrinkVerdict::shrinking : ShrinkVerdict::non_shrinking;
  return out;
}

Point unit_mass_center(const Space& space, const std::vector<Point>& pts, const BarycenterOptions& opts) {
  Configuration X;
  for (const Point& p : pts) {
    auto same = std::find_if(X.begin(), X.end(), [&](const WeightedPoint& w) { return w.point == p; });
    if (same != X.end())
      same->mass += 1.0;
    else
      X.push_back({p, 1.0});
  }
  if (X.size() == 1) return X.front().point;
  const BarycenterResult r = center_of_mass(space, X, opts);
  if (!r.converged) throw ConvergenceError("selector barycenter did not converge");
  return r.center;
}

}  // namespace

ConvexBody make_body(const Space& space, std::vector<Point> generators) {
  if (generators.empty()) throw InvalidInput("convex body needs at least one generator");
  ConvexBody body;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    space.validate(generators[i]);
    Point p = space.canonical(std::move(generators[i]));
    if (std::find(body.generators.begin(), body.generators.end(), p) == body.generators.end())
      body.generators.push_back(std::move(p));
  }
  return body;
}

double body_diameter(const Space& space, const ConvexBody& body) {
  double d = 0.0;
  for (std::size_t i = 0; i < body.generators.size(); ++i)
    for (std::size_t j = i + 1; j < body.generators.size(); ++j)
      d = std::max(d, space.distance(body.generators[i], body.generators[j]));
  return d;
}

FirstContact first_horosphere(const Space& space, const ConvexBody& body, const IdealPoint& xi,
                              const Point& origin) {
  if (body.generators.empty()) throw InvalidInput("convex body needs at least one generator");
  std::vector<double> levels;
  levels.reserve(body.generators.size());
  for (const Point& g : body.generators) levels.push_back(space.busemann(xi, origin, g));
  const double lowest = *std::min_element(levels.begin(), levels.end());

  FirstContact out;
  out.horosphere = {xi, lowest, origin};
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] - lowest <= kContactSlack) out.contact.push_back(body.generators[i]);
  return out;
}

Point project_to_level(const Space& space, const Point& x, const IdealPoint& xi, const Point& origin,
                       double t) {
  const double b = space.busemann(xi, origin, x);
  if (t > b + kContactSlack)
    throw InvalidInput("project_to_level: target level lies above the point (would move away from the ideal point)");
  return space.ray_point(x, xi, std::max(0.0, b - t));
}

LimitSeparation limit_separation(const Space& space, const Point& x, const Point& y,
                                 const IdealPoint& xi, double horizon, double tol) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be positive");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  LimitSeparation out;
  for (double s : probe_schedule(horizon)) {
    const double d = space.ray_separation(x, y, xi, s);
    if (!out.probes.empty() && d > out.probes.back().second + kMonotoneSlack)
      throw GeometryError("ray separation increased from " + std::to_string(out.probes.back().second) +
                          " to " + std::to_string(d) + " at s = " + std::to_string(s));
    out.probes.emplace_back(s, d);
  }
  const double last = out.probes.back().second;
  const double prev = out.probes[out.probes.size() - 2].second;
  out.value = last;
  out.resolved = last < tol || std::abs(last - prev) < tol;
  return out;
}

ShrinkClass classify_body(const Space& space, const ConvexBody& body, const IdealPoint& xi,
                          double horizon, double tol) {
  const Point& origin = space.basepoint();
  const FirstContact fc = first_horosphere(space, body, xi, origin);
  std::vector<Point> projected;
  for (const Point& g : body.generators)
    projected.push_back(project_to_level(space, g, xi, origin, fc.horosphere.level));
  return classify_on_level(space, projected, xi, horizon, tol);
}

Point snap_singular(const Space& space, const Point& x, double snap_tol) {
  if (auto v = space.nearest_singular(x, snap_tol)) return *v;
  return x;
}

Point select(const Space& space, const ConvexBody& body, const IdealPoint& xi, const Point& origin,
             const SelectOptions& opts) {
  if (body.generators.size() == 1) return body.generators.front();

  const FirstContact fc = first_horosphere(space, body, xi, origin);
  std::vector<Point> projected;
  projected.reserve(body.generators.size());
  for (const Point& g : body.generators)
    projected.push_back(project_to_level(space, g, xi, origin, fc.horosphere.level));

  const ShrinkClass cls = classify_on_level(space, projected, xi, opts.horizon, opts.classify_tol);
  Point chosen;
  if (cls.verdict == ShrinkVerdict::shrinking)
    chosen = fc.contact.size() == 1 ? fc.contact.front()
                                    : unit_mass_center(space, fc.contact, opts.barycenter);
  else
    chosen = unit_mass_center(space, projected, opts.barycenter);

  return opts.smoothing ? snap_singular(space, chosen, opts.snap_tol) : chosen;
}

}  // namespace hadamard
