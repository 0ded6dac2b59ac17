#include "hadamard/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

enum class Outcome { recorded, failed, skipped };

struct SampleResult {
  Outcome outcome = Outcome::failed;
  LipschitzRecord record;
};

using SampleFn = std::function<SampleResult(std::size_t, std::mt19937_64&)>;

void check(const ScanParams& p, std::size_t min_points) {
  if (p.n_points < min_points)
    throw InvalidInput("scan needs n_points >= " + std::to_string(min_points));
  if (p.samples < 1) throw InvalidInput("scan needs samples >= 1");
  if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) throw InvalidInput("scan needs epsilon > 0");
}

LipschitzReport run_samples(const ScanParams& params, const SampleFn& fn) {
  std::vector<SampleResult> results(params.samples);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < params.samples; i += stride) {
      std::mt19937_64 rng(params.seed ^ static_cast<std::uint64_t>(i));
      try {
        results[i] = fn(i, rng);
      } catch (const Error&) {
        results[i] = {Outcome::failed, {}};
      }
    }
  };
  const unsigned threads = std::max(1u, params.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  LipschitzReport report;
  double sum = 0.0;
  for (const SampleResult& r : results) {
    switch (r.outcome) {
      case Outcome::recorded:
        report.records.push_back(r.record);
        report.max_ratio = std::max(report.max_ratio, r.record.ratio);
        sum += r.record.ratio;
        break;
      case Outcome::failed:
        ++report.failures;
        break;
      case Outcome::skipped:
        ++report.skipped;
        break;
    }
  }
  if (!report.records.empty()) report.mean_ratio = sum / static_cast<double>(report.records.size());
  return report;
}

Configuration draw_configuration(const ScanParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  Configuration X;
  for (std::size_t j = 0; j < p.n_points; ++j) {
    Point x = p.space.random_point(rng(), p.scale);
    X.push_back({std::move(x), mass(rng)});
  }
  return X;
}

SampleResult ratio_of(std::size_t sample, double in, double out) {
  if (in == 0.0) return {Outcome::skipped, {}};
  const double ratio = out / in;
  if (!std::isfinite(ratio)) return {Outcome::failed, {}};
  return {Outcome::recorded, {sample, in, out, ratio}};
}

IdealPoint scan_ideal(const ScanParams& p) {
  if (p.ideal) return *p.ideal;
  std::vector<double> e1(p.space.dim(), 0.0);
  e1[0] = 1.0;
  return p.space.ideal_toward(e1);
}

}  // namespace

double hausdorff(const Space& space, const ConvexBody& a, const ConvexBody& b) {
  auto directed = [&](const ConvexBody& from, const ConvexBody& to) {
    double worst = 0.0;
    for (const Point& p : from.generators) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Point& q : to.generators) nearest = std::min(nearest, space.distance(p, q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

LipschitzReport point_shift_scan(const ScanParams& params) {
  check(params, 2);
  return run_samples(params, [&](std::size_t i, std::mt19937_64& rng) -> SampleResult {
    const Configuration X = draw_configuration(params, rng);
    std::uniform_int_distribution<std::size_t> pick(0, X.size() - 1);
    const std::size_t k = pick(rng);
    Configuration Y = X;
    Y[k].point = params.space.random_step(X[k].point, params.epsilon, rng);
    const double in = params.space.distance(X[k].point, Y[k].point);
    if (in == 0.0) return {Outcome::skipped, {}};
    const auto c = center_of_mass(params.space, X, params.barycenter);
    const auto c2 = center_of_mass(params.space, Y, params.barycenter);
    if (!c.converged || !c2.converged) return {Outcome::failed, {}};
    return ratio_of(i, in, params.space.distance(c.center, c2.center));
  });
}

LipschitzReport mass_shift_scan(const ScanParams& params) {
  check(params, 2);
  return run_samples(params, [&](std::size_t i, std::mt19937_64& rng) -> SampleResult {
    const Configuration X = draw_configuration(params, rng);
    std::uniform_int_distribution<std::size_t> pick(0, X.size() - 1);
    const std::size_t k = pick(rng);
    std::bernoulli_distribution negative(0.5);
    double delta = params.epsilon * X[k].mass;
    if (negative(rng) && X[k].mass - delta > 0.0) delta = -delta;
    Configuration Y = X;
    Y[k].mass += delta;
    const double in = std::abs(delta) * config_diameter(params.space, X) / total_mass(X);
    if (in == 0.0) return {Outcome::skipped, {}};
    const auto c = center_of_mass(params.space, X, params.barycenter);
    const auto c2 = center_of_mass(params.space, Y, params.barycenter);
    if (!c.converged || !c2.converged) return {Outcome::failed, {}};
    return ratio_of(i, in, params.space.distance(c.center, c2.center));
  });
}

LipschitzReport selector_scan(const ScanParams& params) {
  check(params, 1);
  const IdealPoint xi = scan_ideal(params);
  params.space.validate(xi, params.space.basepoint());
  SelectOptions opts = params.select;
  opts.smoothing = params.smoothing;
  opts.barycenter = params.barycenter;
  const Point& origin = params.space.basepoint();

  LipschitzReport report = run_samples(params, [&](std::size_t i, std::mt19937_64& rng) -> SampleResult {
    std::vector<Point> gens, moved;
    for (std::size_t j = 0; j < params.n_points; ++j)
      gens.push_back(params.space.random_point(rng(), params.scale));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const Point& g : gens) moved.push_back(params.space.random_step(g, params.epsilon * unit(rng), rng));
    const ConvexBody C = make_body(params.space, gens);
    const ConvexBody C2 = make_body(params.space, moved);
    const double in = hausdorff(params.space, C, C2);
    if (in == 0.0) return {Outcome::skipped, {}};
    const Point f = select(params.space, C, xi, origin, opts);
    const Point f2 = select(params.space, C2, xi, origin, opts);
    return ratio_of(i, in, params.space.distance(f, f2));
  });

  if (params.space.kind() == SpaceKind::tree && !params.smoothing)
    report.straddle = branch_straddle(params.space, xi, opts);
  return report;
}

StraddleReport branch_straddle(const Space& space, const IdealPoint& xi, const SelectOptions& opts,
                               int halvings) {
  const MetricTree& tree = space.tree_graph();
  space.validate(xi, space.basepoint());
  const auto branches = tree.branch_vertices();
  if (branches.empty()) throw InvalidInput("branch_straddle: tree has no vertex of degree >= 3");
  const std::size_t v = branches.front();

  // The edge at v that leads towards the end; the straddle uses two others.
  const std::size_t leaf_edge = tree.leaf_edge(xi.end_leaf);
  const std::size_t anchor = tree.edge(leaf_edge).from;
  std::vector<std::size_t> away;
  for (std::size_t e : tree.incident(v)) {
    const auto& edge = tree.edge(e);
    const std::size_t w = edge.from == v ? edge.to : edge.from;
    const bool towards_end =
        e == leaf_edge || (v != anchor && tree.vertex_distance(w, anchor) < tree.vertex_distance(v, anchor));
    if (!towards_end) away.push_back(e);
  }

  auto along = [&](std::size_t e, double r) {
    const auto& edge = tree.edge(e);
    Point p;
    p.pos = tree.canonical({e, edge.from == v ? r : edge.length - r});
    return p;
  };
  const double r = std::min(0.5 * opts.snap_tol,
                            0.25 * std::min(tree.edge(away[0]).length, tree.edge(away[1]).length));

  const Point& origin = space.basepoint();
  const ConvexBody tie = make_body(space, {along(away[0], r), along(away[1], r)});
  const Point at_tie = select(space, tie, xi, origin, opts);

  StraddleReport out;
  for (int j = 0; j <= halvings; ++j) {
    const double eps = 0.4 * r / std::ldexp(1.0, j);
    const ConvexBody moved = make_body(space, {along(away[0], r - eps), along(away[1], r)});
    const double h = hausdorff(space, tie, moved);
    out.epsilons.push_back(eps);
    out.ratios.push_back(space.distance(at_tie, select(space, moved, xi, origin, opts)) / h);
  }
  out.diverging = out.ratios.front() > 0.0;
  for (std::size_t j = 1; j < out.ratios.size(); ++j)
    out.diverging = out.diverging && out.ratios[j] >= 2.0 * out.ratios[j - 1];
  return out;
}

}  // namespace hadamard
