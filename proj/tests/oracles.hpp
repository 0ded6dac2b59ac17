#pragma once

// Reference formulas written independently of the library, used to check it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hadamard/barycenter.hpp"
#include "hadamard/space.hpp"

namespace oracle {

using hadamard::Point;

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (long double)(a[i] - b[i]) * (a[i] - b[i]);
  return (double)std::sqrt(s);
}

inline std::vector<double> weighted_mean(const hadamard::Configuration& X) {
  std::vector<long double> acc(X.front().point.coords.size(), 0.0L);
  long double M = 0;
  for (const auto& w : X) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += (long double)w.mass * w.point.coords[i];
    M += w.mass;
  }
  std::vector<double> out;
  for (long double v : acc) out.push_back((double)(v / M));
  return out;
}

inline long double minkowski(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = -(long double)x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += (long double)x[i] * y[i];
  return s;
}

// d = 2 asinh(|x - y|_M / 2), with |x - y|_M^2 = 4 sinh^2(d/2) >= 0 on the sheet.
inline double hyperbolic(const std::vector<double>& x, const std::vector<double>& y) {
  long double q = -(long double)(x[0] - y[0]) * (x[0] - y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) q += (long double)(x[i] - y[i]) * (x[i] - y[i]);
  return (double)(2.0L * std::asinh(std::sqrt(std::max(q, 0.0L)) / 2.0L));
}

// log(-<x, xi>) with xi = l (1, u): on the sheet x0 - p = (1 + |xs|^2 - p^2) / (x0 + p), p = xs.u,
// which avoids the cancellation of x0 - p far out towards xi. x0 is re-lifted from xs.
inline double hyperbolic_busemann(const std::vector<double>& xi, const std::vector<double>& x) {
  long double r2 = 0, p = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    r2 += (long double)x[i] * x[i];
    p += (long double)x[i] * xi[i] / xi[0];
  }
  const long double x0 = std::sqrt(1.0L + r2);
  const long double k = p > 0 ? (1.0L + r2 - p * p) / (x0 + p) : x0 - p;
  return (double)std::log(xi[0] * k);
}

// Point at arclength s on the geodesic from x towards the null direction xi.
inline std::vector<double> hyperbolic_ray(const std::vector<double>& x, const std::vector<double>& xi, double s) {
  const long double k = -minkowski(x, xi);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double v = xi[i] / k - x[i];
    out[i] = (double)(std::cosh((long double)s) * x[i] + std::sinh((long double)s) * v);
  }
  return out;
}

// Floyd-Warshall on the vertex graph plus endpoint enumeration for points.
class TreeMetric {
 public:
  explicit TreeMetric(const hadamard::MetricTree& t) : t_(t), n_(t.vertex_count()) {
    const double inf = std::numeric_limits<double>::infinity();
    d_.assign(n_ * n_, inf);
    for (std::size_t v = 0; v < n_; ++v) d_[v * n_ + v] = 0;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
      const auto& ed = t.edge(e);
      if (ed.ideal) continue;
      d_[ed.from * n_ + ed.to] = d_[ed.to * n_ + ed.from] = ed.length;
    }
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) d_[i * n_ + j] = std::min(d_[i * n_ + j], d_[i * n_ + k] + d_[k * n_ + j]);
  }

  double operator()(const hadamard::TreePos& p, const hadamard::TreePos& q) const {
    if (p.edge == q.edge) return std::abs(p.offset - q.offset);
    double best = std::numeric_limits<double>::infinity();
    for (auto [a, da] : ends(p))
      for (auto [b, db] : ends(q)) best = std::min(best, da + d_[a * n_ + b] + db);
    return best;
  }

 private:
  std::vector<std::pair<std::size_t, double>> ends(const hadamard::TreePos& p) const {
    const auto& ed = t_.edge(p.edge);
    if (ed.ideal) return {{ed.from, p.offset}};
    return {{ed.from, p.offset}, {ed.to, ed.length - p.offset}};
  }

  const hadamard::MetricTree& t_;
  std::size_t n_;
  std::vector<double> d_;
};

// Distance in any of the three spaces, computed without the library metric.
class Metric {
 public:
  explicit Metric(const hadamard::Space& s) : s_(s) {
    if (s.kind() == hadamard::SpaceKind::tree) tree_.emplace_back(s.tree_graph());
  }
  double operator()(const Point& x, const Point& y) const {
    switch (s_.kind()) {
      case hadamard::SpaceKind::euclidean:
        return euclid(x.coords, y.coords);
      case hadamard::SpaceKind::hyperbolic:
        return hyperbolic(x.coords, y.coords);
      case hadamard::SpaceKind::tree:
        return tree_.front()(x.pos, y.pos);
    }
    return 0;
  }
  // lim (d(x, ray(o, L)) - L), evaluated at a far point on the marked leaf edge.
  double busemann(const hadamard::IdealPoint& xi, const Point& x) const {
    const Point& o = s_.basepoint();
    switch (s_.kind()) {
      case hadamard::SpaceKind::euclidean: {
        long double b = 0;
        for (std::size_t i = 0; i < x.coords.size(); ++i) b -= (long double)(x.coords[i] - o.coords[i]) * xi.direction[i];
        return (double)b;
      }
      case hadamard::SpaceKind::hyperbolic:
        return hyperbolic_busemann(xi.direction, x.coords);
      case hadamard::SpaceKind::tree: {
        const auto& t = s_.tree_graph();
        const Point far = Point::on_edge(t.leaf_edge(xi.end_leaf), 1e4);
        return (*this)(x, far) - (*this)(o, far);
      }
    }
    return 0;
  }

 private:
  const hadamard::Space& s_;
  std::vector<TreeMetric> tree_;
};

}  // namespace oracle
