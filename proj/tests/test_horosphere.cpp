#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "hadamard/errors.hpp"
#include "hadamard/horosphere.hpp"

using namespace hadamard;
using doctest::Approx;

namespace {

Point P(double x, double y) { return Point::at({x, y}); }

Point along(const Space& t, const std::string& label, double from_first) {
  const MetricTree& g = t.tree_graph();
  const auto [e, reversed] = *g.find_edge(label);
  return t.canonical(Point::on_edge(e, reversed ? g.edge(e).length - from_first : from_first));
}

}  // namespace

TEST_CASE("make_body drops duplicates after canonicalization") {
  const Space t = fixture::tree();
  const ConvexBody b = make_body(t, {along(t, "A-B", 2.0), along(t, "B-C", 0.0), along(t, "B-C", 1.0)});
  CHECK(b.generators.size() == 2);
  CHECK_THROWS_AS(make_body(t, {}), InvalidInput);
  CHECK(body_diameter(t, b) == Approx(1.0));
}

TEST_CASE("first_horosphere") {
  const Space e = Space::euclidean(2);
  const IdealPoint u = e.ideal_toward({1, 0});
  const FirstContact fc = first_horosphere(e, make_body(e, {P(0, 0), P(2, 1)}), u, e.basepoint());
  CHECK(fc.horosphere.level == Approx(-2.0));
  REQUIRE(fc.contact.size() == 1);
  CHECK(fc.contact.front() == P(2, 1));

  const FirstContact single = first_horosphere(e, make_body(e, {P(3, 5)}), u, e.basepoint());
  CHECK(single.horosphere.level == Approx(-3.0));
  CHECK(single.contact.size() == 1);

  const FirstContact tie = first_horosphere(e, make_body(e, {P(1, 0), P(1, 4), P(1, -2)}), u, e.basepoint());
  CHECK(tie.contact.size() == 3);
}

TEST_CASE("project_to_level") {
  const Space e = Space::euclidean(2);
  const IdealPoint u = e.ideal_toward({1, 0});
  const Point p = project_to_level(e, P(0, 3), u, e.basepoint(), -2.0);
  CHECK(p.coords[0] == Approx(2.0));
  CHECK(p.coords[1] == Approx(3.0));
  CHECK(project_to_level(e, P(0, 3), u, e.basepoint(), 0.0) == P(0, 3));
  CHECK_THROWS_AS(project_to_level(e, P(0, 3), u, e.basepoint(), 1.0), InvalidInput);

  const Space h = Space::hyperbolic(3);
  const IdealPoint xi = fixture::default_ideal(h);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> drop(0.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const Point x = h.random_point(rng(), 3.0);
    const double t = h.busemann(xi, h.basepoint(), x) - drop(rng);
    const Point q = project_to_level(h, x, xi, h.basepoint(), t);
    CHECK(std::abs(oracle::hyperbolic_busemann(xi.direction, q.coords) - t) <= 1e-7);
    CHECK(oracle::hyperbolic(q.coords, project_to_level(h, q, xi, h.basepoint(), t).coords) <= 1e-9);
  }
}

TEST_CASE("limit_separation examples") {
  const Space e = Space::euclidean(2);
  const IdealPoint u = e.ideal_toward({1, 0});
  const LimitSeparation same = limit_separation(e, P(1, 1), P(1, 1), u, 64, 1e-6);
  CHECK(same.value == 0.0);
  CHECK(same.resolved);

  const LimitSeparation parallel = limit_separation(e, P(0, 0), P(0, 1), u, 64, 1e-6);
  CHECK(parallel.resolved);
  for (const auto& [s, d] : parallel.probes) CHECK(d == Approx(1.0).epsilon(1e-15));
  CHECK(parallel.probes.back().first == 64.0);
  CHECK(parallel.probes[1].first == 1.0);
  CHECK(parallel.probes[2].first == 2.0);

  // Points on a common horosphere within distance 1 merge by s = 40.
  const Space h = Space::hyperbolic(2);
  const IdealPoint xi = fixture::default_ideal(h);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Point x = h.random_point(rng(), 2.0);
    std::mt19937_64 step(rng());
    Point y = h.random_step(x, 1.0, step);
    const double bx = h.busemann(xi, h.basepoint(), x), by = h.busemann(xi, h.basepoint(), y);
    const Point xs = project_to_level(h, x, xi, h.basepoint(), std::min(bx, by));
    const Point ys = project_to_level(h, y, xi, h.basepoint(), std::min(bx, by));
    if (h.distance(xs, ys) > 1.0) continue;
    const LimitSeparation ls = limit_separation(h, xs, ys, xi, 40, 1e-6);
    CHECK(ls.value < 1e-6);
    CHECK(ls.resolved);
  }
}

TEST_CASE("limit_separation probes are nonincreasing") {
  for (const Space& s : fixture::all_spaces()) {
    CAPTURE(s.name());
    const IdealPoint xi = fixture::default_ideal(s);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      const Point x = s.random_point(rng(), 3.0), y = s.random_point(rng(), 3.0);
      const LimitSeparation ls = limit_separation(s, x, y, xi, 64, 1e-6);
      for (std::size_t k = 1; k < ls.probes.size(); ++k)
        CHECK(ls.probes[k].second <= ls.probes[k - 1].second + 1e-9);
    }
  }
}

TEST_CASE("flat horospheres keep their separation, hyperbolic ones merge") {
  const Space e = Space::euclidean(3);
  const IdealPoint u = e.ideal_toward({0, 0, 1});
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> c(-4, 4);
  for (int i = 0; i < 200; ++i) {
    const double level = c(rng);
    const Point x = Point::at({c(rng), c(rng), level}), y = Point::at({c(rng), c(rng), level});
    CHECK(limit_separation(e, x, y, u, 64, 1e-6).value == Approx(oracle::euclid(x.coords, y.coords)).epsilon(1e-12));
  }

  const Space h = Space::hyperbolic(3);
  const IdealPoint xi = fixture::default_ideal(h);
  for (int i = 0; i < 200; ++i) {
    const Point x = h.random_point(rng(), 3.0), y = h.random_point(rng(), 3.0);
    const double t = std::min(h.busemann(xi, h.basepoint(), x), h.busemann(xi, h.basepoint(), y));
    const Point xs = project_to_level(h, x, xi, h.basepoint(), t);
    const Point ys = project_to_level(h, y, xi, h.basepoint(), t);
    CHECK(limit_separation(h, xs, ys, xi, 64, 1e-6).value < 1e-6);
  }
}

TEST_CASE("classify_body") {
  const Space e = Space::euclidean(2);
  const IdealPoint u = e.ideal_toward({1, 0});
  const ShrinkClass flat = classify_body(e, make_body(e, {P(0, 0), P(1, 2), P(-1, 1)}), u, 64, 1e-6);
  CHECK(flat.verdict == ShrinkVerdict::non_shrinking);
  CHECK(flat.max_limit_separation == Approx(2.0));
  CHECK(flat.probe_horizon == 64.0);

  const Space h = Space::hyperbolic(2);
  const IdealPoint xi = fixture::default_ideal(h);
  std::vector<Point> g;
  for (std::uint64_t k = 0; k < 5; ++k) g.push_back(h.random_point(70 + k, 3.0));
  const ShrinkClass curved = classify_body(h, make_body(h, g), xi, 64, 1e-6);
  CHECK(curved.verdict == ShrinkVerdict::shrinking);
  CHECK(curved.max_limit_separation < 1e-6);

  const Space t = fixture::tree();
  const IdealPoint end = fixture::default_ideal(t);
  const ShrinkClass tree =
      classify_body(t, make_body(t, {along(t, "B-C", 1.0), along(t, "B-H", 0.5), along(t, "C-F", 1.5)}), end, 64, 1e-6);
  CHECK(tree.verdict == ShrinkVerdict::shrinking);
  CHECK(tree.max_limit_separation == 0.0);

  CHECK_THROWS_AS(classify_body(h, make_body(h, g), xi, 1, 1e-12), ConvergenceError);
}

TEST_CASE("snap_singular") {
  const Space e = Space::euclidean(2);
  CHECK(snap_singular(e, P(0.3, 0.4), 1e-4) == P(0.3, 0.4));

  const Space t = fixture::tree();
  const Point b = along(t, "A-B", 2.0);
  CHECK(snap_singular(t, along(t, "B-C", 0.5e-4), 1e-4) == b);
  CHECK(snap_singular(t, along(t, "A-B", 2.0 - 0.5e-4), 1e-4) == b);
  const Point mid = along(t, "B-C", 1.5);
  CHECK(snap_singular(t, mid, 1e-4) == mid);
  // D has degree 2 and is not singular.
  const Point near_d = along(t, "B-D", 1.5 - 1e-5);
  CHECK(snap_singular(t, near_d, 1e-4) == near_d);
}

TEST_CASE("select examples") {
  const Space e = Space::euclidean(2);
  const IdealPoint u = e.ideal_toward({1, 0});
  const ConvexBody square = make_body(e, {P(0, 0), P(1, 0), P(0, 1), P(1, 1)});
  const FirstContact fc = first_horosphere(e, square, u, e.basepoint());
  CHECK(fc.horosphere.level == Approx(-1.0));
  const Point f = select(e, square, u, e.basepoint());
  CHECK(f.coords[0] == Approx(1.0));
  CHECK(f.coords[1] == Approx(0.5));

  const Space t = fixture::tree();
  const IdealPoint end = fixture::default_ideal(t);
  const Point low = along(t, "B-H", 0.5);
  const ConvexBody two_branches = make_body(t, {along(t, "B-C", 1.0), low});
  CHECK(t.busemann(end, t.basepoint(), low) < t.busemann(end, t.basepoint(), two_branches.generators[0]));
  CHECK(select(t, two_branches, end, t.basepoint()) == low);

  for (const Space& s : fixture::all_spaces()) {
    const IdealPoint xi = fixture::default_ideal(s);
    for (std::uint64_t k = 0; k < 200; ++k) {
      const Point x = s.random_point(500 + k, 3.0);
      CHECK(select(s, make_body(s, {x}), xi, s.basepoint()) == x);
    }
  }
}

TEST_CASE("select ties in a shrinking body use the barycenter of the contacts") {
  const Space t = fixture::tree();
  const IdealPoint end = fixture::default_ideal(t);
  SelectOptions off;
  off.smoothing = false;
  const ConvexBody tie = make_body(t, {along(t, "B-C", 0.25), along(t, "B-H", 0.25)});
  const Point b = along(t, "A-B", 2.0);
  CHECK(t.distance(select(t, tie, end, t.basepoint(), off), b) <= 1e-12);
}
