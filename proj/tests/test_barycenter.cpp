#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "hadamard/barycenter.hpp"
#include "hadamard/errors.hpp"

using namespace hadamard;
using doctest::Approx;

namespace {

Point hyp(double t) { return Point::at({std::cosh(t), std::sinh(t), 0.0}); }

Configuration random_configuration(const Space& s, std::size_t n, std::uint64_t seed, double scale = 3.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.25, 4.0);
  Configuration X;
  for (std::size_t i = 0; i < n; ++i) X.push_back({s.random_point(rng(), scale), mass(rng)});
  return X;
}

}  // namespace

TEST_CASE("two_point_center examples") {
  const Space e = Space::euclidean(2);
  const Point mid = two_point_center(e, {Point::at({0, 0}), 1}, {Point::at({3, 0}), 1});
  CHECK(mid.coords[0] == Approx(1.5));
  const Point heavy = two_point_center(e, {Point::at({0, 0}), 1}, {Point::at({3, 0}), 2});
  CHECK(heavy.coords[0] == Approx(2.0));
  CHECK(heavy.coords[1] == Approx(0.0));

  const Space h = Space::hyperbolic(2);
  const Point hm = two_point_center(h, {hyp(0), 1}, {hyp(2), 1});
  CHECK(oracle::hyperbolic(hm.coords, hyp(1).coords) < 1e-14);

  CHECK_THROWS_AS(two_point_center(e, {Point::at({0, 0}), 0}, {Point::at({3, 0}), 1}), InvalidInput);
  CHECK_THROWS_AS(two_point_center(e, {Point::at({0, 0}), 1}, {Point::at({3, 0}), -2}), InvalidInput);
}

TEST_CASE("two_point_center is symmetric and divides in the mass proportion") {
  for (const Space& s : fixture::all_spaces()) {
    CAPTURE(s.name());
    const oracle::Metric d(s);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> mass(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
      const WeightedPoint a{s.random_point(rng(), 3.0), mass(rng)}, b{s.random_point(rng(), 3.0), mass(rng)};
      const Point c = two_point_center(s, a, b);
      CHECK(c == two_point_center(s, b, a));
      const double dab = d(a.point, b.point);
      CHECK(std::abs(d(a.point, c) * a.mass - d(c, b.point) * b.mass) <= 1e-9 * dab * (a.mass + b.mass));
      const double lambda = 1.0 + 9.0 * (i % 7);
      const Point scaled = two_point_center(s, {a.point, lambda * a.mass}, {b.point, lambda * b.mass});
      CHECK(d(c, scaled) <= 1e-9);
    }
  }
}

TEST_CASE("center_of_mass base cases") {
  const Space e = Space::euclidean(2);
  const BarycenterResult one = center_of_mass(e, {{Point::at({7, -2}), 5}});
  CHECK(one.center == Point::at({7, -2}));
  CHECK(one.iterations == 0);
  CHECK(one.converged);
  CHECK(one.diameter_trace == std::vector<double>{0.0});

  const Space h = Space::hyperbolic(2);
  const Configuration pair{{hyp(0), 1}, {hyp(2), 3}};
  const BarycenterResult two = center_of_mass(h, pair);
  CHECK(two.center == two_point_center(h, pair[0], pair[1]));
  CHECK(two.iterations == 0);

  const BarycenterResult tri =
      center_of_mass(e, {{Point::at({0, 0}), 1}, {Point::at({1, 0}), 1}, {Point::at({0, 1}), 1}});
  CHECK(tri.converged);
  CHECK(tri.iterations <= 1);
  CHECK(tri.center.coords[0] == Approx(1.0 / 3).epsilon(1e-12));
  CHECK(tri.center.coords[1] == Approx(1.0 / 3).epsilon(1e-12));
  CHECK(tri.diameter_trace.back() < 1e-8);
}

TEST_CASE("center_of_mass rejects invalid configurations") {
  const Space e = Space::euclidean(2);
  CHECK_THROWS_AS(center_of_mass(e, {}), InvalidInput);
  CHECK_THROWS_AS(center_of_mass(e, {{Point::at({0, 0}), 0.0}}), InvalidInput);
  CHECK_THROWS_AS(center_of_mass(e, {{Point::at({0, 0, 0}), 1.0}}), InvalidInput);
  CHECK_THROWS_AS(center_of_mass(e, random_configuration(e, 4, 1), {1e-8, 200, 3}), InvalidInput);
  CHECK_THROWS_AS(center_of_mass(e, random_configuration(e, 3, 1), {0.0, 200, 7}), InvalidInput);
}

TEST_CASE("leave_one_out_step") {
  const Space e = Space::euclidean(3);
  SUBCASE("equal masses collapse onto the centroid") {
    for (std::size_t n = 3; n <= 6; ++n) {
      Configuration X = random_configuration(e, n, 100 + n);
      for (auto& w : X) w.mass = 1.0;
      const auto mean = oracle::weighted_mean(X);
      const Configuration Y = leave_one_out_step(e, X);
      CHECK(config_diameter(e, Y) <= 1e-9 * config_diameter(e, X));
      for (const auto& w : Y) CHECK(oracle::euclid(w.point.coords, mean) <= 1e-12);
    }
  }
  SUBCASE("masses are relabelled and the total is preserved") {
    const Configuration X = random_configuration(e, 5, 7);
    const Configuration Y = leave_one_out_step(e, X);
    const double M = total_mass(X);
    for (std::size_t i = 0; i < X.size(); ++i) CHECK(Y[i].mass == Approx((M - X[i].mass) / 4.0));
    CHECK(total_mass(Y) == Approx(M));
    Configuration unit = X;
    for (auto& w : unit) w.mass = 1.0;
    for (const auto& w : leave_one_out_step(e, unit)) CHECK(w.mass == 1.0);
  }
  SUBCASE("hyperbolic steps contract") {
    const Space h = Space::hyperbolic(2);
    const Configuration X{{hyp(0), 1}, {Point::at({std::cosh(4.0), 0, std::sinh(4.0)}), 1}, {hyp(-4), 1}};
    CHECK(config_diameter(h, leave_one_out_step(h, X)) < config_diameter(h, X));
  }
  CHECK_THROWS_AS(leave_one_out_step(e, random_configuration(e, 2, 1)), InvalidInput);
}

TEST_CASE("config_diameter") {
  const Space e = Space::euclidean(2);
  CHECK(config_diameter(e, {{Point::at({1, 1}), 1}}) == 0.0);
  CHECK(config_diameter(e, {{Point::at({0, 0}), 1}, {Point::at({3, 0}), 1}, {Point::at({0, 4}), 1}}) ==
        Approx(5.0));
  const Space h = Space::hyperbolic(3);
  const Configuration X = random_configuration(h, 5, 3);
  for (const auto& a : X)
    for (const auto& b : X) CHECK(config_diameter(h, X) >= h.distance(a.point, b.point));
}

TEST_CASE("contraction and convergence in every space") {
  for (const Space& s : fixture::all_spaces()) {
    CAPTURE(s.name());
    for (std::uint64_t k = 0; k < 12; ++k) {
      const Configuration X = random_configuration(s, 3 + k % 4, 200 + k);
      CHECK(config_diameter(s, leave_one_out_step(s, X)) <= config_diameter(s, X) + 1e-12);
      const BarycenterResult r = center_of_mass(s, X);
      REQUIRE(r.converged);
      CHECK(r.diameter_trace.back() < 1e-8);
      CHECK(r.diameter_trace.size() == static_cast<std::size_t>(r.iterations) + 1);
      for (std::size_t i = 1; i < r.diameter_trace.size(); ++i)
        CHECK(r.diameter_trace[i] <= r.diameter_trace[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("permutation equivariance and mass scaling") {
  for (const Space& s : fixture::all_spaces()) {
    CAPTURE(s.name());
    const oracle::Metric d(s);
    std::mt19937_64 rng(31);
    for (std::uint64_t k = 0; k < 8; ++k) {
      Configuration X = random_configuration(s, 3 + k % 3, 300 + k);
      const Point c = center_of_mass(s, X).center;
      Configuration scaled = X;
      for (auto& w : scaled) w.mass *= 3.7;
      CHECK(d(c, center_of_mass(s, scaled).center) <= 1e-9);
      std::shuffle(X.begin(), X.end(), rng);
      CHECK(d(c, center_of_mass(s, X).center) <= 1e-8);
    }
  }
}

TEST_CASE("non-convergence is reported with the partial trace") {
  const Space h = Space::hyperbolic(2);
  const Configuration X = random_configuration(h, 4, 5);
  SUBCASE("sub-centers share the iteration budget") {
    const BarycenterResult r = center_of_mass(h, X, {1e-8, 1, 7});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.diameter_trace == std::vector<double>{config_diameter(h, X)});
    CHECK_THROWS_AS(leave_one_out_step(h, X, {1e-8, 1, 7}), ConvergenceError);
  }
  SUBCASE("outer loop out of iterations") {
    const BarycenterResult r = center_of_mass(h, X, {1e-300, 4, 7});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 4);
    CHECK(r.diameter_trace.size() == 5);
    CHECK(r.diameter_trace.back() < 1e-8);
  }
}

TEST_CASE("hull_sample stays inside the hull diameter") {
  const Space e = Space::euclidean(2);
  const Configuration seg{{Point::at({0, 0}), 1}, {Point::at({2, 0}), 1}};
  for (const Point& p : hull_sample(e, seg, 1, 3, 200)) {
    CHECK(p.coords[1] == 0.0);
    CHECK(p.coords[0] >= 0.0);
    CHECK(p.coords[0] <= 2.0);
  }
  CHECK(hull_sample(e, seg, 2, 9, 50) == hull_sample(e, seg, 2, 9, 50));
  CHECK_THROWS_AS(hull_sample(e, {seg[0]}, 1, 1), InvalidInput);

  for (const Space& s : fixture::all_spaces()) {
    CAPTURE(s.name());
    const oracle::Metric d(s);
    const Configuration X = random_configuration(s, 5, 41);
    const double diam = config_diameter(s, X);
    const auto pts = hull_sample(s, X, 3, 17, 300);
    double worst = 0, partner = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) worst = std::max(worst, d(pts[i], pts[j]));
      for (const auto& g : X) partner = std::max(partner, d(pts[i], g.point));
    }
    CHECK(worst <= diam + 1e-9);
    CHECK(partner <= diam + 1e-9);
  }
}
