#include "hadamard/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hadamard::hyperboloid {

namespace {

double spatial_dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double time_of(std::span<const double> x) { return std::sqrt(1.0 + spatial_dot(x, x)); }

// Unit spatial direction of a null vector.
Vec null_direction(std::span<const double> xi) {
  Vec u(xi.begin() + 1, xi.end());
  const double n = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
  for (double& c : u) c /= n;
  return u;
}

}  // namespace

double minkowski(std::span<const double> x, std::span<const double> y) {
  return -x[0] * y[0] + spatial_dot(x, y);
}

void lift(Vec& x) { x[0] = time_of(x); }

double sheet_error(std::span<const double> x) {
  return std::abs(minkowski(x, x) + 1.0) / std::max(1.0, x[0] * x[0]);
}

double chord_sq(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  Vec diff(n), sum(n);
  for (std::size_t i = 1; i < n; ++i) {
    diff[i] = x[i] - y[i];
    sum[i] = x[i] + y[i];
  }
  const double wn = std::sqrt(spatial_dot(sum, sum));
  const double dd = spatial_dot(diff, diff);
  if (wn < 1e-300) return dd;

  // Split the spatial difference along w = xs + ys. With a = (x0 - y0)/|w|,
  //   Q = (|diff_perp|^2 + 4 a^2) / (1 - a^2)
  // which has no subtractive cancellation for nearby points far from the origin.
  const double tsum = time_of(x) + time_of(y);
  const double par = spatial_dot(diff, sum) / wn;
  double perp_sq = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double c = diff[i] - par * sum[i] / wn;
    perp_sq += c * c;
  }
  const double a = par / tsum;
  return (perp_sq + 4.0 * a * a) / ((1.0 - a) * (1.0 + a));
}

double distance(std::span<const double> x, std::span<const double> y) {
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord_sq(x, y))));
}

Vec geodesic(std::span<const double> x, std::span<const double> y, double t) {
  const double d = distance(x, y);
  if (d == 0.0 || t == 0.0) return Vec(x.begin(), x.end());
  if (t == 1.0) return Vec(y.begin(), y.end());
  const double sd = std::sinh(d);
  const double a = std::sinh((1.0 - t) * d) / sd;
  const double b = std::sinh(t * d) / sd;
  Vec out(x.size());
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  lift(out);
  return out;
}

Vec exp_map(std::span<const double> x, std::span<const double> v, double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  Vec out(x.size());
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = c * x[i] + s * v[i];
  lift(out);
  return out;
}

std::vector<Vec> tangent_basis(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<Vec> basis;
  basis.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    // Minkowski projection of e_i onto x^perp: e_i + <e_i,x> x.
    Vec w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = x[i] * x[j];
    w[i] += 1.0;
    for (const Vec& b : basis) {
      const double c = minkowski(w, b);
      for (std::size_t j = 0; j < n; ++j) w[j] -= c * b[j];
    }
    const double nrm = std::sqrt(minkowski(w, w));
    for (double& c : w) c /= nrm;
    basis.push_back(std::move(w));
  }
  return basis;
}

Vec random_unit_tangent(std::span<const double> x, std::mt19937_64& rng) {
  const auto basis = tangent_basis(x);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec g(basis.size());
  double nrm = 0.0;
  do {
    nrm = 0.0;
    for (double& c : g) {
      c = gauss(rng);
      nrm += c * c;
    }
  } while (nrm < 1e-24);
  nrm = std::sqrt(nrm);
  Vec v(x.size(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += g[k] / nrm * basis[k][j];
  return v;
}

double horo_factor(std::span<const double> x, std::span<const double> null_vector) {
  const Vec u = null_direction(null_vector);
  double p = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) p += x[i] * u[i - 1];
  const double x0 = time_of(x);
  if (p <= 0.0) return x0 - p;
  // x0 - p = (x0^2 - p^2)/(x0 + p) = (1 + |xs_perp|^2)/(x0 + p)
  double perp_sq = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double c = x[i] - p * u[i - 1];
    perp_sq += c * c;
  }
  return (1.0 + perp_sq) / (x0 + p);
}

double busemann(std::span<const double> null_vector, std::span<const double> origin,
                std::span<const double> x) {
  return std::log(horo_factor(x, null_vector)) - std::log(horo_factor(origin, null_vector));
}

Vec ray(std::span<const double> x, std::span<const double> null_vector, double s) {
  if (s == 0.0) return Vec(x.begin(), x.end());
  const Vec u = null_direction(null_vector);
  const double k = horo_factor(x, null_vector);
  const double decay = std::exp(-s);
  const double lead = std::sinh(s) / k;
  Vec out(x.size());
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = decay * x[i] + lead * u[i - 1];
  lift(out);
  return out;
}

double ray_separation(std::span<const double> x, std::span<const double> y,
                      std::span<const double> null_vector, double s) {
  // 4 sinh^2(d_s/2) = e^{-2s} 4 sinh^2(d_0/2) + (1 - e^{-2s}) 4 sinh^2(db/2)
  const double q0 = chord_sq(x, y);
  const double db = std::log(horo_factor(x, null_vector)) - std::log(horo_factor(y, null_vector));
  const double sh = std::sinh(0.5 * db);
  const double far = 4.0 * sh * sh;
  const double q = std::exp(-2.0 * s) * q0 - std::expm1(-2.0 * s) * far;
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, q)));
}

}  // namespace hadamard::hyperboloid
