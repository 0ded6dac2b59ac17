#pragma once

// Closed-form geometry of the hyperboloid model
//   H^n = { x in R^{n+1} : <x,x> = -1, x0 > 0 },  <x,y> = -x0*y0 + sum_i xi*yi.
//
// Every routine treats the spatial coordinates x1..xn as authoritative and
// recomputes x0 = sqrt(1 + |xs|^2) on output, which keeps points on the sheet
// regardless of how far they sit from the origin.

#include <random>
#include <span>
#include <vector>

namespace hadamard::hyperboloid {

using Vec = std::vector<double>;

double minkowski(std::span<const double> x, std::span<const double> y);

/// Recompute the time coordinate from the spatial part.
void lift(Vec& x);

/// Relative deviation from the sheet, |<x,x> + 1| / max(1, x0^2).
double sheet_error(std::span<const double> x);

/// 4 sinh^2(d/2) evaluated without the cancellation of arcosh(-<x,y>).
double chord_sq(std::span<const double> x, std::span<const double> y);
double distance(std::span<const double> x, std::span<const double> y);

Vec geodesic(std::span<const double> x, std::span<const double> y, double t);

/// exp_x(r v) for a unit tangent vector v at x.
Vec exp_map(std::span<const double> x, std::span<const double> v, double r);

/// Orthonormal basis of the tangent space at x.
std::vector<Vec> tangent_basis(std::span<const double> x);
Vec random_unit_tangent(std::span<const double> x, std::mt19937_64& rng);

/// -<x, (1,u)> for the unit spatial direction u of a null vector, computed
/// stably when x lies far out towards u.
double horo_factor(std::span<const double> x, std::span<const double> null_vector);

/// Busemann function of the ideal point, normalized to vanish at `origin`.
double busemann(std::span<const double> null_vector, std::span<const double> origin,
                std::span<const double> x);

/// Point at arclength s along the ray from x to the ideal point.
Vec ray(std::span<const double> x, std::span<const double> null_vector, double s);

/// d(ray(x,s), ray(y,s)) in closed form; valid for arbitrarily large s.
double ray_separation(std::span<const double> x, std::span<const double> y,
                      std::span<const double> null_vector, double s);

}  // namespace hadamard::hyperboloid
