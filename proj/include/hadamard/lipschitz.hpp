#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hadamard/barycenter.hpp"
#include "hadamard/horosphere.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct ScanParams {
  Space space;
  std::size_t n_points = 4;
  std::size_t samples = 500;
  double epsilon = 1e-2;
  std::uint64_t seed = 7;
  /// Radius around the basepoint from which sample points are drawn.
  double scale = 2.0;
  BarycenterOptions barycenter;
  // Selector scans only.
  bool smoothing = true;
  std::optional<IdealPoint> ideal;
  SelectOptions select;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
};

struct LipschitzRecord {
  std::size_t sample = 0;
  double in_disp = 0.0;
  double out_disp = 0.0;
  double ratio = 0.0;

  friend bool operator==(const LipschitzRecord&, const LipschitzRecord&) = default;
};

/// Ratios along the shrinking sequence eps, eps/2, ... for a body straddling a
/// branch vertex.
struct StraddleReport {
  std::vector<double> epsilons;
  std::vector<double> ratios;
  bool diverging = false;

  friend bool operator==(const StraddleReport&, const StraddleReport&) = default;
};

struct LipschitzReport {
  std::vector<LipschitzRecord> records;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::size_t failures = 0;
  /// Samples whose input displacement was exactly zero.
  std::size_t skipped = 0;
  std::optional<StraddleReport> straddle;

  friend bool operator==(const LipschitzReport&, const LipschitzReport&) = default;
};

/// Symmetric Hausdorff distance between the generator sets.
double hausdorff(const Space& space, const ConvexBody& a, const ConvexBody& b);

/// Shift one point of a random configuration by a geodesic step of length
/// epsilon; ratio = center displacement / point displacement.
LipschitzReport point_shift_scan(const ScanParams& params);

/// Change one mass m_k by +-epsilon * m_k; ratio = center displacement /
/// (|dm| * diameter / M).
LipschitzReport mass_shift_scan(const ScanParams& params);

/// Perturb every generator of a random body by at most epsilon; ratio =
/// selector displacement / Hausdorff distance. In a tree with smoothing off the
/// report also carries the branch-straddle sequence.
LipschitzReport selector_scan(const ScanParams& params);

/// The straddle family at the first branch vertex V of a tree: generators at
/// distance r on two branches pointing away from the end (a tie, selected at
/// V) against the same body with one generator moved eps closer to V.
StraddleReport branch_straddle(const Space& space, const IdealPoint& xi, const SelectOptions& opts,
                               int halvings = 4);

}  // namespace hadamard
