#pragma once

#include <cstdint>
#include <vector>

#include "setcalc/types.hpp"

namespace setcalc {

struct Box {
  Vector lower;
  Vector upper;

  bool contains(const Point& x, double tol = 1e-12) const;
  Eigen::Index dim() const { return lower.size(); }
};

/// The discretization behind every limit-based test: shrinking radii around
/// the base point, sample directions per sphere, and verdict thresholds.
struct SamplingSchedule {
  std::vector<double> radii;  // strictly decreasing, positive
  int samples_per_sphere = 16;
  double accept_tol = 1e-6;
  double reject_tol = 1e-3;
  std::uint64_t seed = 1;
  Box domain_box;
  int grid_points = 41;                         // per axis, minimality scans
  std::vector<double> eps_grid{0.1, 0.01, 0.001};  // continuity tests

  /// Radii 0.5 * 10^(-k/2), k = 0..13, and the box [-1, 1]^dim_x.
  static SamplingSchedule defaults(Eigen::Index dim_x);
  /// Throws InvalidArgument on a broken invariant.
  void validate() const;
};

/// Uniform grid of `points` per axis over the box (points >= 2), lexicographic order.
std::vector<Point> box_grid(const Box& box, int points);

}  // namespace setcalc
