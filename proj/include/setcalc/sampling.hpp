#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "setcalc/types.hpp"

namespace setcalc {

/// Seeded source of uniforms and normals with a platform-independent mapping
/// from raw 64-bit draws (the std distributions are implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  long long integer(long long lo, long long hi);
  double normal();
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Unit directions for one sphere: the 2*dim signed axes plus `count`
/// low-discrepancy directions (dim >= 2). In dimension 1 only {+1, -1}.
/// `layer` rotates the pattern so successive radii probe different directions.
std::vector<Point> sphere_directions(Eigen::Index dim, int count, std::uint64_t seed, int layer);

/// Number of worker threads used by the sampling drivers (default 1).
void set_parallelism(int threads);
int parallelism();

}  // namespace setcalc
