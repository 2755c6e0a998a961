#include "setcalc/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

namespace setcalc {

long long Rng::integer(long long lo, long long hi) {
  const auto span = static_cast<unsigned long long>(hi - lo) + 1ULL;
  return lo + static_cast<long long>(eng_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * v);
  has_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

double frac(double x) { return x - std::floor(x); }

// Random rotation from the QR factor of a Gaussian matrix.
Matrix random_rotation(Eigen::Index dim, Rng& rng) {
  Matrix G(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G);
  return qr.householderQ();
}

}  // namespace

std::vector<Point> sphere_directions(Eigen::Index dim, int count, std::uint64_t seed, int layer) {
  std::vector<Point> out;
  if (dim == 1) {
    out.push_back(make_vector({1.0}));
    out.push_back(make_vector({-1.0}));
    return out;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.push_back(Vector::Unit(dim, i));
    out.push_back(-Vector::Unit(dim, i));
  }
  Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(layer + 1)));
  if (dim == 2) {
    const double offset = rng.uniform();
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + offset) / count;
      out.push_back(make_vector({std::cos(t), std::sin(t)}));
    }
  } else if (dim == 3) {
    const Matrix Q = random_rotation(3, rng);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * std::numbers::pi * frac(k / golden);
      out.push_back(Q * make_vector({rho * std::cos(phi), rho * std::sin(phi), z}));
    }
  } else {
    for (int k = 0; k < count; ++k) {
      Point g(dim);
      for (Eigen::Index i = 0; i < dim; ++i) g[i] = rng.normal();
      out.push_back(g.normalized());
    }
  }
  return out;
}

namespace {
std::atomic<int> g_threads{1};
}

void set_parallelism(int threads) { g_threads = std::max(1, threads); }
int parallelism() { return g_threads.load(); }

}  // namespace setcalc
