#pragma once

// Brute-force reference computations used only by tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// max c.x s.t. Ax <= b, x >= 0 in two variables, by enumerating all pairwise
// intersections of the constraint lines (including the axes).
inline bool lp2_max(const Mat& A, const Vec& b, const Vec& c, double& best) {
  std::vector<Eigen::Vector3d> lines;
  for (int i = 0; i < A.rows(); ++i) lines.push_back({A(i, 0), A(i, 1), b[i]});
  lines.push_back({-1, 0, 0});
  lines.push_back({0, -1, 0});
  bool any = false;
  best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Eigen::Matrix2d M;
      M << lines[i][0], lines[i][1], lines[j][0], lines[j][1];
      if (std::abs(M.determinant()) < 1e-12) continue;
      Eigen::Vector2d x = M.inverse() * Eigen::Vector2d(lines[i][2], lines[j][2]);
      if (x[0] < -1e-9 || x[1] < -1e-9) continue;
      if (((A * x - b).array() > 1e-9).any()) continue;
      any = true;
      best = std::max(best, c.dot(x));
    }
  return any;
}

// min ||Ax - b|| over x >= 0 by enumerating every support set.
inline double nnls_exhaustive(const Mat& A, const Vec& b) {
  const int n = static_cast<int>(A.cols());
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) idx.push_back(j);
    Mat S(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) S.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    Vec z = S.completeOrthogonalDecomposition().solve(b);
    if ((z.array() < -1e-12).any()) continue;
    best = std::min(best, (S * z - b).norm());
  }
  return best;
}

// Distance from p to conv(V) + cone(R) in 2-D by dense sampling of the
// barycentric/conic parameters, refined by a local pattern search.
inline double dist2_grid(const Vec& p, const std::vector<Vec>& V, const std::vector<Vec>& R,
                         double rmax = 6.0) {
  const std::size_t nv = V.size(), nr = R.size();
  const std::size_t n = nv + nr;
  auto eval = [&](const std::vector<double>& t) {
    Vec q = Vec::Zero(p.size());
    double s = 0;
    for (std::size_t i = 0; i < nv; ++i) s += t[i];
    for (std::size_t i = 0; i < nv; ++i) q += (s > 0 ? t[i] / s : 1.0 / nv) * V[i];
    for (std::size_t j = 0; j < nr; ++j) q += t[nv + j] * R[j];
    return (q - p).norm();
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> bt(n, 0.0);
  for (int s = 0; s < 20000; ++s) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < nv; ++i) t[i] = U(rng);
    for (std::size_t j = 0; j < nr; ++j) t[nv + j] = (U(rng) < 0.2 ? 0.0 : U(rng) * rmax);
    const double d = eval(t);
    if (d < best) {
      best = d;
      bt = t;
    }
  }
  for (double step = 0.5; step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < n; ++i)
        for (double sgn : {-1.0, 1.0}) {
          auto t = bt;
          t[i] = std::max(0.0, t[i] + sgn * step);
          const double d = eval(t);
          if (d < best - 1e-15) {
            best = d;
            bt = t;
            improved = true;
          }
        }
    }
  }
  return best;
}

// Extreme rays of the dual of cone(G) in R^3 by testing every cross product of
// generator pairs.
inline std::vector<Vec> dual3_pairs(const std::vector<Vec>& G) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      Eigen::Vector3d a = G[i], b = G[j];
      Eigen::Vector3d c = a.cross(b);
      if (c.norm() < 1e-12) continue;
      c.normalize();
      for (double s : {1.0, -1.0}) {
        Vec y = s * c;
        bool ok = true;
        for (const auto& g : G)
          if (y.dot(g) < -1e-9) ok = false;
        if (!ok) continue;
        bool dup = false;
        for (const auto& o : out)
          if ((o - y).norm() < 1e-9) dup = true;
        if (!dup) out.push_back(y);
      }
    }
  return out;
}

}  // namespace oracle
