#include "setcalc/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace setcalc::nnls {
namespace {

using Index = Eigen::Index;

// Least squares over the passive set P. When P contains simplex variables,
// the equality sum = 1 is eliminated by expressing the anchor variable
// through the others.
Vector solve_passive(const Matrix& A, const Vector& b, const std::vector<Index>& passive,
                     Index simplex_count) {
  const Index n = A.cols();
  Vector z = Vector::Zero(n);
  Index anchor = -1;
  for (Index j : passive)
    if (j < simplex_count) {
      anchor = j;
      break;
    }
  std::vector<Index> free_cols;
  for (Index j : passive)
    if (j != anchor) free_cols.push_back(j);

  Vector rhs = b;
  if (anchor >= 0) rhs -= A.col(anchor);
  if (free_cols.empty()) {
    if (anchor >= 0) z[anchor] = 1.0;
    return z;
  }
  Matrix M(A.rows(), static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Index j = free_cols[k];
    M.col(static_cast<Index>(k)) = A.col(j);
    if (anchor >= 0 && j < simplex_count) M.col(static_cast<Index>(k)) -= A.col(anchor);
  }
  const Vector y = M.completeOrthogonalDecomposition().solve(rhs);
  double sum = 0.0;
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    z[free_cols[k]] = y[static_cast<Index>(k)];
    if (free_cols[k] < simplex_count) sum += y[static_cast<Index>(k)];
  }
  if (anchor >= 0) z[anchor] = 1.0 - sum;
  return z;
}

}  // namespace

Result solve(const Matrix& A, const Vector& b, Index simplex_count) {
  if (A.rows() != b.size()) throw DimensionMismatch("nnls::solve: rows of A vs size of b");
  if (simplex_count < 0 || simplex_count > A.cols())
    throw InvalidArgument("nnls::solve: bad simplex block size");
  const Index n = A.cols();
  Result out;
  out.x = Vector::Zero(n);
  if (n == 0) {
    out.residual_norm = b.norm();
    return out;
  }

  std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
  std::vector<Index> passive;
  if (simplex_count > 0) {
    Index best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < simplex_count; ++j) {
      const double v = (A.col(j) - b).squaredNorm();
      if (v < best_val) {
        best_val = v;
        best = j;
      }
    }
    out.x[best] = 1.0;
    in_passive[static_cast<std::size_t>(best)] = true;
    passive.push_back(best);
  }

  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300) *
                       std::max({A.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  const double tol = 1e-13 * scale * static_cast<double>(n);
  const int max_outer = static_cast<int>(3 * n + 30);

  for (int outer = 0; outer < max_outer; ++outer) {
    out.iterations = outer + 1;
    const Vector w = A.transpose() * (b - A * out.x);
    double nu = 0.0;
    int count = 0;
    for (Index j : passive)
      if (j < simplex_count) {
        nu += w[j];
        ++count;
      }
    if (count > 0) nu /= count;

    Index enter = -1;
    double best = tol;
    for (Index j = 0; j < n; ++j) {
      if (in_passive[static_cast<std::size_t>(j)]) continue;
      const double score = (j < simplex_count) ? w[j] - nu : w[j];
      if (score > best) {
        best = score;
        enter = j;
      }
    }
    if (enter < 0) break;
    in_passive[static_cast<std::size_t>(enter)] = true;
    passive.push_back(enter);

    bool entered_ok = true;
    for (int inner = 0; inner < max_outer; ++inner) {
      const Vector z = solve_passive(A, b, passive, simplex_count);
      bool positive = true;
      for (Index j : passive)
        if (z[j] <= 0.0) positive = false;
      if (positive) {
        out.x = z;
        break;
      }
      if (inner == 0 && z[enter] <= 0.0) {
        // The entering column cannot improve the fit numerically; stop.
        in_passive[static_cast<std::size_t>(enter)] = false;
        passive.erase(std::find(passive.begin(), passive.end(), enter));
        entered_ok = false;
        break;
      }
      double alpha = 1.0;
      for (Index j : passive) {
        if (z[j] <= 0.0) {
          const double denom = out.x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, out.x[j] / denom);
        }
      }
      out.x += alpha * (z - out.x);
      std::vector<Index> kept;
      for (Index j : passive) {
        if (out.x[j] <= 1e-15) {
          out.x[j] = 0.0;
          in_passive[static_cast<std::size_t>(j)] = false;
        } else {
          kept.push_back(j);
        }
      }
      passive.swap(kept);
      if (simplex_count > 0) {
        bool has_simplex = false;
        for (Index j : passive) has_simplex |= (j < simplex_count);
        if (!has_simplex) {
          // Numerical drift dropped every convex weight; restore the largest.
          Index jmax = 0;
          for (Index j = 1; j < simplex_count; ++j)
            if (out.x[j] > out.x[jmax]) jmax = j;
          in_passive[static_cast<std::size_t>(jmax)] = true;
          passive.push_back(jmax);
        }
      }
    }
    if (!entered_ok) break;
  }
  if (simplex_count > 0) {
    const double s = out.x.head(simplex_count).sum();
    if (s > 0.0) out.x.head(simplex_count) /= s;
  }
  out.residual_norm = (A * out.x - b).norm();
  return out;
}

}  // namespace setcalc::nnls
