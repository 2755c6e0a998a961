#include "setcalc/double_description.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace setcalc::dd {
namespace {

using Index = Eigen::Index;

struct Ray {
  Vector z;
  std::vector<int> zeros;  // sorted indices of processed constraints tight at z
};

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const std::vector<int>& super, const std::vector<int>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

ConeGenerators enumerate(const Matrix& A, double tol) {
  const Index d = A.cols();
  ConeGenerators out;
  if (d == 0) return out;

  // Split off the lineality space null(A).
  Matrix rows = A;
  for (Index i = 0; i < rows.rows(); ++i) {
    const double nrm = rows.row(i).norm();
    if (nrm > 0) rows.row(i) /= nrm;
  }
  Eigen::JacobiSVD<Matrix> svd(rows.rows() > 0 ? rows : Matrix::Zero(1, d), Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-9) ++rank;
  const Matrix V = svd.matrixV();
  for (Index j = rank; j < d; ++j) out.lineality.push_back(V.col(j));
  if (rank == 0) return out;
  const Matrix U = V.leftCols(rank);        // d x k, orthonormal row space basis
  const Matrix Ar = rows * U;               // m x k, full column rank
  const Index m = Ar.rows();
  const Index k = rank;

  // Initial simplicial cone from k linearly independent rows.
  std::vector<int> chosen;
  {
    Matrix basis(0, k);
    for (Index i = 0; i < m && static_cast<Index>(chosen.size()) < k; ++i) {
      Matrix trial(basis.rows() + 1, k);
      trial << basis, Ar.row(i);
      Eigen::FullPivLU<Matrix> lu(trial);
      lu.setThreshold(1e-9);
      if (lu.rank() == trial.rows()) {
        basis = trial;
        chosen.push_back(static_cast<int>(i));
      }
    }
  }
  Matrix S(k, k);
  for (Index r = 0; r < k; ++r) S.row(r) = Ar.row(chosen[static_cast<std::size_t>(r)]);
  const Matrix Sinv = S.inverse();

  std::vector<bool> processed(static_cast<std::size_t>(m), false);
  for (int c : chosen) processed[static_cast<std::size_t>(c)] = true;

  std::vector<Ray> rays;
  for (Index j = 0; j < k; ++j) {
    Ray r;
    r.z = Sinv.col(j).normalized();
    for (Index i = 0; i < m; ++i) {
      if (processed[static_cast<std::size_t>(i)] && std::abs(Ar.row(i).dot(r.z)) <= tol)
        r.zeros.push_back(static_cast<int>(i));
    }
    rays.push_back(std::move(r));
  }

  for (Index i = 0; i < m; ++i) {
    if (processed[static_cast<std::size_t>(i)]) continue;
    const Vector a = Ar.row(i).transpose();
    std::vector<std::size_t> pos, zer, neg;
    std::vector<double> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = a.dot(rays[r].z);
      if (val[r] > tol) {
        pos.push_back(r);
      } else if (val[r] < -tol) {
        neg.push_back(r);
      } else {
        zer.push_back(r);
      }
    }
    const int ci = static_cast<int>(i);
    std::vector<Ray> next;
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zer) {
      Ray q = rays[r];
      q.zeros.insert(std::upper_bound(q.zeros.begin(), q.zeros.end(), ci), ci);
      next.push_back(std::move(q));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        const auto common = intersect(rays[p].zeros, rays[q].zeros);
        if (static_cast<Index>(common.size()) < k - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != q && includes(rays[r].zeros, common)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.z = (val[p] * rays[q].z - val[q] * rays[p].z).normalized();
        nr.zeros = common;
        nr.zeros.insert(std::upper_bound(nr.zeros.begin(), nr.zeros.end(), ci), ci);
        next.push_back(std::move(nr));
      }
    }
    processed[static_cast<std::size_t>(i)] = true;
    rays.swap(next);
  }

  std::vector<Vector> result;
  for (const auto& r : rays) {
    Vector y = (U * r.z).normalized();
    bool dup = false;
    for (const auto& e : result)
      if ((e - y).norm() < 1e-9) dup = true;
    if (!dup) result.push_back(y);
  }
  std::sort(result.begin(), result.end(), [](const Vector& a, const Vector& b) { return lex_less(b, a); });
  out.rays = std::move(result);
  return out;
}

}  // namespace setcalc::dd
