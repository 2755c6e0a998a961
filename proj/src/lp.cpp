#include "setcalc/lp.hpp"

#include <limits>
#include <utility>

namespace setcalc::lp {
namespace {

// Tableau simplex in the dictionary form popularised by competitive
// programming notebooks: D has m+2 rows (constraints, objective, phase-1
// objective) and n+2 columns (variables, artificial, rhs).
class Tableau {
 public:
  Tableau(const Matrix& A, const Vector& b, const Vector& c, double eps)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(eps),
        N_(n_ + 1),
        B_(m_),
        D_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_[i][j] = A(i, j);
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      D_[i][n_] = -1;
      D_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_[m_][j] = -c[j];
    }
    N_[n_] = -1;
    D_[m_ + 1][n_] = 1;
  }

  Solution run() {
    Solution out;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
    if (m_ > 0 && D_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      if (!simplex(2) || D_[m_ + 1][n_ + 1] < -eps_) {
        out.status = Status::infeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (B_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j) pick(D_[i], j, s);
          pivot(i, s);
        }
      }
    }
    const bool bounded = simplex(1);
    out.x = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_ && B_[i] >= 0) out.x[B_[i]] = D_[i][n_ + 1];
    if (!bounded) {
      out.status = Status::unbounded;
      out.objective = std::numeric_limits<double>::infinity();
      return out;
    }
    out.status = Status::optimal;
    out.objective = D_[m_][n_ + 1];
    return out;
  }

 private:
  void pick(const std::vector<double>& row, int j, int& s) const {
    if (s == -1 || std::make_pair(row[j], N_[j]) < std::make_pair(row[s], N_[s])) s = j;
  }

  void pivot(int r, int s) {
    const double inv = 1.0 / D_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(D_[i][s]) <= eps_) continue;
      const double inv2 = D_[i][s] * inv;
      for (int j = 0; j < n_ + 2; ++j) D_[i][j] -= D_[r][j] * inv2;
      D_[i][s] = D_[r][s] * inv2;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) D_[i][s] *= -inv;
    D_[r][s] = inv;
    std::swap(B_[r], N_[s]);
  }

  bool simplex(int phase) {
    const int x = m_ + phase - 1;
    // Bland's rule guarantees termination; the cap only guards against
    // pathological floating point cycling.
    for (int iter = 0; iter < 50000; ++iter) {
      int s = -1;
      for (int j = 0; j <= n_; ++j)
        if (N_[j] != -phase) pick(D_[x], j, s);
      if (D_[x][s] >= -eps_) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] <= eps_) continue;
        if (r == -1 || std::make_pair(D_[i][n_ + 1] / D_[i][s], B_[i]) <
                           std::make_pair(D_[r][n_ + 1] / D_[r][s], B_[r]))
          r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    return true;
  }

  int m_, n_;
  double eps_;
  std::vector<int> N_, B_;
  std::vector<std::vector<double>> D_;
};

}  // namespace

Solution maximize_standard(const Matrix& A, const Vector& b, const Vector& c, double eps) {
  if (A.rows() != b.size() || A.cols() != c.size())
    throw DimensionMismatch("lp::maximize_standard: inconsistent shapes");
  Tableau t(A, b, c, eps);
  return t.run();
}

int Problem::add_variable(bool nonnegative) {
  nonneg_.push_back(nonnegative);
  return num_variables() - 1;
}

int Problem::add_variables(int count, bool nonnegative) {
  const int first = num_variables();
  for (int i = 0; i < count; ++i) nonneg_.push_back(nonnegative);
  return first;
}

void Problem::add_constraint(const Vector& coeffs, Sense sense, double rhs) {
  if (coeffs.size() > num_variables())
    throw DimensionMismatch("lp::Problem: constraint wider than variable count");
  rows_.push_back({coeffs, sense, rhs});
}

void Problem::set_objective(const Vector& coeffs, bool maximize) {
  objective_ = coeffs;
  maximize_ = maximize;
}

Solution Problem::solve(double eps) const {
  const int nv = num_variables();
  // Column map: free variable v -> (v+, v-).
  std::vector<int> pos(nv), neg(nv, -1);
  int ncols = 0;
  for (int v = 0; v < nv; ++v) {
    pos[v] = ncols++;
    if (!nonneg_[v]) neg[v] = ncols++;
  }
  int nrows = 0;
  for (const auto& r : rows_) nrows += (r.sense == Sense::equal) ? 2 : 1;

  Matrix A = Matrix::Zero(nrows, ncols);
  Vector b = Vector::Zero(nrows);
  int i = 0;
  auto emit = [&](const Vector& coeffs, double sign, double rhs) {
    for (Eigen::Index v = 0; v < coeffs.size(); ++v) {
      A(i, pos[v]) += sign * coeffs[v];
      if (neg[v] >= 0) A(i, neg[v]) -= sign * coeffs[v];
    }
    b[i] = sign * rhs;
    ++i;
  };
  for (const auto& r : rows_) {
    switch (r.sense) {
      case Sense::less_equal: emit(r.coeffs, 1.0, r.rhs); break;
      case Sense::greater_equal: emit(r.coeffs, -1.0, r.rhs); break;
      case Sense::equal:
        emit(r.coeffs, 1.0, r.rhs);
        emit(r.coeffs, -1.0, r.rhs);
        break;
    }
  }
  Vector c = Vector::Zero(ncols);
  const double sign = maximize_ ? 1.0 : -1.0;
  for (Eigen::Index v = 0; v < objective_.size(); ++v) {
    c[pos[v]] += sign * objective_[v];
    if (neg[v] >= 0) c[neg[v]] -= sign * objective_[v];
  }

  Solution raw = maximize_standard(A, b, c, eps);
  Solution out;
  out.status = raw.status;
  if (raw.status == Status::infeasible) return out;
  out.x = Vector::Zero(nv);
  for (int v = 0; v < nv; ++v) {
    out.x[v] = raw.x[pos[v]] - (neg[v] >= 0 ? raw.x[neg[v]] : 0.0);
  }
  if (raw.status == Status::unbounded) {
    out.objective = maximize_ ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
  } else {
    out.objective = sign * raw.objective;
  }
  return out;
}

bool Problem::feasible(double eps) const {
  Problem copy = *this;
  copy.set_objective(Vector::Zero(num_variables()), true);
  return copy.solve(eps).status != Status::infeasible;
}

}  // namespace setcalc::lp
