#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "setcalc/errors.hpp"

namespace setcalc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point of a finite-dimensional Euclidean space.
using Point = Vector;

inline void require_dim(const Vector& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(dim) +
                            ", got " + std::to_string(v.size()));
  }
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Lexicographic order with exact comparison; used only to make output order stable.
inline bool lex_less(const Vector& a, const Vector& b) {
  const auto n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

/// Dense bounded linear operator X -> Y, stored as a dim_y x dim_x matrix.
class LinOp {
 public:
  LinOp() = default;
  explicit LinOp(Matrix m) : m_(std::move(m)) {
    if (!m_.allFinite()) throw InvalidArgument("LinOp: non-finite entry");
  }
  static LinOp zero(Eigen::Index dim_y, Eigen::Index dim_x) {
    return LinOp(Matrix::Zero(dim_y, dim_x));
  }

  Eigen::Index dim_x() const { return m_.cols(); }
  Eigen::Index dim_y() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  Vector apply(const Vector& x) const {
    require_dim(x, dim_x(), "LinOp::apply");
    return m_ * x;
  }
  /// Largest singular value.
  double operator_norm() const;

  LinOp operator+(const LinOp& o) const;
  LinOp operator-(const LinOp& o) const;
  LinOp operator*(double s) const { return LinOp(m_ * s); }

 private:
  Matrix m_;
};

}  // namespace setcalc
