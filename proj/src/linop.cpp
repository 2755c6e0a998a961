#include "setcalc/types.hpp"

namespace setcalc {

double LinOp::operator_norm() const {
  if (m_.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m_);
  return svd.singularValues()(0);
}

LinOp LinOp::operator+(const LinOp& o) const {
  if (o.dim_x() != dim_x() || o.dim_y() != dim_y())
    throw DimensionMismatch("LinOp::operator+: shapes differ");
  return LinOp(m_ + o.m_);
}

LinOp LinOp::operator-(const LinOp& o) const {
  if (o.dim_x() != dim_x() || o.dim_y() != dim_y())
    throw DimensionMismatch("LinOp::operator-: shapes differ");
  return LinOp(m_ - o.m_);
}

}  // namespace setcalc
