#pragma once

#include "setcalc/types.hpp"

namespace setcalc::nnls {

struct Result {
  Vector x;
  double residual_norm = 0.0;  // ||A x - b||_2
  int iterations = 0;
};

/// Solves  min ||A x - b||_2  s.t.  x >= 0, and, when `simplex_count` > 0,
/// sum_{i < simplex_count} x_i = 1.
///
/// Primal active-set method (Lawson-Hanson, extended with one affine
/// equality on a leading block of variables). Starts from a feasible point,
/// so every iterate is feasible and the residual decreases monotonically.
Result solve(const Matrix& A, const Vector& b, Eigen::Index simplex_count = 0);

}  // namespace setcalc::nnls
