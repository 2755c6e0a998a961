#pragma once

// Dense simplex kernel for the tiny linear programs that back membership,
// cone containment and separation tests (tens of variables at most).

#include <vector>

#include "setcalc/types.hpp"

namespace setcalc::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  Vector x;
};

/// maximize c.x  s.t.  A x <= b,  x >= 0.
/// Bland-style tie breaking, two phases. `eps` is the pivoting tolerance.
Solution maximize_standard(const Matrix& A, const Vector& b, const Vector& c, double eps = 1e-9);

enum class Sense { less_equal, greater_equal, equal };

/// Builder for LPs with free and nonnegative variables and mixed constraint senses.
class Problem {
 public:
  /// Adds a variable; returns its index.
  int add_variable(bool nonnegative = true);
  int add_variables(int count, bool nonnegative = true);
  int num_variables() const { return static_cast<int>(nonneg_.size()); }

  /// Sparse-ish row given as dense coefficients over all variables added so far
  /// (shorter rows are zero padded).
  void add_constraint(const Vector& coeffs, Sense sense, double rhs);
  void set_objective(const Vector& coeffs, bool maximize);

  /// Solves the LP. Values of free variables are reconstructed.
  Solution solve(double eps = 1e-9) const;
  bool feasible(double eps = 1e-9) const;

 private:
  struct Row {
    Vector coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<bool> nonneg_;
  std::vector<Row> rows_;
  Vector objective_;
  bool maximize_ = true;
};

}  // namespace setcalc::lp
