#pragma once

// Set optimization with the lower set less relation: l-minima, ideal minima,
// penalization by the distance to a constraint set, and the Fermat-type
// necessary condition that follows from it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setcalc/subdiff.hpp"

namespace setcalc {

/// M as a union of polyhedral pieces; no pieces means the whole space.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<ConicPolytope> pieces);

  bool whole_space() const { return pieces_.empty(); }
  const std::vector<ConicPolytope>& pieces() const { return pieces_; }
  bool contains(const Point& x, double tol = 1e-9) const;
  /// Euclidean distance d_M(x).
  double distance(const Point& x) const;
  /// x in M and not isolated in M (some piece through x has a second point).
  bool accumulation_point(const Point& x) const;
  /// Box grid points that lie in M.
  std::vector<Point> grid(const Box& box, int points) const;

 private:
  std::vector<ConicPolytope> pieces_;
};

struct PenalizationConfig {
  double ell = 1.0;
  double mu = 0.0;
  Direction e;
  double radius = 0.5;

  void validate(const PolyCone& K) const;
};

/// A <=_K^l B  iff  B inside A + K.
bool l_leq(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K, double tol = 1e-6);

enum class MinimalityKind { l_min, ideal_min };
const char* to_string(MinimalityKind k);

struct MinimalityWitness {
  Point x;
  std::string reason;
};

struct MinimalityReport {
  MinimalityKind kind = MinimalityKind::l_min;
  Status status = Status::inconclusive;
  std::vector<MinimalityWitness> witnesses;
  std::size_t points_checked = 0;
  double epsilon = 0.0;
  double grid_step = 0.0;
  /// Ideal minima only: F(x) inside F(xbar) + K at every checked point.
  std::optional<bool> dominated_by_value;
};

/// Local l-minimality over the grid points of M within B(xbar, eps).
MinimalityReport check_l_min(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar, double eps,
                             const SamplingSchedule& s);
/// Local ideal minimality: some a in F(xbar) with F(x) inside a + K for every
/// grid point x of M within B(xbar, eps); decided by one LP per point.
MinimalityReport check_ideal_min(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar, double eps,
                                 const SamplingSchedule& s);

/// Exists a in A with B inside a + K (exact LP, infinity-norm slack tol).
bool ideal_dominates(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K, double tol = 1e-6);

/// eps* = min over vertices a of A of max over vertices d of D of d(a - d, -K).
/// Throws PreconditionFailed when some a has a - d in -K for every d.
double robustness_margin(const ConicPolytope& A, const ConicPolytope& D, const PolyCone& K);

/// G(x) = F(x) + ell d_M(x) e.
SetValuedMap penalize(const SetValuedMap& F, const ConstraintSet& M, const PenalizationConfig& cfg);
/// F(x) - mu |x - xbar| e + (ell + mu) d_M(x) e.
SetValuedMap penalize_sharp(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar,
                            const PenalizationConfig& cfg);
/// F(x) - mu |x - xbar| e.
SetValuedMap sharp_shift(const SetValuedMap& F, const Point& xbar, const PenalizationConfig& cfg);

struct PenalizationReport {
  MinimalityReport constrained_ideal;    // (a) on M, eps = r
  Verdict lipschitz;                     // (b) u outside M, v in M, both within B(xbar, r)
  MinimalityReport unconstrained_ideal;  // (c) penalized map on the box, eps = r / 3
  /// (a) and (b) accepted imply (c) accepted.
  bool implication_holds = true;
};

PenalizationReport verify_penalization(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar,
                                       const PenalizationConfig& cfg, const SamplingSchedule& s);

struct IdealPoint {
  Point x;
  double merit = 0.0;
  MinimalityReport report;
};

/// Grid points of M that are local ideal minima at the finest radius (one grid
/// step), sorted by merit (min over dual generators of inf y*(F(x))), then lexicographically.
std::vector<IdealPoint> solve_ideal(const SetValuedMap& F, const ConstraintSet& M, const SamplingSchedule& s);
/// Neighbourhood radius used by solve_ideal: one grid step along the box diagonal direction.
double finest_epsilon(const SamplingSchedule& s);

struct NecessaryConditionRow {
  ScalarFunctional y;
  Vector w;
  bool feasible = false;
};

struct NecessaryConditionReport {
  std::string header;
  PenalizationReport precondition;  // for the sharp-shifted map
  bool conditional = false;         // some precondition not accepted
  std::vector<NecessaryConditionRow> rows;
  Status status = Status::inconclusive;
  double grid_step = 0.0;
};

/// mu y*(e) w in S_F + (ell + mu) y*(e) S_d for y* in K_e+ and w = +-e_i, with
/// grid subdifferentials S_F of y* o F and S_d of d_M at xbar.
NecessaryConditionReport necessary_condition_report(const SetValuedMap& F, const ConstraintSet& M,
                                                    const Point& xbar, const PenalizationConfig& cfg,
                                                    const SamplingSchedule& s);

}  // namespace setcalc
