#pragma once

// Membership tests for Frechet (upper, limiting) subgradients of set-valued
// maps, and checkers for the calculus rules built on them.

#include <optional>
#include <utility>
#include <vector>

#include "setcalc/maps.hpp"

namespace setcalc {

/// ratio(r) = sup_{|x - xbar| = r} e(Epi F(x), Epi F(xbar) + T(x - xbar)) / r.
Verdict frechet_member(const SetValuedMap& F, const Point& xbar, const LinOp& T, const SamplingSchedule& s);
/// Same with the excess arguments swapped.
Verdict upper_frechet_member(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                             const SamplingSchedule& s);

/// 1-D Frechet test of y*.T against the minimal function x -> inf y*(F(x)).
Verdict scalarization_forward(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                              const ScalarFunctional& y, const SamplingSchedule& s);

struct ConverseCheck {
  bool applicable = false;
  std::string reason;  // why not applicable
  /// Dual generators of K followed by the unit facet normals of F(xbar) + K.
  std::vector<ScalarFunctional> family;
  std::vector<Verdict> per_functional;
  /// Per radius, the worst normalized scalar deficit over the whole family.
  Verdict combined;
  Verdict frechet;
  /// false when the family accepts with a shared schedule but the vector test rejects.
  bool consistent = true;
};

/// Converse direction: scalar tests for a finite family of functionals with one
/// shared radius schedule, compared with frechet_member. Requires F(xbar) + K
/// to be convex.
ConverseCheck scalarization_converse(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                     const SamplingSchedule& s);

struct FormulaCheck {
  bool holds = true;
  double worst_excess = 0.0;  // +infinity allowed
  std::optional<Point> witness;
  Verdict precondition;  // upper K-convexity
};

/// F(x) inside F(xbar) + T(x - xbar) + K for every grid point of the domain box.
/// Throws PreconditionFailed unless test_upper_k_convex accepts (when checked).
FormulaCheck convex_subdiff_formula_check(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                          const SamplingSchedule& s, bool check_precondition = true);
/// The limiting subdifferential has the same description for upper K-convex maps.
FormulaCheck limiting_convex_formula_check(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                           const SamplingSchedule& s, bool check_precondition = true);

/// { s : normals[i].s <= offsets[i] }.
struct ScalarSubdiffPoly {
  Eigen::Index dim = 0;
  std::vector<Vector> normals;
  std::vector<double> offsets;
  double grid_step = 0.0;

  bool contains(const Vector& sv, double tol = 1e-9) const;
  bool empty() const;
  /// Bounds along coordinate i (may be infinite). Empty optional when the set is empty.
  std::optional<std::pair<double, double>> range(Eigen::Index i) const;
};

/// { s : s.(x - xbar) <= f(x) - f(xbar) for every grid x }.
ScalarSubdiffPoly scalar_grid_subdiff(const ExtendedScalar& f, const Point& xbar, const Box& box, int points);

/// P inside Q, by one LP per halfspace of Q.
bool poly_subset(const ScalarSubdiffPoly& P, const ScalarSubdiffPoly& Q, double tol = 1e-9);
/// t in sum_i coef_i * P_i (LP feasibility).
bool minkowski_member(const Vector& t, const std::vector<std::pair<double, const ScalarSubdiffPoly*>>& terms,
                      double tol = 1e-9);

struct SumRuleReport {
  Verdict precondition;
  /// Set when component operators were supplied and both are accepted.
  std::optional<bool> trivial_inclusion;
  std::vector<ScalarFunctional> duals;
  std::vector<bool> decomposition;
  double grid_step = 0.0;
  // Hypotheses of the limiting variant.
  std::optional<Verdict> upper_continuity;
  std::optional<Verdict> k_lipschitz;

  bool holds() const;
};

/// Sum rule for T in the Frechet subdifferential of F1 + F2: y*.T must split
/// over the grid subdifferentials of y* o F1 and y* o F2 for every dual generator.
SumRuleReport sum_rule_check(const SetValuedMap& F1, const SetValuedMap& F2, const Point& xbar, const LinOp& T,
                             const SamplingSchedule& s,
                             const std::optional<std::pair<LinOp, LinOp>>& parts = std::nullopt,
                             bool enforce_precondition = true);

/// Limiting variant: F1 u.c. and F2 K-Lipschitz (constant L along e) around
/// xbar; decomposition over a local box of half-width radii[0].
SumRuleReport limiting_sum_rule_check(const SetValuedMap& F1, const SetValuedMap& F2, const Point& xbar,
                                      const LinOp& T, double L, const Direction& e, const SamplingSchedule& s,
                                      bool enforce_precondition = true);

struct RadstromReport {
  bool hypothesis = false;
  bool conclusion = false;
  double hypothesis_excess = 0.0;
  std::optional<Point> failing_vertex;
};

/// Conic cancellation: A + C inside C + B + K should force A inside conv(B) + K.
/// C must be K-bounded (rays in K) unless the check is disabled.
RadstromReport radstrom_check(const ConicPolytope& A, const ConicPolytope& B, const ConicPolytope& C,
                              const PolyCone& K, double accept_tol = 1e-6, bool enforce_precondition = true);

struct LimitWitness {
  std::vector<Point> xs;
  std::vector<LinOp> Ts;
  Point xbar;
  LinOp T;
};

struct LimitingReport {
  Verdict verdict;  // curve: radius = |x_n - xbar|, ratio = max(epi excess, operator gap)
  std::vector<Verdict> stepwise;
  std::vector<double> epi_excess;
  std::vector<double> operator_gap;
};

/// Certificate check for the limiting subdifferential: Frechet membership
/// along the sequence, Epi-convergence of the values and T_n -> T.
LimitingReport limiting_member_verify(const SetValuedMap& F, const LimitWitness& w, const SamplingSchedule& s);

/// x -> (x*.x) e.
LinOp phi_e_subgradient_map(const Vector& xstar, const Direction& e);

/// |y* o T| <= y*(e) + tol for every dual generator with y*(e) != 0.
bool norm_e_dual_bound_check(const LinOp& T, const Direction& e, const PolyCone& K, double tol = 1e-6);

struct DifferenceRuleReport {
  Verdict difference;  // T for F - phi e
  Verdict t_check;     // t for phi e
  std::optional<Verdict> phi_subgradient;
  std::vector<ScalarFunctional> functionals;
  std::vector<Verdict> inner;
  Status status = Status::inconclusive;
};

/// For each y* in K_e+: T + y*(e)^-1 e (y* o t) must be a Frechet subgradient of F.
DifferenceRuleReport difference_rule_check(const SetValuedMap& F, const ScalarPtr& phi, const Direction& e,
                                           const Point& xbar, const LinOp& T, const LinOp& t,
                                           const SamplingSchedule& s,
                                           const std::optional<Vector>& phi_subgradient = std::nullopt);

}  // namespace setcalc
