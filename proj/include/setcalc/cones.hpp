#pragma once

// Polyhedral ordering cones K = cone(G) and their duals
// K+ = { y : y.g >= 0 for all g in K }.

#include <optional>
#include <vector>

#include "setcalc/geometry.hpp"

namespace setcalc {

/// A linear functional y* on Y, stored by its coefficient vector.
struct ScalarFunctional {
  Vector weights;
  double norm = 0.0;

  ScalarFunctional() = default;
  explicit ScalarFunctional(Vector w) : weights(std::move(w)), norm(weights.norm()) {}
  double operator()(const Vector& y) const { return weights.dot(y); }
};

/// The distinguished direction e in K \ {0}.
struct Direction {
  Vector vector;
};

class PolyCone {
 public:
  /// Generators must be nonzero and span a pointed cone. `dual_generators`,
  /// when given, is trusted as a generating set of K+ after a sign check.
  PolyCone(Eigen::Index dim, std::vector<Point> generators,
           std::optional<std::vector<Point>> dual_generators = std::nullopt);

  static PolyCone orthant(Eigen::Index dim);
  /// K = {0}.
  static PolyCone trivial(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Point>& generators() const { return generators_; }
  bool user_duals() const { return user_duals_; }
  /// rank(generators) == dim.
  bool full_dimensional() const;
  bool contains(const Point& p, double tol = 1e-9) const;

  /// The cone as a set: cone(generators) with apex 0.
  ConicPolytope as_set() const;

  /// Lazily computed generators of K+ (unit norm).
  const std::vector<ScalarFunctional>& duals() const;

 private:
  Eigen::Index dim_;
  std::vector<Point> generators_;
  bool user_duals_ = false;
  mutable std::optional<std::vector<ScalarFunctional>> duals_;
};

/// Generators of K+: trivial in dimension 1, angular in dimension 2, double
/// description in dimension 3. Larger dimensions need user-supplied duals.
std::vector<ScalarFunctional> dual_generators(const PolyCone& K);

/// Dual generators with |y*(e)| > tol. Never empty for e in K \ {0}.
std::vector<ScalarFunctional> k_e_plus(const PolyCone& K, const Direction& e, double tol = 1e-12);

/// p in int K with margin: y*.p >= tol * |y*| for every dual generator.
bool interior_member(const Point& p, const PolyCone& K, double tol = 1e-7);

struct DualComparison {
  ScalarFunctional functional;
  SupportMin min_a;
  SupportMin min_b;
  bool holds = false;
};

struct InclusionCheck {
  bool strict = false;
  /// A subset of B + K (strict: B + int K).
  bool direct = false;
  /// inf y*(A) >= inf y*(B) for every y* in K+ \ {0} (strict: >), decided exactly.
  bool scalarized = false;
  /// The same comparison restricted to the generators of K+.
  bool generators_only = false;
  std::vector<DualComparison> per_generator;
  /// A functional in K+ violating the scalarized comparison, if any.
  std::optional<Vector> separating_functional;
  /// A vertex of A outside B + K, if any.
  std::optional<Point> outside_vertex;
};

/// min over vertices a of A of max over b in B of min_j y*_j.(a - b), over the
/// unit dual generators y*_j, capped at 1. Positive iff A lies in B + int K;
/// -infinity when a ray of A escapes the recession cone of B + K.
double strict_inclusion_margin(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K);

InclusionCheck scalarized_inclusion_check(const ConicPolytope& A, const ConicPolytope& B,
                                          const PolyCone& K, bool strict = false,
                                          double tol = 1e-8);

/// Halfspaces { x : normal.x + offset >= 0 } whose intersection is
/// conv(V) + cone(R) for a single-piece set (affine hull included as pairs).
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};
std::vector<Halfspace> facets(const ConicPolytope& S);

}  // namespace setcalc
