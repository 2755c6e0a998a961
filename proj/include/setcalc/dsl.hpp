#pragma once

// Problem files: spaces, ordering cone, set-valued maps as expression trees,
// candidate operators and the sampling schedule. Format: docs/format.md.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setcalc/cones.hpp"
#include "setcalc/geometry.hpp"
#include "setcalc/schedule.hpp"

namespace setcalc {

struct ScalarExpr;
struct MapExpr;
using ScalarPtr = std::shared_ptr<const ScalarExpr>;
using MapPtr = std::shared_ptr<const MapExpr>;

struct ScalarExpr {
  enum class Kind { constant, coord, affine, norm, dist_to_set, min, max, sum, scale, product, ref };
  Kind kind = Kind::constant;
  double value = 0.0;                 // constant value, scale factor, affine offset
  int index = 0;                      // coord
  Vector w;                           // affine weights, norm center
  std::vector<ConicPolytope> pieces;  // dist_to_set
  std::vector<ScalarPtr> children;
  std::string name;                   // ref
  mutable ScalarPtr target;           // ref, resolved after parsing
};

struct MapExpr {
  enum class Kind { const_set, epi, sum, affine_arg, scalar_dir, scale, branch, ref };
  Kind kind = Kind::const_set;
  std::optional<ConicPolytope> set;  // const_set
  std::vector<Point> rays;           // epi: the cone generators appended
  std::vector<MapPtr> children;      // epi/scale: 1; sum: n; branch: {nonneg_child, neg_child}
  Matrix T;                          // affine_arg
  Vector b;                          // affine_arg offset, scalar_dir direction
  ScalarPtr scalar;                  // scalar_dir value, branch guard
  double lambda = 1.0;               // scale
  std::string name;                  // ref
  mutable MapPtr target;
};

namespace expr {
ScalarPtr constant(double c);
ScalarPtr coord(int i);
ScalarPtr affine(Vector w, double c);
/// |x - center|
ScalarPtr norm(Vector center);
ScalarPtr dist_to_set(std::vector<ConicPolytope> pieces);
ScalarPtr min(std::vector<ScalarPtr> children);
ScalarPtr max(std::vector<ScalarPtr> children);
ScalarPtr sum(std::vector<ScalarPtr> children);
ScalarPtr scale(double c, ScalarPtr child);
ScalarPtr product(std::vector<ScalarPtr> children);

MapPtr const_set(ConicPolytope s);
MapPtr epi(MapPtr child, const PolyCone& K);
MapPtr sum(std::vector<MapPtr> children);
MapPtr affine_arg(Matrix T, Vector b);
MapPtr scalar_dir(ScalarPtr s, Vector e);
MapPtr scale(double lambda, MapPtr child);
/// guard(x) > 0 selects nonneg_child, otherwise neg_child.
MapPtr branch(ScalarPtr guard, MapPtr nonneg_child, MapPtr neg_child);
}  // namespace expr

ConicPolytope eval_map(const MapExpr& e, const Point& x);
double eval_scalar(const ScalarExpr& e, const Point& x);

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

template <class T>
const T* find_named(const Named<T>& list, const std::string& name) {
  for (const auto& [n, v] : list)
    if (n == name) return &v;
  return nullptr;
}

struct PenalizationSpec {
  double ell = 1.0;
  double mu = 0.0;
  double radius = 0.5;
};

struct ProblemFile {
  std::string name;
  Eigen::Index dim_x = 1;
  Eigen::Index dim_y = 1;
  std::vector<Point> cone_generators;
  std::optional<std::vector<Point>> cone_dual_generators;
  std::optional<Direction> direction_e;
  Named<MapPtr> maps;
  Named<ScalarPtr> scalars;
  std::vector<ConicPolytope> constraint_set;  // empty: no constraint set
  Named<LinOp> candidates;
  SamplingSchedule schedule;
  std::optional<Point> base_point;
  std::optional<PenalizationSpec> penalization;

  /// The ordering cone (built on first use and shared between copies).
  const PolyCone& cone() const;

 private:
  mutable std::shared_ptr<const PolyCone> cone_;
};

/// Parses a problem file. Errors: SyntaxError (line:col), SchemaError,
/// UnknownNodeKind, FileDimensionMismatch, DanglingReference (JSON pointer).
ProblemFile parse(const std::string& text);
ProblemFile load(const std::string& path);
/// Canonical text: two-space indented JSON with fixed key order.
std::string serialize(const ProblemFile& pf);

/// Output dimension of a map expression.
Eigen::Index map_dim(const MapExpr& e);

}  // namespace setcalc
