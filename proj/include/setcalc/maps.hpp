#pragma once

// Set-valued maps x -> F(x) given by expression trees, and sampled
// regularity tests at a point.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setcalc/cones.hpp"
#include "setcalc/dsl.hpp"
#include "setcalc/schedule.hpp"

namespace setcalc {

class SetValuedMap {
 public:
  SetValuedMap(MapPtr expr, Eigen::Index dim_x, const PolyCone& K);

  ConicPolytope operator()(const Point& x) const;
  const MapPtr& expr() const { return expr_; }
  Eigen::Index dim_x() const { return dim_x_; }
  Eigen::Index dim_y() const { return K_->dim(); }
  const PolyCone& cone() const { return *K_; }

 private:
  MapPtr expr_;
  Eigen::Index dim_x_;
  std::shared_ptr<const PolyCone> K_;
};

enum class Status { accepted, rejected, inconclusive };
const char* to_string(Status s);

struct CurvePoint {
  double radius = 0.0;
  double worst_ratio = 0.0;  // +infinity allowed
  std::optional<Point> witness;
};

struct Verdict {
  Status status = Status::inconclusive;
  std::vector<CurvePoint> curve;
  std::optional<Point> witness;
  std::optional<Point> witness_partner;  // second point of a pair test
  std::string note;
};

/// Shared decision rule on a ratio curve ordered by decreasing radius:
/// accepted when the three smallest radii have ratio <= accept_tol and the
/// last half of the curve is non-increasing (slack accept_tol); rejected when
/// the smallest radius has ratio >= reject_tol; inconclusive otherwise.
Verdict decide(std::vector<CurvePoint> curve, const SamplingSchedule& s);

/// Worst value of f(x, r) over sphere samples x = center + r d (inside the
/// domain box), for every radius of the schedule.
std::vector<CurvePoint> radial_curve(const Point& center, const SamplingSchedule& s,
                                     const std::function<double(const Point&, double)>& f);

/// x -> F(x) + K.
SetValuedMap epi(const SetValuedMap& F);

/// The minimal function x -> inf y*(F(x)).
class ScalarizedMap {
 public:
  ScalarizedMap(SetValuedMap F, ScalarFunctional y) : F_(std::move(F)), y_(std::move(y)) {}
  SupportMin operator()(const Point& x) const { return support_min(F_(x), y_.weights); }
  const SetValuedMap& map() const { return F_; }
  const ScalarFunctional& functional() const { return y_; }

 private:
  SetValuedMap F_;
  ScalarFunctional y_;
};
ScalarizedMap scalarize(const SetValuedMap& F, const ScalarFunctional& y);

/// Upper continuity: sup over nearby u of e(F(u), F(x0)) must fall below every
/// eps of the schedule's eps grid (e(A, B + eps D) = (e(A,B) - eps)+ for the
/// Euclidean ball).
Verdict test_uc(const SetValuedMap& F, const Point& x0, const SamplingSchedule& s);
/// Lower continuity: the same with e(F(x0), F(u)).
Verdict test_lc(const SetValuedMap& F, const Point& x0, const SamplingSchedule& s);

/// Numeric semicontinuity of a scalar function with -infinity allowed.
using ExtendedScalar = std::function<SupportMin(const Point&)>;
Verdict test_lsc(const ExtendedScalar& f, const Point& x0, const SamplingSchedule& s);
Verdict test_usc(const ExtendedScalar& f, const Point& x0, const SamplingSchedule& s);

/// F(x) + L|x - u| e inside F(u) + K for sampled pairs near x0; ratio is the
/// excess divided by |x - u|.
Verdict test_k_lipschitz(const SetValuedMap& F, const Point& x0, double L, const Direction& e,
                         const SamplingSchedule& s);

/// lambda F(x) + (1 - lambda) F(y) inside F(lambda x + (1 - lambda) y) + K
/// (strict: + int K) over grid and random pairs, lambda in {1/4, 1/2, 3/4}.
/// The curve has one entry per lambda (stored in the radius field).
Verdict test_upper_k_convex(const SetValuedMap& F, const SamplingSchedule& s, bool strict = false);

/// Scratch list of pairs used by the convexity test (exposed for tests).
std::vector<std::pair<Point, Point>> convexity_pairs(const SamplingSchedule& s);

}  // namespace setcalc
