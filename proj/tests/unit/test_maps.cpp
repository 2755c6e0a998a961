#include "doctest.h"
#include "setcalc/maps.hpp"
#include "setcalc/sampling.hpp"

using namespace setcalc;

namespace {

Vector V1(double a) { return make_vector({a}); }

ConicPolytope cloud1(std::initializer_list<double> pts) {
  std::vector<Point> v;
  for (double p : pts) v.push_back(V1(p));
  return ConicPolytope(1, v);
}

const PolyCone& K1() {
  static const PolyCone K = PolyCone::orthant(1);
  return K;
}

SetValuedMap map1(MapPtr e) { return SetValuedMap(std::move(e), 1, K1()); }

// {-1, 1} for x != 0, {0} at 0.
SetValuedMap F1() {
  return map1(expr::branch(expr::norm(V1(0)), expr::const_set(cloud1({-1, 1})), expr::const_set(cloud1({0}))));
}
// {0} for x != 0, {-1, -1/2} at 0.
SetValuedMap F2() {
  return map1(expr::branch(expr::norm(V1(0)), expr::const_set(cloud1({0})), expr::const_set(cloud1({-1, -0.5}))));
}

SetValuedMap identity1() { return map1(expr::affine_arg(Matrix::Identity(1, 1), V1(0))); }

SetValuedMap square1(double sign) {
  return map1(expr::scalar_dir(expr::scale(sign, expr::product({expr::coord(0), expr::coord(0)})), V1(1)));
}

SamplingSchedule sched() { return SamplingSchedule::defaults(1); }

}  // namespace

TEST_CASE("schedule defaults are valid") {
  auto s = sched();
  CHECK_NOTHROW(s.validate());
  CHECK(s.radii.size() == 14);
  s.reject_tol = s.accept_tol;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("sphere directions are unit, seeded and include the axes") {
  const auto a = sphere_directions(3, 16, 5, 0);
  const auto b = sphere_directions(3, 16, 5, 0);
  const auto c = sphere_directions(3, 16, 5, 1);
  REQUIRE(a.size() == 22);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].norm() == doctest::Approx(1.0));
    CHECK((a[i] - b[i]).norm() == 0.0);
  }
  CHECK((a[10] - c[10]).norm() > 1e-6);
  CHECK(sphere_directions(1, 16, 5, 0).size() == 2);
}

TEST_CASE("epi and scalarize") {
  const auto F = map1(expr::const_set(cloud1({2})));
  CHECK(epi(F)(V1(0)).rays().size() == 1);
  const PolyCone K2 = PolyCone::orthant(2);
  const auto G = SetValuedMap(expr::const_set(ConicPolytope(2, {make_vector({2, 0}), make_vector({0, 2})})), 1, K2);
  CHECK(scalarize(G, ScalarFunctional(make_vector({1, 1})))(V1(0.3)).value == doctest::Approx(2.0));
  // Adding K never lowers the minimum for y* in K+.
  for (const auto& y : K2.duals())
    CHECK(scalarize(epi(G), y)(V1(0)).value == scalarize(G, y)(V1(0)).value);
}

TEST_CASE("continuity: the two counterexample maps") {
  CHECK(test_lc(F1(), V1(0), sched()).status == Status::rejected);
  CHECK(test_uc(F1(), V1(0), sched()).status == Status::rejected);
  CHECK(test_uc(F2(), V1(0), sched()).status == Status::rejected);
  CHECK(test_lc(F2(), V1(0), sched()).status == Status::rejected);
  const auto c = map1(expr::const_set(cloud1({0, 3})));
  CHECK(test_uc(c, V1(0.2), sched()).status == Status::accepted);
  CHECK(test_lc(c, V1(0.2), sched()).status == Status::accepted);

  const auto y = K1().duals().front();
  const auto f1 = scalarize(F1(), y);
  const auto f2 = scalarize(F2(), y);
  CHECK(test_usc(f1, V1(0), sched()).status == Status::accepted);
  CHECK(test_lsc(f1, V1(0), sched()).status == Status::rejected);
  CHECK(test_lsc(f2, V1(0), sched()).status == Status::accepted);
  CHECK(test_usc(f2, V1(0), sched()).status == Status::rejected);
}

TEST_CASE("K-Lipschitz") {
  const Direction e{V1(1)};
  CHECK(test_k_lipschitz(identity1(), V1(0), 1.0, e, sched()).status == Status::accepted);
  const auto bad = test_k_lipschitz(identity1(), V1(0), 0.3, e, sched());
  CHECK(bad.status == Status::rejected);
  REQUIRE(bad.witness.has_value());
  REQUIRE(bad.witness_partner.has_value());
  // The violating pair has x < u and ratio 1 - 0.3.
  CHECK((*bad.witness)[0] < (*bad.witness_partner)[0]);
  CHECK(bad.curve.back().worst_ratio == doctest::Approx(0.7));
  CHECK(test_k_lipschitz(map1(expr::const_set(cloud1({1, 4}))), V1(0), 0.5, e, sched()).status ==
        Status::accepted);
}

TEST_CASE("upper K-convexity") {
  CHECK(test_upper_k_convex(square1(1), sched()).status == Status::accepted);
  CHECK(test_upper_k_convex(square1(-1), sched()).status == Status::rejected);
  const PolyCone K2 = PolyCone::orthant(2);
  const auto H = SetValuedMap(
      expr::const_set(ConicPolytope(2, {make_vector({0, 1}), make_vector({1, 0}), make_vector({2, 2})}, {}, true)), 1, K2);
  CHECK(test_upper_k_convex(H, sched()).status == Status::accepted);
  CHECK(test_upper_k_convex(square1(1), sched(), true).status == Status::accepted);
  CHECK(test_upper_k_convex(identity1(), sched(), true).status == Status::rejected);
}
