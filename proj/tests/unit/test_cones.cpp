#include <random>

#include "doctest.h"
#include "setcalc/cones.hpp"
#include "unit/oracles.hpp"

using namespace setcalc;

namespace {

Point P(double a, double b) { return make_vector({a, b}); }

bool has(const std::vector<ScalarFunctional>& ys, const Vector& v) {
  for (const auto& y : ys)
    if ((y.weights - v.normalized()).norm() < 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("PolyCone validation") {
  CHECK_THROWS_AS(PolyCone(2, {P(1, 0), P(-1, 0)}), InvalidArgument);
  CHECK_THROWS_AS(PolyCone(2, {P(0, 0)}), InvalidArgument);
  CHECK_THROWS_AS(PolyCone(2, {P(1, 0)}, std::vector<Point>{P(-1, 0)}), InvalidArgument);
  CHECK(PolyCone::orthant(3).full_dimensional());
  CHECK_FALSE(PolyCone(2, {P(1, 1)}).full_dimensional());
}

TEST_CASE("dual_generators: worked cases") {
  const auto q = dual_generators(PolyCone::orthant(2));
  CHECK(q.size() == 2);
  CHECK(has(q, P(1, 0)));
  CHECK(has(q, P(0, 1)));

  const auto c = dual_generators(PolyCone(2, {P(1, 0), P(1, 1)}));
  CHECK(c.size() == 2);
  CHECK(has(c, P(0, 1)));
  CHECK(has(c, P(1, -1)));

  const auto one = dual_generators(PolyCone::orthant(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0].weights[0] == 1.0);

  // A single ray in the plane: dual is a half-plane.
  const auto h = dual_generators(PolyCone(2, {P(1, 1)}));
  CHECK(h.size() == 3);
  CHECK(has(h, P(1, 1)));
  CHECK(has(h, P(1, -1)));
  CHECK(has(h, P(-1, 1)));

  std::vector<Point> g4;
  for (int i = 0; i < 4; ++i) g4.push_back(Vector::Unit(4, i));
  CHECK_THROWS_AS(dual_generators(PolyCone(4, g4)), UnsupportedShape);
  const PolyCone with_duals(4, g4, g4);
  CHECK(with_duals.duals().size() == 4);
}

TEST_CASE("dual_generators: random pointed cones are valid and separating") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 2;
    std::vector<Point> G;
    for (int i = 0; i < 2 + trial % 4; ++i) {
      Point g(dim);
      for (int k = 0; k < dim - 1; ++k) g[k] = 0.6 * N(rng);
      g[dim - 1] = 1.0;
      G.push_back(g);
    }
    const PolyCone K(dim, G);
    const auto D = K.duals();
    for (const auto& y : D)
      for (const auto& g : G) CHECK(y(g) >= -1e-9);
    if (dim == 3 && K.full_dimensional()) {
      const auto ref = oracle::dual3_pairs(G);
      CHECK(D.size() == ref.size());
      for (const auto& r : ref) CHECK(has(D, r));
    }
    for (int s = 0; s < 20; ++s) {
      Point p(dim);
      for (int k = 0; k < dim; ++k) p[k] = N(rng);
      if (K.contains(p, 1e-7)) continue;
      bool separated = false;
      for (const auto& y : D) separated = separated || y(p) < 0;
      CHECK(separated);
    }
  }
}

TEST_CASE("k_e_plus") {
  const auto K = PolyCone::orthant(2);
  CHECK(k_e_plus(K, {P(1, 1)}).size() == 2);
  const auto a = k_e_plus(K, {P(1, 0)});
  REQUIRE(a.size() == 1);
  CHECK(has(a, P(1, 0)));
  CHECK(k_e_plus(PolyCone::orthant(1), {make_vector({2})}).size() == 1);
  CHECK_THROWS_AS(k_e_plus(K, {P(-1, 0)}), InvalidArgument);
}

TEST_CASE("interior_member") {
  const auto K = PolyCone::orthant(2);
  CHECK(interior_member(P(1, 1), K));
  CHECK_FALSE(interior_member(P(1, 0), K));
  CHECK_FALSE(interior_member(P(1, 1), PolyCone(2, {P(1, 0), P(1, 1)})));
  CHECK_THROWS_AS(interior_member(P(1, 1), PolyCone(2, {P(1, 1)})), PreconditionFailed);
}

TEST_CASE("scalarized_inclusion_check: worked cases") {
  const auto K = PolyCone::orthant(2);
  const ConicPolytope B(2, {P(2, 0), P(0, 2)});
  const auto c = scalarized_inclusion_check(ConicPolytope::singleton(P(1, 1)), B, K);
  CHECK_FALSE(c.direct);
  CHECK(c.scalarized);
  CHECK(c.generators_only);

  const auto same = scalarized_inclusion_check(B, B, K);
  CHECK(same.direct);
  CHECK(same.scalarized);

  const ConicPolytope Bh(2, {P(2, 0), P(0, 2)}, {}, true);
  const auto conv = scalarized_inclusion_check(ConicPolytope::singleton(P(3, 3)), Bh, K);
  CHECK(conv.direct);
  CHECK(conv.scalarized);
  const auto strict = scalarized_inclusion_check(ConicPolytope::singleton(P(3, 3)), Bh, K, true);
  CHECK(strict.direct);
  CHECK(strict.scalarized);
  const auto edge = scalarized_inclusion_check(ConicPolytope::singleton(P(2, 0)), Bh, K, true);
  CHECK_FALSE(edge.direct);
  CHECK_FALSE(edge.scalarized);
}

TEST_CASE("scalarized_inclusion_check: generators alone do not decide the converse") {
  // (1, 0.5) passes both generator tests against conv{(2,0),(0,2)} + K but lies outside.
  const auto K = PolyCone::orthant(2);
  const ConicPolytope Bh(2, {P(2, 0), P(0, 2)}, {}, true);
  const auto c = scalarized_inclusion_check(ConicPolytope::singleton(P(1, 0.5)), Bh, K);
  CHECK_FALSE(c.direct);
  CHECK(c.generators_only);
  CHECK_FALSE(c.scalarized);
  REQUIRE(c.separating_functional.has_value());
  const Vector y = *c.separating_functional;
  CHECK(y.dot(P(1, 0.5)) < std::min(y.dot(P(2, 0)), y.dot(P(0, 2))));
}

TEST_CASE("scalarized_inclusion_check: random hulled instances, both directions") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> I(-3, 3);
  const std::vector<PolyCone> cones = {PolyCone::orthant(2), PolyCone(2, {P(1, 0), P(1, 1)}),
                                       PolyCone(2, {P(1, 2), P(-1, 1)})};
  for (int trial = 0; trial < 300; ++trial) {
    const auto& K = cones[trial % 3];
    std::vector<Point> VA, VB;
    for (int i = 0; i < 2; ++i) VA.push_back(P(I(rng), I(rng)));
    for (int i = 0; i < 3; ++i) VB.push_back(P(I(rng), I(rng)));
    std::vector<Point> RA;
    if (trial % 4 == 0) RA.push_back(P(I(rng), I(rng)));
    const ConicPolytope A(2, VA, RA);
    const ConicPolytope B(2, VB, {}, true);
    for (bool strict : {false, true}) {
      const auto c = scalarized_inclusion_check(A, B, K, strict);
      CHECK(c.direct == c.scalarized);
      if (c.direct) CHECK(c.generators_only);
    }
  }
}

TEST_CASE("facets of a hulled set") {
  const ConicPolytope S(2, {P(0, 0), P(1, 0), P(0, 1)}, {}, true);
  const auto H = facets(S);
  CHECK(H.size() == 3);
  for (const auto& h : H)
    for (const auto& v : S.vertices()) CHECK(h.normal.dot(v) + h.offset >= -1e-9);
  const auto Q = facets(ConicPolytope::cone(P(1, 1), {P(1, 0), P(0, 1)}));
  CHECK(Q.size() == 2);
}
