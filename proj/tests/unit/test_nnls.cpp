#include <random>

#include "doctest.h"
#include "setcalc/nnls.hpp"
#include "unit/oracles.hpp"

using namespace setcalc;

TEST_CASE("nnls: matches exhaustive support enumeration") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 3, n = 1 + trial % 6;
    Matrix A(m, n);
    Vector b(m);
    for (int i = 0; i < m; ++i) {
      b[i] = N(rng);
      for (int j = 0; j < n; ++j) A(i, j) = N(rng);
    }
    const auto r = nnls::solve(A, b);
    CHECK((r.x.array() >= 0).all());
    CHECK(r.residual_norm == doctest::Approx((A * r.x - b).norm()).epsilon(1e-9));
    CHECK(r.residual_norm == doctest::Approx(oracle::nnls_exhaustive(A, b)).epsilon(1e-7));
  }
}

TEST_CASE("nnls: simplex block gives the projection onto a segment") {
  // Project (1, 1) onto conv{(0,0), (2,0)}: nearest (1,0).
  Matrix A(2, 2);
  A << -1, 1, -1, -1;  // columns v_i - p
  const auto r = nnls::solve(A, Vector::Zero(2), 2);
  CHECK(r.residual_norm == doctest::Approx(1.0));
  CHECK(r.x.sum() == doctest::Approx(1.0));
}

TEST_CASE("nnls: simplex block plus rays against exhaustive enumeration") {
  // min ||sum l_i (v_i - p) + sum m_j r_j||, sum l = 1: eliminate via an extra
  // heavily weighted row and compare with the exhaustive oracle.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2, nv = 1 + trial % 4, nr = trial % 3;
    Matrix A(d, nv + nr);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < nv + nr; ++j) A(i, j) = N(rng);
    const auto r = nnls::solve(A, Vector::Zero(d), nv);
    CHECK(r.x.head(nv).sum() == doctest::Approx(1.0));
    CHECK((r.x.array() >= 0).all());
    const double w = 1e4;
    Matrix Aw(d + 1, nv + nr);
    Aw.topRows(d) = A;
    Aw.row(d).setZero();
    Aw.row(d).head(nv).setConstant(w);
    Vector bw = Vector::Zero(d + 1);
    bw[d] = w;
    const double ref = oracle::nnls_exhaustive(Aw, bw);
    CHECK(r.residual_norm == doctest::Approx(ref).epsilon(1e-5));
  }
}
