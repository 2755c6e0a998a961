#include "setcalc/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "setcalc/lp.hpp"

namespace setcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double excess_value(const ConicPolytope& A, const ConicPolytope& B) {
  const auto e = excess(A, B);
  return e.infinite ? kInf : e.value;
}

ConicPolytope epi_value(const SetValuedMap& F, const Point& x) { return F(x).with_rays(F.cone().generators()); }

void check_operator(const SetValuedMap& F, const Point& xbar, const LinOp& T, const char* what) {
  require_dim(xbar, F.dim_x(), what);
  if (T.dim_x() != F.dim_x() || T.dim_y() != F.dim_y())
    throw DimensionMismatch(std::string(what) + ": operator shape does not match the map");
}

Verdict frechet_impl(const SetValuedMap& F, const Point& xbar, const LinOp& T, const SamplingSchedule& s,
                     bool upper) {
  check_operator(F, xbar, T, upper ? "upper_frechet_member" : "frechet_member");
  const ConicPolytope E0 = epi_value(F, xbar);
  auto curve = radial_curve(xbar, s, [&](const Point& x, double r) {
    const ConicPolytope moved = E0.translated(T.apply(x - xbar));
    const ConicPolytope Ex = epi_value(F, x);
    const double e = upper ? excess_value(moved, Ex) : excess_value(Ex, moved);
    return e / r;
  });
  Verdict v = decide(std::move(curve), s);
  if (v.note.empty())
    v.note = upper ? "sup e(Epi F(xbar) + T(x - xbar), Epi F(x)) / r" : "sup e(Epi F(x), Epi F(xbar) + T(x - xbar)) / r";
  return v;
}

// (phi(xbar) + t.(x - xbar) - phi(x))+ with phi = inf y(F(.)).
double scalar_deficit(const SupportMin& f0, const SupportMin& fx, double linear) {
  if (fx.minus_infinity) return kInf;
  if (f0.minus_infinity) return 0.0;
  return std::max(0.0, f0.value + linear - fx.value);
}

Vector normalized(const Vector& v) { return v / v.norm(); }

}  // namespace

Verdict frechet_member(const SetValuedMap& F, const Point& xbar, const LinOp& T, const SamplingSchedule& s) {
  return frechet_impl(F, xbar, T, s, false);
}

Verdict upper_frechet_member(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                             const SamplingSchedule& s) {
  return frechet_impl(F, xbar, T, s, true);
}

Verdict scalarization_forward(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                              const ScalarFunctional& y, const SamplingSchedule& s) {
  check_operator(F, xbar, T, "scalarization_forward");
  const ScalarizedMap phi = scalarize(F, y);
  const Vector t = T.matrix().transpose() * y.weights;
  const SupportMin f0 = phi(xbar);
  if (f0.minus_infinity) {
    Verdict v = decide({CurvePoint{s.radii.front(), kInf, xbar}}, s);
    v.note = "scalarization is -infinity at xbar";
    return v;
  }
  auto curve = radial_curve(xbar, s, [&](const Point& x, double r) {
    return scalar_deficit(f0, phi(x), t.dot(x - xbar)) / r;
  });
  Verdict v = decide(std::move(curve), s);
  if (v.note.empty()) v.note = "sup (phi(xbar) + y*T(x - xbar) - phi(x))+ / r, phi = inf y*(F(.))";
  return v;
}

ConverseCheck scalarization_converse(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                     const SamplingSchedule& s) {
  check_operator(F, xbar, T, "scalarization_converse");
  ConverseCheck out;
  const ConicPolytope F0 = F(xbar);
  std::vector<Point> rec = F0.rays();
  for (const auto& g : F.cone().generators()) rec.push_back(g);

  // F(xbar) + K is convex when one piece (plus recession) absorbs every vertex.
  std::optional<ConicPolytope> convex;
  for (std::size_t j = 0; j < F0.pieces().size() && !convex; ++j) {
    ConicPolytope cand(F0.dim(), F0.piece_vertices(j), rec, true);
    bool all = true;
    for (const auto& v : F0.vertices()) all = all && member(v, cand);
    if (all) convex = std::move(cand);
  }
  if (!convex) {
    out.applicable = false;
    out.reason = "F(xbar) + K is not recognized as convex";
    return out;
  }
  out.applicable = true;
  out.family = F.cone().duals();
  for (const auto& h : facets(*convex)) {
    if (h.normal.norm() < 1e-12) continue;
    const Vector n = normalized(h.normal);
    bool dup = false;
    for (const auto& f : out.family) dup = dup || (f.weights - n).norm() < 1e-9;
    if (!dup) out.family.emplace_back(n);
  }
  for (const auto& y : out.family) out.per_functional.push_back(scalarization_forward(F, xbar, T, y, s));

  std::vector<SupportMin> f0;
  std::vector<Vector> t;
  for (const auto& y : out.family) {
    f0.push_back(support_min(F0, y.weights));
    t.push_back(T.matrix().transpose() * y.weights);
  }
  auto curve = radial_curve(xbar, s, [&](const Point& x, double r) {
    const ConicPolytope Fx = F(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.family.size(); ++i) {
      const auto& y = out.family[i];
      worst = std::max(worst, scalar_deficit(f0[i], support_min(Fx, y.weights), t[i].dot(x - xbar)) / y.norm);
    }
    return worst / r;
  });
  out.combined = decide(std::move(curve), s);
  out.combined.note = "max over the family of the scalar deficit / r, one shared schedule";
  out.frechet = frechet_member(F, xbar, T, s);
  out.consistent = !(out.combined.status == Status::accepted && out.frechet.status == Status::rejected);
  return out;
}

FormulaCheck convex_subdiff_formula_check(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                          const SamplingSchedule& s, bool check_precondition) {
  check_operator(F, xbar, T, "convex_subdiff_formula_check");
  FormulaCheck out;
  if (check_precondition) {
    out.precondition = test_upper_k_convex(F, s);
    if (out.precondition.status != Status::accepted)
      throw PreconditionFailed(std::string("convex_subdiff_formula_check: upper K-convexity ") +
                               to_string(out.precondition.status));
  }
  const ConicPolytope E0 = epi_value(F, xbar);
  for (const auto& x : box_grid(s.domain_box, s.grid_points)) {
    const double e = excess_value(F(x), E0.translated(T.apply(x - xbar)));
    if (!out.witness || e > out.worst_excess) {
      out.worst_excess = e;
      out.witness = x;
    }
  }
  out.holds = out.worst_excess <= s.accept_tol;
  return out;
}

FormulaCheck limiting_convex_formula_check(const SetValuedMap& F, const Point& xbar, const LinOp& T,
                                           const SamplingSchedule& s, bool check_precondition) {
  return convex_subdiff_formula_check(F, xbar, T, s, check_precondition);
}

// ---------------------------------------------------------------------------
// Grid subdifferentials

bool ScalarSubdiffPoly::contains(const Vector& sv, double tol) const {
  require_dim(sv, dim, "ScalarSubdiffPoly::contains");
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (normals[i].dot(sv) > offsets[i] + tol) return false;
  return true;
}

namespace {

lp::Problem poly_problem(const ScalarSubdiffPoly& P) {
  lp::Problem prob;
  prob.add_variables(static_cast<int>(P.dim), false);
  for (std::size_t i = 0; i < P.normals.size(); ++i) prob.add_constraint(P.normals[i], lp::Sense::less_equal, P.offsets[i]);
  return prob;
}

}  // namespace

bool ScalarSubdiffPoly::empty() const { return !poly_problem(*this).feasible(); }

std::optional<std::pair<double, double>> ScalarSubdiffPoly::range(Eigen::Index i) const {
  if (i < 0 || i >= dim) throw InvalidArgument("ScalarSubdiffPoly::range: index out of range");
  if (empty()) return std::nullopt;
  double bounds[2];
  for (int k = 0; k < 2; ++k) {
    lp::Problem prob = poly_problem(*this);
    Vector c = Vector::Zero(dim);
    c[i] = 1.0;
    prob.set_objective(c, k == 1);
    const auto sol = prob.solve();
    if (sol.status == lp::Status::unbounded) bounds[k] = k == 1 ? kInf : -kInf;
    else bounds[k] = sol.objective;
  }
  return std::make_pair(bounds[0], bounds[1]);
}

ScalarSubdiffPoly scalar_grid_subdiff(const ExtendedScalar& f, const Point& xbar, const Box& box, int points) {
  require_dim(xbar, box.dim(), "scalar_grid_subdiff");
  ScalarSubdiffPoly P;
  P.dim = xbar.size();
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    P.grid_step = std::max(P.grid_step, (box.upper[i] - box.lower[i]) / (points - 1));
  const SupportMin f0 = f(xbar);
  if (f0.minus_infinity) throw PreconditionFailed("scalar_grid_subdiff: f(xbar) = -infinity");
  for (const auto& x : box_grid(box, points)) {
    const Vector d = x - xbar;
    if (d.norm() <= 1e-14) continue;
    const SupportMin fx = f(x);
    if (fx.minus_infinity) throw PreconditionFailed("scalar_grid_subdiff: f = -infinity on the grid");
    P.normals.push_back(d);
    P.offsets.push_back(fx.value - f0.value);
  }
  return P;
}

bool poly_subset(const ScalarSubdiffPoly& P, const ScalarSubdiffPoly& Q, double tol) {
  if (P.dim != Q.dim) throw DimensionMismatch("poly_subset: dimensions differ");
  if (P.empty()) return true;
  for (std::size_t i = 0; i < Q.normals.size(); ++i) {
    lp::Problem prob = poly_problem(P);
    prob.set_objective(Q.normals[i], true);
    const auto sol = prob.solve();
    if (sol.status == lp::Status::unbounded) return false;
    if (sol.objective > Q.offsets[i] + tol) return false;
  }
  return true;
}

bool minkowski_member(const Vector& t, const std::vector<std::pair<double, const ScalarSubdiffPoly*>>& terms,
                      double tol) {
  const auto d = t.size();
  lp::Problem prob;
  std::vector<int> first;
  for (const auto& [coef, P] : terms) {
    if (P->dim != d) throw DimensionMismatch("minkowski_member: dimensions differ");
    first.push_back(prob.add_variables(static_cast<int>(d), false));
  }
  const int nv = prob.num_variables();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto* P = terms[k].second;
    for (std::size_t i = 0; i < P->normals.size(); ++i) {
      Vector row = Vector::Zero(nv);
      row.segment(first[k], d) = P->normals[i];
      prob.add_constraint(row, lp::Sense::less_equal, P->offsets[i] + tol);
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector row = Vector::Zero(nv);
    for (std::size_t k = 0; k < terms.size(); ++k) row[first[k] + j] = terms[k].first;
    prob.add_constraint(row, lp::Sense::less_equal, t[j] + tol);
    prob.add_constraint(row, lp::Sense::greater_equal, t[j] - tol);
  }
  return prob.feasible();
}

// ---------------------------------------------------------------------------
// Sum rules

bool SumRuleReport::holds() const {
  if (trivial_inclusion && !*trivial_inclusion) return false;
  return std::all_of(decomposition.begin(), decomposition.end(), [](bool b) { return b; });
}

namespace {

SetValuedMap sum_map(const SetValuedMap& F1, const SetValuedMap& F2) {
  if (F1.dim_x() != F2.dim_x() || F1.dim_y() != F2.dim_y())
    throw DimensionMismatch("sum rule: the two maps have different shapes");
  return SetValuedMap(expr::sum({F1.expr(), F2.expr()}), F1.dim_x(), F1.cone());
}

void decompose(SumRuleReport& out, const SetValuedMap& F1, const SetValuedMap& F2, const Point& xbar,
               const LinOp& T, const Box& box, int points) {
  out.duals = F1.cone().duals();
  for (const auto& y : out.duals) {
    const ScalarizedMap f1 = scalarize(F1, y), f2 = scalarize(F2, y);
    const auto S1 = scalar_grid_subdiff([&](const Point& x) { return f1(x); }, xbar, box, points);
    const auto S2 = scalar_grid_subdiff([&](const Point& x) { return f2(x); }, xbar, box, points);
    out.grid_step = S1.grid_step;
    const Vector t = T.matrix().transpose() * y.weights;
    out.decomposition.push_back(minkowski_member(t, {{1.0, &S1}, {1.0, &S2}}));
  }
}

}  // namespace

SumRuleReport sum_rule_check(const SetValuedMap& F1, const SetValuedMap& F2, const Point& xbar, const LinOp& T,
                             const SamplingSchedule& s, const std::optional<std::pair<LinOp, LinOp>>& parts,
                             bool enforce_precondition) {
  const SetValuedMap G = sum_map(F1, F2);
  SumRuleReport out;
  out.precondition = frechet_member(G, xbar, T, s);
  if (enforce_precondition && out.precondition.status != Status::accepted)
    throw PreconditionFailed(std::string("sum_rule_check: T in the subdifferential of F1 + F2 is ") +
                             to_string(out.precondition.status));
  if (parts) {
    const bool a1 = frechet_member(F1, xbar, parts->first, s).status == Status::accepted;
    const bool a2 = frechet_member(F2, xbar, parts->second, s).status == Status::accepted;
    if (a1 && a2) out.trivial_inclusion = frechet_member(G, xbar, parts->first + parts->second, s).status == Status::accepted;
  }
  decompose(out, F1, F2, xbar, T, s.domain_box, s.grid_points);
  return out;
}

SumRuleReport limiting_sum_rule_check(const SetValuedMap& F1, const SetValuedMap& F2, const Point& xbar,
                                      const LinOp& T, double L, const Direction& e, const SamplingSchedule& s,
                                      bool enforce_precondition) {
  const SetValuedMap G = sum_map(F1, F2);
  SumRuleReport out;
  out.precondition = frechet_member(G, xbar, T, s);
  if (enforce_precondition && out.precondition.status != Status::accepted)
    throw PreconditionFailed(std::string("limiting_sum_rule_check: T in the subdifferential of F1 + F2 is ") +
                             to_string(out.precondition.status));
  out.upper_continuity = test_uc(F1, xbar, s);
  out.k_lipschitz = test_k_lipschitz(F2, xbar, L, e, s);
  Box local = s.domain_box;
  const double rho = s.radii.front();
  for (Eigen::Index i = 0; i < local.dim(); ++i) {
    local.lower[i] = std::max(local.lower[i], xbar[i] - rho);
    local.upper[i] = std::min(local.upper[i], xbar[i] + rho);
  }
  decompose(out, F1, F2, xbar, T, local, s.grid_points);
  return out;
}

// ---------------------------------------------------------------------------

RadstromReport radstrom_check(const ConicPolytope& A, const ConicPolytope& B, const ConicPolytope& C,
                              const PolyCone& K, double accept_tol, bool enforce_precondition) {
  if (A.dim() != K.dim() || B.dim() != K.dim() || C.dim() != K.dim())
    throw DimensionMismatch("radstrom_check: dimensions differ");
  if (enforce_precondition) {
    for (const auto& r : C.rays())
      if (!K.contains(r)) throw PreconditionFailed("radstrom_check: C is not K-bounded (a ray lies outside K)");
  }
  RadstromReport out;
  const auto e = excess(minkowski(A, C), minkowski(minkowski(C, B), K.as_set()));
  out.hypothesis_excess = e.infinite ? kInf : e.value;
  out.hypothesis = !e.infinite && e.value <= accept_tol;

  const ConicPolytope target = B.hull().with_rays(K.generators());
  out.conclusion = true;
  for (const auto& r : A.rays()) {
    if (!in_cone(r, target.rays())) {
      out.conclusion = false;
      out.failing_vertex = r;
      return out;
    }
  }
  for (const auto& a : A.vertices()) {
    if (!member(a, target)) {
      out.conclusion = false;
      out.failing_vertex = a;
      break;
    }
  }
  return out;
}

LimitingReport limiting_member_verify(const SetValuedMap& F, const LimitWitness& w, const SamplingSchedule& s) {
  if (w.xs.size() < 5) throw InvalidArgument("limiting_member_verify: witness needs at least 5 terms");
  if (w.xs.size() != w.Ts.size()) throw InvalidArgument("limiting_member_verify: points and operators differ in count");
  check_operator(F, w.xbar, w.T, "limiting_member_verify");
  const std::size_t n = w.xs.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    check_operator(F, w.xs[i], w.Ts[i], "limiting_member_verify");
    dist[i] = (w.xs[i] - w.xbar).norm();
  }
  bool converges = dist.back() <= 0.5 * dist.front() || dist.front() == 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) converges = converges && dist[i + 1] <= dist[i] * (1 + 1e-12);
  if (!converges) throw InvalidArgument("limiting_member_verify: not a sequence to xbar");

  LimitingReport out;
  const ConicPolytope E0 = epi_value(F, w.xbar);
  bool all_accepted = true, any_rejected = false;
  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < n; ++i) {
    out.stepwise.push_back(frechet_member(F, w.xs[i], w.Ts[i], s));
    all_accepted = all_accepted && out.stepwise.back().status == Status::accepted;
    any_rejected = any_rejected || out.stepwise.back().status == Status::rejected;
    out.epi_excess.push_back(excess_value(epi_value(F, w.xs[i]), E0));
    out.operator_gap.push_back((w.Ts[i] - w.T).operator_norm());
    curve.push_back({dist[i], std::max(out.epi_excess.back(), out.operator_gap.back()), w.xs[i]});
  }
  // A tail of the sequence must decrease to (numerically) zero.
  auto tends_to_zero = [&](const std::vector<double>& v) {
    bool ok = v.back() <= s.accept_tol;
    for (std::size_t i = n / 2; i + 1 < n; ++i) ok = ok && v[i + 1] <= v[i] + s.accept_tol;
    return ok;
  };
  const bool b = tends_to_zero(out.epi_excess), c = tends_to_zero(out.operator_gap);
  out.verdict.curve = std::move(curve);
  std::ostringstream note;
  note << "(a) frechet along the sequence: " << (all_accepted ? "pass" : any_rejected ? "fail" : "inconclusive")
       << "; (b) epi excess -> 0: " << (b ? "pass" : "fail") << "; (c) |T_n - T| -> 0: " << (c ? "pass" : "fail");
  out.verdict.note = note.str();
  if (all_accepted && b && c) {
    out.verdict.status = Status::accepted;
  } else if (any_rejected || out.epi_excess.back() >= s.reject_tol || out.operator_gap.back() >= s.reject_tol) {
    out.verdict.status = Status::rejected;
  } else {
    out.verdict.status = Status::inconclusive;
  }
  if (out.verdict.status != Status::accepted) out.verdict.witness = w.xs.back();
  return out;
}

// ---------------------------------------------------------------------------
// Special maps phi(.) e and the difference rule

LinOp phi_e_subgradient_map(const Vector& xstar, const Direction& e) {
  return LinOp(e.vector * xstar.transpose());
}

bool norm_e_dual_bound_check(const LinOp& T, const Direction& e, const PolyCone& K, double tol) {
  require_dim(e.vector, K.dim(), "norm_e_dual_bound_check");
  if (T.dim_y() != K.dim()) throw DimensionMismatch("norm_e_dual_bound_check: operator and cone differ");
  for (const auto& y : k_e_plus(K, e)) {
    const double lhs = (T.matrix().transpose() * y.weights).norm();
    if (lhs > y(e.vector) + tol) return false;
  }
  return true;
}

DifferenceRuleReport difference_rule_check(const SetValuedMap& F, const ScalarPtr& phi, const Direction& e,
                                           const Point& xbar, const LinOp& T, const LinOp& t,
                                           const SamplingSchedule& s, const std::optional<Vector>& phi_subgradient) {
  check_operator(F, xbar, T, "difference_rule_check");
  check_operator(F, xbar, t, "difference_rule_check");
  require_dim(e.vector, F.dim_y(), "difference_rule_check direction");
  if (!phi) throw InvalidArgument("difference_rule_check: null phi");
  const PolyCone& K = F.cone();
  DifferenceRuleReport out;
  const SetValuedMap f(expr::scalar_dir(phi, e.vector), F.dim_x(), K);
  const SetValuedMap diff(expr::sum({F.expr(), expr::scalar_dir(expr::scale(-1.0, phi), e.vector)}), F.dim_x(), K);
  out.difference = frechet_member(diff, xbar, T, s);
  out.t_check = frechet_member(f, xbar, t, s);
  bool pre_ok = true;
  auto require = [&](const Verdict& v, const char* what) {
    if (v.status == Status::rejected) throw PreconditionFailed(std::string("difference_rule_check: ") + what + " rejected");
    pre_ok = pre_ok && v.status == Status::accepted;
  };
  require(out.difference, "T for F - phi e");
  require(out.t_check, "t for phi e");
  if (phi_subgradient) {
    require_dim(*phi_subgradient, F.dim_x(), "difference_rule_check phi subgradient");
    const PolyCone R1 = PolyCone::orthant(1);
    const SetValuedMap scalar(expr::scalar_dir(phi, make_vector({1.0})), F.dim_x(), R1);
    out.phi_subgradient = frechet_member(scalar, xbar, LinOp(phi_subgradient->transpose()), s);
    require(*out.phi_subgradient, "scalar subgradient of phi");
  }
  out.functionals = k_e_plus(K, e);
  bool all_accepted = true, any_rejected = false;
  for (const auto& y : out.functionals) {
    const Vector yt = t.matrix().transpose() * y.weights;
    const LinOp inner = T + LinOp(e.vector * yt.transpose() / y(e.vector));
    out.inner.push_back(frechet_member(F, xbar, inner, s));
    all_accepted = all_accepted && out.inner.back().status == Status::accepted;
    any_rejected = any_rejected || out.inner.back().status == Status::rejected;
  }
  if (any_rejected) out.status = Status::rejected;
  else if (all_accepted && pre_ok) out.status = Status::accepted;
  else out.status = Status::inconclusive;
  return out;
}

}  // namespace setcalc
