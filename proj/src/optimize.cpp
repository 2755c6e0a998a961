#include "setcalc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "setcalc/lp.hpp"

namespace setcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double excess_value(const ConicPolytope& A, const ConicPolytope& B) {
  const auto e = excess(A, B);
  return e.infinite ? kInf : e.value;
}

}  // namespace

// ---------------------------------------------------------------------------

ConstraintSet::ConstraintSet(std::vector<ConicPolytope> pieces) : pieces_(std::move(pieces)) {
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].dim() != pieces_[0].dim()) throw DimensionMismatch("ConstraintSet: pieces of different dimension");
}

bool ConstraintSet::contains(const Point& x, double tol) const {
  if (whole_space()) return true;
  for (const auto& P : pieces_)
    if (member(x, P, tol)) return true;
  return false;
}

double ConstraintSet::distance(const Point& x) const {
  double d = kInf;
  for (const auto& P : pieces_) d = std::min(d, setcalc::distance(x, P).value);
  return whole_space() ? 0.0 : d;
}

bool ConstraintSet::accumulation_point(const Point& x) const {
  if (whole_space()) return true;
  for (const auto& P : pieces_) {
    for (std::size_t j = 0; j < P.pieces().size(); ++j) {
      const auto verts = P.piece_vertices(j);
      if (verts.size() < 2 && P.rays().empty()) continue;
      if (member(x, ConicPolytope(P.dim(), verts, P.rays(), true))) return true;
    }
  }
  return false;
}

std::vector<Point> ConstraintSet::grid(const Box& box, int points) const {
  std::vector<Point> out;
  for (auto& x : box_grid(box, points))
    if (contains(x)) out.push_back(std::move(x));
  return out;
}

void PenalizationConfig::validate(const PolyCone& K) const {
  if (!(ell > 0)) throw InvalidArgument("penalization: ell must be positive");
  if (!(mu >= 0)) throw InvalidArgument("penalization: mu must be nonnegative");
  if (!(radius > 0)) throw InvalidArgument("penalization: radius must be positive");
  require_dim(e.vector, K.dim(), "penalization direction");
  if (e.vector.norm() == 0.0 || !K.contains(e.vector)) throw InvalidArgument("penalization: e must lie in K \\ {0}");
}

// ---------------------------------------------------------------------------

bool l_leq(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K, double tol) {
  return excess_value(B, A.with_rays(K.generators())) <= tol;
}

const char* to_string(MinimalityKind k) { return k == MinimalityKind::l_min ? "l_min" : "ideal_min"; }

bool ideal_dominates(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K, double tol) {
  const auto& G = K.generators();
  for (const auto& r : B.rays())
    if (!in_cone(r, G)) return false;
  const auto dim = A.dim();
  for (std::size_t j = 0; j < A.pieces().size(); ++j) {
    const auto P = A.piece_vertices(j);
    lp::Problem prob;
    const int lam = prob.add_variables(static_cast<int>(P.size()));
    const int mu = prob.add_variables(static_cast<int>(A.rays().size()));
    std::vector<int> kap;
    for (std::size_t i = 0; i < B.vertices().size(); ++i) kap.push_back(prob.add_variables(static_cast<int>(G.size())));
    const int nv = prob.num_variables();
    Vector row = Vector::Zero(nv);
    row.segment(lam, static_cast<Eigen::Index>(P.size())).setOnes();
    prob.add_constraint(row, lp::Sense::equal, 1.0);
    // v_i = sum lam p + sum mu r + sum kappa g, up to tol per coordinate.
    for (std::size_t i = 0; i < B.vertices().size(); ++i) {
      const Point& v = B.vertices()[i];
      for (Eigen::Index c = 0; c < dim; ++c) {
        row.setZero();
        for (std::size_t k = 0; k < P.size(); ++k) row[lam + static_cast<int>(k)] = P[k][c];
        for (std::size_t k = 0; k < A.rays().size(); ++k) row[mu + static_cast<int>(k)] = A.rays()[k][c];
        for (std::size_t k = 0; k < G.size(); ++k) row[kap[i] + static_cast<int>(k)] = G[k][c];
        prob.add_constraint(row, lp::Sense::less_equal, v[c] + tol);
        prob.add_constraint(row, lp::Sense::greater_equal, v[c] - tol);
      }
    }
    if (prob.feasible()) return true;
  }
  return false;
}

namespace {

std::vector<Point> local_grid(const ConstraintSet& M, const Point& xbar, double eps, const SamplingSchedule& s,
                              const char* what) {
  std::vector<Point> pts;
  for (auto& x : M.grid(s.domain_box, s.grid_points)) {
    const double d = (x - xbar).norm();
    if (d > 1e-14 && d <= eps) pts.push_back(std::move(x));
  }
  if (pts.empty()) throw InvalidArgument(std::string(what) + ": no grid point of M near xbar (empty local grid)");
  return pts;
}

double grid_step(const SamplingSchedule& s) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.domain_box.dim(); ++i)
    h = std::max(h, (s.domain_box.upper[i] - s.domain_box.lower[i]) / (s.grid_points - 1));
  return h;
}

struct PointCheck {
  bool ok = true;
  std::optional<bool> dominated;
  std::string reason;
};

template <class Check>
MinimalityReport scan(MinimalityKind kind, const std::vector<Point>& pts, double eps, const SamplingSchedule& s,
                      bool parallel, Check check) {
  MinimalityReport rep;
  rep.kind = kind;
  rep.epsilon = eps;
  rep.grid_step = grid_step(s);
  rep.points_checked = pts.size();
  std::vector<PointCheck> res;
  if (parallel) {
    res = parallel_map<PointCheck>(pts.size(), [&](std::size_t i) { return check(pts[i]); });
  } else {
    for (const auto& x : pts) res.push_back(check(x));
  }
  bool dominated = true, dominated_known = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!res[i].ok && rep.witnesses.size() < 10) rep.witnesses.push_back({pts[i], res[i].reason});
    if (res[i].dominated) dominated = dominated && *res[i].dominated;
    else dominated_known = false;
  }
  rep.status = rep.witnesses.empty() ? Status::accepted : Status::rejected;
  if (kind == MinimalityKind::ideal_min && dominated_known) rep.dominated_by_value = dominated;
  return rep;
}

MinimalityReport ideal_impl(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar, double eps,
                            const SamplingSchedule& s, bool parallel) {
  require_dim(xbar, F.dim_x(), "check_ideal_min");
  if (!M.contains(xbar)) throw PreconditionFailed("check_ideal_min: xbar is not in M");
  const auto pts = local_grid(M, xbar, eps, s, "check_ideal_min");
  const ConicPolytope F0 = F(xbar);
  const ConicPolytope E0 = F0.with_rays(F.cone().generators());
  return scan(MinimalityKind::ideal_min, pts, eps, s, parallel, [&](const Point& x) {
    PointCheck c;
    const ConicPolytope Fx = F(x);
    c.ok = ideal_dominates(F0, Fx, F.cone(), s.accept_tol);
    if (!c.ok) c.reason = "no a in F(xbar) with F(x) inside a + K";
    try {
      c.dominated = excess_value(Fx, E0) <= s.accept_tol;
    } catch (const UnsupportedShape&) {
    }
    return c;
  });
}

}  // namespace

MinimalityReport check_l_min(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar, double eps,
                             const SamplingSchedule& s) {
  require_dim(xbar, F.dim_x(), "check_l_min");
  if (!M.contains(xbar)) throw PreconditionFailed("check_l_min: xbar is not in M");
  const auto pts = local_grid(M, xbar, eps, s, "check_l_min");
  const ConicPolytope F0 = F(xbar);
  const PolyCone& K = F.cone();
  return scan(MinimalityKind::l_min, pts, eps, s, true, [&](const Point& x) {
    PointCheck c;
    const ConicPolytope Fx = F(x);
    if (l_leq(Fx, F0, K, s.accept_tol) && !l_leq(F0, Fx, K, s.accept_tol)) {
      c.ok = false;
      c.reason = "F(x) <= F(xbar) but not F(xbar) <= F(x)";
    }
    return c;
  });
}

MinimalityReport check_ideal_min(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar, double eps,
                                 const SamplingSchedule& s) {
  return ideal_impl(F, M, xbar, eps, s, true);
}

// ---------------------------------------------------------------------------

double robustness_margin(const ConicPolytope& A, const ConicPolytope& D, const PolyCone& K) {
  if (A.dim() != K.dim() || D.dim() != K.dim()) throw DimensionMismatch("robustness_margin: dimensions differ");
  for (const auto& r : A.rays())
    if (!K.contains(r)) throw UnsupportedShape("robustness_margin: rays of A must lie in K");
  for (const auto& r : D.rays())
    if (!K.contains(r)) return kInf;  // D + Y\-K then contains every point
  std::vector<Point> neg;
  for (const auto& g : K.generators()) neg.push_back(-g);
  const ConicPolytope minusK = ConicPolytope::cone(Vector::Zero(K.dim()), neg);
  double eps = kInf;
  for (const auto& a : A.vertices()) {
    double best = 0.0;
    for (const auto& d : D.vertices()) best = std::max(best, distance(a - d, minusK).value);
    if (best <= 1e-12) {
      std::ostringstream msg;
      msg << "robustness_margin: A is not inside D + Y\\-K (vertex " << a.transpose() << ")";
      throw PreconditionFailed(msg.str());
    }
    eps = std::min(eps, best);
  }
  return eps;
}

// ---------------------------------------------------------------------------

SetValuedMap penalize(const SetValuedMap& F, const ConstraintSet& M, const PenalizationConfig& cfg) {
  cfg.validate(F.cone());
  if (M.whole_space()) return F;
  return SetValuedMap(
      expr::sum({F.expr(), expr::scalar_dir(expr::scale(cfg.ell, expr::dist_to_set(M.pieces())), cfg.e.vector)}),
      F.dim_x(), F.cone());
}

SetValuedMap sharp_shift(const SetValuedMap& F, const Point& xbar, const PenalizationConfig& cfg) {
  cfg.validate(F.cone());
  require_dim(xbar, F.dim_x(), "sharp_shift");
  if (cfg.mu == 0.0) return F;
  return SetValuedMap(expr::sum({F.expr(), expr::scalar_dir(expr::scale(-cfg.mu, expr::norm(xbar)), cfg.e.vector)}),
                      F.dim_x(), F.cone());
}

SetValuedMap penalize_sharp(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar,
                            const PenalizationConfig& cfg) {
  PenalizationConfig c = cfg;
  c.ell = cfg.ell + cfg.mu;
  return penalize(sharp_shift(F, xbar, cfg), M, c);
}

PenalizationReport verify_penalization(const SetValuedMap& F, const ConstraintSet& M, const Point& xbar,
                                       const PenalizationConfig& cfg, const SamplingSchedule& s) {
  cfg.validate(F.cone());
  if (!M.accumulation_point(xbar)) throw PreconditionFailed("verify_penalization: xbar is not an accumulation point of M");
  PenalizationReport rep;
  rep.constrained_ideal = check_ideal_min(F, M, xbar, cfg.radius, s);

  // (b): u outside M, v in M, both in the ball.
  std::vector<Point> out_m, in_m;
  for (auto& x : box_grid(s.domain_box, s.grid_points)) {
    if ((x - xbar).norm() > cfg.radius) continue;
    (M.contains(x) ? in_m : out_m).push_back(std::move(x));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < out_m.size(); ++i)
    for (std::size_t j = 0; j < in_m.size(); ++j) pairs.emplace_back(i, j);
  constexpr std::size_t kMaxPairs = 40000;
  if (pairs.size() > kMaxPairs) {
    const std::size_t stride = (pairs.size() + kMaxPairs - 1) / kMaxPairs;
    std::vector<std::pair<std::size_t, std::size_t>> kept;
    for (std::size_t k = 0; k < pairs.size(); k += stride) kept.push_back(pairs[k]);
    pairs = std::move(kept);
  }
  const PolyCone& K = F.cone();
  const auto values = parallel_map<double>(pairs.size(), [&](std::size_t k) {
    const Point& u = out_m[pairs[k].first];
    const Point& v = in_m[pairs[k].second];
    const ConicPolytope lhs = F(u).translated(cfg.ell * (u - v).norm() * cfg.e.vector);
    return excess_value(lhs, F(v).with_rays(K.generators()));
  });
  CurvePoint worst{cfg.radius, 0.0, std::nullopt};
  std::optional<Point> partner;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!worst.witness || values[k] > worst.worst_ratio) {
      worst.worst_ratio = values[k];
      worst.witness = out_m[pairs[k].first];
      partner = in_m[pairs[k].second];
    }
  }
  rep.lipschitz.curve = {worst};
  if (pairs.empty()) {
    rep.lipschitz.status = Status::accepted;
    rep.lipschitz.note = "vacuous: no grid point outside M within the radius";
  } else {
    rep.lipschitz.status = worst.worst_ratio <= s.accept_tol  ? Status::accepted
                           : worst.worst_ratio >= s.reject_tol ? Status::rejected
                                                               : Status::inconclusive;
    rep.lipschitz.note = "sup e(F(u) + ell|u - v| e, F(v) + K) over grid pairs u outside M, v in M";
    if (rep.lipschitz.status != Status::accepted) {
      rep.lipschitz.witness = worst.witness;
      rep.lipschitz.witness_partner = partner;
    }
  }

  rep.unconstrained_ideal = check_ideal_min(penalize(F, M, cfg), ConstraintSet(), xbar, cfg.radius / 3, s);
  rep.implication_holds = !(rep.constrained_ideal.status == Status::accepted &&
                            rep.lipschitz.status == Status::accepted &&
                            rep.unconstrained_ideal.status != Status::accepted);
  return rep;
}

// ---------------------------------------------------------------------------

double finest_epsilon(const SamplingSchedule& s) {
  double h2 = 0.0;
  for (Eigen::Index i = 0; i < s.domain_box.dim(); ++i) {
    const double h = (s.domain_box.upper[i] - s.domain_box.lower[i]) / (s.grid_points - 1);
    h2 += h * h;
  }
  return std::sqrt(h2) * (1 + 1e-9);
}

std::vector<IdealPoint> solve_ideal(const SetValuedMap& F, const ConstraintSet& M, const SamplingSchedule& s) {
  const auto pts = M.grid(s.domain_box, s.grid_points);
  if (pts.empty()) throw InvalidArgument("solve_ideal: no grid point in M");
  const double eps = finest_epsilon(s);
  const auto& duals = F.cone().duals();
  const auto found = parallel_map<std::optional<IdealPoint>>(pts.size(), [&](std::size_t i) -> std::optional<IdealPoint> {
    MinimalityReport rep;
    try {
      rep = ideal_impl(F, M, pts[i], eps, s, false);
    } catch (const InvalidArgument&) {
      return std::nullopt;  // isolated grid point
    }
    if (rep.status != Status::accepted) return std::nullopt;
    const ConicPolytope Fx = F(pts[i]);
    double merit = kInf;
    for (const auto& y : duals) {
      const auto m = support_min(Fx, y.weights);
      merit = std::min(merit, m.minus_infinity ? -kInf : m.value);
    }
    return IdealPoint{pts[i], merit, std::move(rep)};
  });
  std::vector<IdealPoint> out;
  for (const auto& f : found)
    if (f) out.push_back(*f);
  std::stable_sort(out.begin(), out.end(), [](const IdealPoint& a, const IdealPoint& b) {
    if (a.merit != b.merit) return a.merit < b.merit;
    return lex_less(a.x, b.x);
  });
  return out;
}

NecessaryConditionReport necessary_condition_report(const SetValuedMap& F, const ConstraintSet& M,
                                                    const Point& xbar, const PenalizationConfig& cfg,
                                                    const SamplingSchedule& s) {
  cfg.validate(F.cone());
  NecessaryConditionReport rep;
  rep.header =
      "convex case: limiting subdifferentials replaced by grid subdifferentials of y* o F and d_M "
      "(exact only for upper K-convex F and convex M)";
  rep.precondition = verify_penalization(sharp_shift(F, xbar, cfg), M, xbar, cfg, s);
  rep.conditional = rep.precondition.constrained_ideal.status != Status::accepted ||
                    rep.precondition.lipschitz.status != Status::accepted ||
                    rep.precondition.unconstrained_ideal.status != Status::accepted;
  const auto Sd = scalar_grid_subdiff(
      [&](const Point& x) { return SupportMin{false, M.distance(x), {}}; }, xbar, s.domain_box, s.grid_points);
  rep.grid_step = Sd.grid_step;
  bool all = true;
  for (const auto& y : k_e_plus(F.cone(), cfg.e)) {
    const ScalarizedMap f = scalarize(F, y);
    const auto SF = scalar_grid_subdiff([&](const Point& x) { return f(x); }, xbar, s.domain_box, s.grid_points);
    const double ye = y(cfg.e.vector);
    for (Eigen::Index i = 0; i < F.dim_x(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Vector w = Vector::Zero(F.dim_x());
        w[i] = sign;
        const bool ok = minkowski_member(cfg.mu * ye * w, {{1.0, &SF}, {(cfg.ell + cfg.mu) * ye, &Sd}});
        rep.rows.push_back({y, w, ok});
        all = all && ok;
      }
    }
  }
  rep.status = all ? Status::accepted : Status::rejected;
  return rep;
}

}  // namespace setcalc
