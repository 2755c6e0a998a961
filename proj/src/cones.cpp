#include "setcalc/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "setcalc/double_description.hpp"
#include "setcalc/lp.hpp"

namespace setcalc {
namespace {

Eigen::Index rank_of(const std::vector<Point>& pts, Eigen::Index dim) {
  if (pts.empty()) return 0;
  Matrix M(dim, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = pts[j].normalized();
  Eigen::FullPivLU<Matrix> lu(M);
  lu.setThreshold(1e-10);
  return lu.rank();
}

bool is_pointed(const std::vector<Point>& gens, Eigen::Index dim) {
  if (gens.empty()) return true;
  // max sum(mu) s.t. sum mu_i g_i = 0, sum mu <= 1, mu >= 0: optimum 0 iff pointed.
  const int n = static_cast<int>(gens.size());
  lp::Problem p;
  p.add_variables(n, true);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Vector row(n);
    for (int j = 0; j < n; ++j) row[j] = gens[static_cast<std::size_t>(j)][i] / gens[static_cast<std::size_t>(j)].norm();
    p.add_constraint(row, lp::Sense::equal, 0.0);
  }
  p.add_constraint(Vector::Ones(n), lp::Sense::less_equal, 1.0);
  p.set_objective(Vector::Ones(n), true);
  const auto s = p.solve();
  return s.status == lp::Status::optimal && s.objective <= 1e-9;
}

std::vector<ScalarFunctional> from_generators(const dd::ConeGenerators& g) {
  std::vector<ScalarFunctional> out;
  for (const auto& r : g.rays) out.emplace_back(r.normalized());
  for (const auto& l : g.lineality) {
    out.emplace_back(l.normalized());
    out.emplace_back(Vector(-l.normalized()));
  }
  return out;
}

std::vector<ScalarFunctional> duals_by_dd(const PolyCone& K) {
  const auto& G = K.generators();
  if (G.empty()) {
    std::vector<ScalarFunctional> out;
    for (Eigen::Index i = 0; i < K.dim(); ++i) {
      out.emplace_back(Vector(Vector::Unit(K.dim(), i)));
      out.emplace_back(Vector(-Vector::Unit(K.dim(), i)));
    }
    return out;
  }
  Matrix A(static_cast<Eigen::Index>(G.size()), K.dim());
  for (std::size_t i = 0; i < G.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = G[i].normalized().transpose();
  return from_generators(dd::enumerate(A));
}

std::vector<ScalarFunctional> duals_angular(const PolyCone& K) {
  const auto& G = K.generators();
  Vector m = Vector::Zero(2);
  for (const auto& g : G) m += g.normalized();
  m.normalize();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  Vector glo, ghi;
  for (const auto& g : G) {
    const Vector u = g.normalized();
    const double a = std::atan2(m[0] * u[1] - m[1] * u[0], m.dot(u));
    if (a < lo) {
      lo = a;
      glo = u;
    }
    if (a > hi) {
      hi = a;
      ghi = u;
    }
  }
  // Inward normals of the two bounding rays.
  Vector nlo(2), nhi(2);
  nlo << -glo[1], glo[0];
  nhi << ghi[1], -ghi[0];
  std::vector<ScalarFunctional> out{ScalarFunctional(nlo), ScalarFunctional(nhi)};
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return lex_less(b.weights, a.weights);
  });
  return out;
}

}  // namespace

PolyCone::PolyCone(Eigen::Index dim, std::vector<Point> generators,
                   std::optional<std::vector<Point>> dual_generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim_ <= 0) throw InvalidArgument("PolyCone: dimension must be positive");
  for (const auto& g : generators_) {
    require_dim(g, dim_, "PolyCone generator");
    if (!g.allFinite()) throw InvalidArgument("PolyCone: non-finite generator");
    if (g.norm() == 0.0) throw InvalidArgument("PolyCone: zero generator");
  }
  if (!is_pointed(generators_, dim_)) throw InvalidArgument("PolyCone: cone is not pointed");
  if (dual_generators) {
    std::vector<ScalarFunctional> d;
    for (const auto& y : *dual_generators) {
      require_dim(y, dim_, "PolyCone dual generator");
      if (y.norm() == 0.0) throw InvalidArgument("PolyCone: zero dual generator");
      for (const auto& g : generators_)
        if (y.dot(g) < -1e-9 * y.norm() * g.norm())
          throw InvalidArgument("PolyCone: dual generator negative on a generator");
      d.emplace_back(y.normalized());
    }
    if (d.empty()) throw InvalidArgument("PolyCone: empty dual generator list");
    duals_ = std::move(d);
    user_duals_ = true;
  }
}

PolyCone PolyCone::orthant(Eigen::Index dim) {
  std::vector<Point> g;
  for (Eigen::Index i = 0; i < dim; ++i) g.push_back(Vector::Unit(dim, i));
  return PolyCone(dim, std::move(g));
}

PolyCone PolyCone::trivial(Eigen::Index dim) { return PolyCone(dim, {}); }

bool PolyCone::full_dimensional() const { return rank_of(generators_, dim_) == dim_; }

bool PolyCone::contains(const Point& p, double tol) const {
  require_dim(p, dim_, "PolyCone::contains");
  return in_cone(p, generators_, tol);
}

ConicPolytope PolyCone::as_set() const {
  return ConicPolytope::cone(Point::Zero(dim_), generators_);
}

const std::vector<ScalarFunctional>& PolyCone::duals() const {
  if (!duals_) duals_ = dual_generators(*this);
  return *duals_;
}

std::vector<ScalarFunctional> dual_generators(const PolyCone& K) {
  if (K.user_duals()) return K.duals();
  const auto dim = K.dim();
  if (dim == 1) {
    if (K.generators().empty()) return {ScalarFunctional(make_vector({1})), ScalarFunctional(make_vector({-1}))};
    return {ScalarFunctional(make_vector({K.generators()[0][0] > 0 ? 1.0 : -1.0}))};
  }
  if (dim == 2 && K.full_dimensional()) return duals_angular(K);
  if (dim <= 3) return duals_by_dd(K);
  throw UnsupportedShape("dual_generators: dimension " + std::to_string(dim) +
                         " needs user-supplied dual_generators");
}

std::vector<ScalarFunctional> k_e_plus(const PolyCone& K, const Direction& e, double tol) {
  require_dim(e.vector, K.dim(), "k_e_plus");
  if (e.vector.norm() == 0.0 || !K.contains(e.vector))
    throw InvalidArgument("k_e_plus: e must lie in K \\ {0}");
  std::vector<ScalarFunctional> out;
  for (const auto& y : K.duals())
    if (std::abs(y(e.vector)) > tol) out.push_back(y);
  if (out.empty())
    throw InternalInconsistency("k_e_plus: no dual generator is nonzero on e");
  return out;
}

bool interior_member(const Point& p, const PolyCone& K, double tol) {
  require_dim(p, K.dim(), "interior_member");
  if (!K.full_dimensional()) throw PreconditionFailed("interior_member: interior of K is empty");
  for (const auto& y : K.duals())
    if (y(p) < tol * y.norm) return false;
  return true;
}

namespace {

// max s such that a - b in K shifted by s along every dual generator,
// over b in conv(piece) + cone(rays); s capped at 1.
double strict_margin(const Point& a, const std::vector<Point>& piece, const std::vector<Point>& rays,
                     const std::vector<ScalarFunctional>& duals) {
  const int nv = static_cast<int>(piece.size()), nr = static_cast<int>(rays.size());
  lp::Problem p;
  p.add_variables(nv + nr, true);
  const int s = p.add_variable(false);
  for (const auto& y : duals) {
    Vector row = Vector::Zero(nv + nr + 1);
    for (int j = 0; j < nv; ++j) row[j] = y(piece[static_cast<std::size_t>(j)]);
    for (int j = 0; j < nr; ++j) row[nv + j] = y(rays[static_cast<std::size_t>(j)]);
    row[s] = 1.0;
    p.add_constraint(row, lp::Sense::less_equal, y(a));
  }
  Vector ones = Vector::Zero(nv + nr + 1);
  ones.head(nv).setOnes();
  p.add_constraint(ones, lp::Sense::equal, 1.0);
  p.add_constraint(Vector::Unit(nv + nr + 1, s), lp::Sense::less_equal, 1.0);
  p.set_objective(Vector::Unit(nv + nr + 1, s), true);
  const auto sol = p.solve();
  if (sol.status != lp::Status::optimal) return -std::numeric_limits<double>::infinity();
  return sol.objective;
}

// Searches y = sum nu_j d_j (nu >= 0, sum nu = 1) maximizing t subject to
// y.(b - a) >= t for every vertex b of B and y.r >= 0 for every ray of B.
std::optional<lp::Solution> separate_vertex(const Point& a, const ConicPolytope& B,
                                            const std::vector<ScalarFunctional>& duals) {
  const int n = static_cast<int>(duals.size());
  lp::Problem p;
  p.add_variables(n, true);
  const int t = p.add_variable(false);
  for (const auto& b : B.vertices()) {
    Vector row = Vector::Zero(n + 1);
    for (int j = 0; j < n; ++j) row[j] = duals[static_cast<std::size_t>(j)](a - b);
    row[t] = 1.0;
    p.add_constraint(row, lp::Sense::less_equal, 0.0);
  }
  for (const auto& r : B.rays()) {
    Vector row = Vector::Zero(n + 1);
    for (int j = 0; j < n; ++j) row[j] = duals[static_cast<std::size_t>(j)](r);
    p.add_constraint(row, lp::Sense::greater_equal, 0.0);
  }
  Vector ones = Vector::Zero(n + 1);
  ones.head(n).setOnes();
  p.add_constraint(ones, lp::Sense::equal, 1.0);
  p.add_constraint(Vector::Unit(n + 1, t), lp::Sense::less_equal, 1.0);
  p.set_objective(Vector::Unit(n + 1, t), true);
  auto sol = p.solve();
  if (sol.status != lp::Status::optimal) return std::nullopt;
  return sol;
}

// min y.r over y in K+ with sum nu = 1, optionally restricted to y.r_B >= 0.
std::optional<lp::Solution> min_on_ray(const Point& r, const std::vector<Point>& b_rays,
                                       const std::vector<ScalarFunctional>& duals) {
  const int n = static_cast<int>(duals.size());
  lp::Problem p;
  p.add_variables(n, true);
  for (const auto& rb : b_rays) {
    Vector row(n);
    for (int j = 0; j < n; ++j) row[j] = duals[static_cast<std::size_t>(j)](rb);
    p.add_constraint(row, lp::Sense::greater_equal, 0.0);
  }
  p.add_constraint(Vector::Ones(n), lp::Sense::equal, 1.0);
  Vector obj(n);
  for (int j = 0; j < n; ++j) obj[j] = duals[static_cast<std::size_t>(j)](r);
  p.set_objective(obj, false);
  auto sol = p.solve();
  if (sol.status != lp::Status::optimal) return std::nullopt;
  return sol;
}

Vector combine(const std::vector<ScalarFunctional>& duals, const Vector& nu) {
  Vector y = Vector::Zero(duals.front().weights.size());
  for (std::size_t j = 0; j < duals.size(); ++j) y += nu[static_cast<Eigen::Index>(j)] * duals[j].weights;
  return y;
}

}  // namespace

double strict_inclusion_margin(const ConicPolytope& A, const ConicPolytope& B, const PolyCone& K) {
  if (A.dim() != B.dim() || A.dim() != K.dim())
    throw DimensionMismatch("strict_inclusion_margin: dimensions differ");
  std::vector<Point> recession = B.rays();
  recession.insert(recession.end(), K.generators().begin(), K.generators().end());
  for (const auto& r : A.rays())
    if (!in_cone(r, recession)) return -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& a : A.vertices()) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < B.pieces().size(); ++i)
      best = std::max(best, strict_margin(a, B.piece_vertices(i), B.rays(), K.duals()));
    worst = std::min(worst, best);
  }
  return worst;
}

InclusionCheck scalarized_inclusion_check(const ConicPolytope& A, const ConicPolytope& B,
                                          const PolyCone& K, bool strict, double tol) {
  if (A.dim() != B.dim() || A.dim() != K.dim())
    throw DimensionMismatch("scalarized_inclusion_check: dimensions differ");
  InclusionCheck out;
  out.strict = strict;
  const auto& duals = K.duals();

  // Direct inclusion.
  if (!strict) {
    const auto e = excess(A, minkowski(B, K.as_set()));
    out.direct = !e.infinite && e.value <= tol;
    if (!out.direct) out.outside_vertex = e.attaining_vertex;
  } else {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& a : A.vertices()) {
      const double m = strict_inclusion_margin(ConicPolytope::singleton(a).with_rays(A.rays()), B, K);
      if (m < worst) {
        worst = m;
        if (!(m > 1e-7)) out.outside_vertex = a;
      }
    }
    const bool ok = worst > 1e-7;
    out.direct = ok;
  }

  // Generator-wise comparison.
  out.generators_only = true;
  for (const auto& y : duals) {
    DualComparison c;
    c.functional = y;
    c.min_a = support_min(A, y.weights);
    c.min_b = support_min(B, y.weights);
    if (strict) {
      c.holds = !c.min_a.minus_infinity &&
                (c.min_b.minus_infinity || c.min_a.value > c.min_b.value + tol);
    } else {
      c.holds = c.min_b.minus_infinity ||
                (!c.min_a.minus_infinity && c.min_a.value >= c.min_b.value - tol);
    }
    out.generators_only = out.generators_only && c.holds;
    out.per_generator.push_back(std::move(c));
  }

  // Exact comparison over all of K+.
  out.scalarized = true;
  for (const auto& r : A.rays()) {
    const auto sol = strict ? min_on_ray(r, {}, duals) : min_on_ray(r, B.rays(), duals);
    if (sol && sol->objective < -tol) {
      out.scalarized = false;
      out.separating_functional = combine(duals, sol->x);
      break;
    }
  }
  if (out.scalarized) {
    for (const auto& a : A.vertices()) {
      const auto sol = separate_vertex(a, B, duals);
      if (!sol) continue;  // inf y(B) = -infinity for every y in K+
      const bool violated = strict ? sol->objective >= -tol : sol->objective > tol;
      if (violated) {
        out.scalarized = false;
        out.separating_functional = combine(duals, sol->x.head(static_cast<Eigen::Index>(duals.size())));
        break;
      }
    }
  }
  return out;
}

std::vector<Halfspace> facets(const ConicPolytope& S) {
  const auto d = S.dim();
  const auto& V = S.vertices();
  const auto& R = S.rays();
  Matrix A(static_cast<Eigen::Index>(V.size() + R.size()), d + 1);
  Eigen::Index row = 0;
  for (const auto& v : V) {
    A.row(row).head(d) = v.transpose();
    A(row++, d) = 1.0;
  }
  for (const auto& r : R) {
    A.row(row).head(d) = r.transpose();
    A(row++, d) = 0.0;
  }
  const auto g = dd::enumerate(A);
  std::vector<Halfspace> out;
  auto push = [&](const Vector& yb) {
    const Vector y = yb.head(d);
    const double n = y.norm();
    if (n <= 1e-10) return;  // the trivial inequality 1 >= 0
    out.push_back({y / n, yb[d] / n});
  };
  for (const auto& r : g.rays) push(r);
  for (const auto& l : g.lineality) {
    push(l);
    push(-l);
  }
  return out;
}

}  // namespace setcalc
