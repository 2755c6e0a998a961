#include "setcalc/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "setcalc/sampling.hpp"

namespace setcalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SetValuedMap::SetValuedMap(MapPtr expr, Eigen::Index dim_x, const PolyCone& K)
    : expr_(std::move(expr)), dim_x_(dim_x), K_(std::make_shared<PolyCone>(K)) {
  if (!expr_) throw InvalidArgument("SetValuedMap: null expression");
  if (map_dim(*expr_) != K.dim()) throw DimensionMismatch("SetValuedMap: map and cone dimensions differ");
}

ConicPolytope SetValuedMap::operator()(const Point& x) const {
  require_dim(x, dim_x_, "SetValuedMap");
  return eval_map(*expr_, x);
}

const char* to_string(Status s) {
  switch (s) {
    case Status::accepted:
      return "accepted";
    case Status::rejected:
      return "rejected";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict decide(std::vector<CurvePoint> curve, const SamplingSchedule& s) {
  Verdict v;
  v.curve = std::move(curve);
  if (v.curve.empty()) throw InternalInconsistency("decide: empty curve");
  for (const auto& c : v.curve) {
    if (std::isinf(c.worst_ratio)) {
      v.status = Status::rejected;
      v.witness = c.witness;
      v.note = "infinite excess (recession directions escape)";
      return v;
    }
  }
  const std::size_t n = v.curve.size();
  bool small = true;
  for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) small = small && v.curve[i].worst_ratio <= s.accept_tol;
  bool monotone = true;
  for (std::size_t i = n / 2; i + 1 < n; ++i)
    monotone = monotone && v.curve[i + 1].worst_ratio <= v.curve[i].worst_ratio + s.accept_tol;
  if (small && monotone) {
    v.status = Status::accepted;
  } else if (v.curve.back().worst_ratio >= s.reject_tol) {
    v.status = Status::rejected;
    v.witness = v.curve.back().witness;
  } else {
    v.status = Status::inconclusive;
    v.witness = v.curve.back().witness;
  }
  return v;
}

std::vector<CurvePoint> radial_curve(const Point& center, const SamplingSchedule& s,
                                     const std::function<double(const Point&, double)>& f) {
  const auto dim = center.size();
  struct Item {
    std::size_t radius;
    Point x;
  };
  std::vector<Item> items;
  for (std::size_t k = 0; k < s.radii.size(); ++k) {
    for (const auto& d : sphere_directions(dim, s.samples_per_sphere, s.seed, static_cast<int>(k))) {
      Point x = center + s.radii[k] * d;
      if (s.domain_box.contains(x)) items.push_back({k, std::move(x)});
    }
  }
  const auto values = parallel_map<double>(items.size(), [&](std::size_t i) {
    return f(items[i].x, s.radii[items[i].radius]);
  });
  std::vector<CurvePoint> curve(s.radii.size());
  for (std::size_t k = 0; k < s.radii.size(); ++k) curve[k].radius = s.radii[k];
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& c = curve[items[i].radius];
    if (!c.witness || values[i] > c.worst_ratio) {
      c.worst_ratio = values[i];
      c.witness = items[i].x;
    }
  }
  return curve;
}

SetValuedMap epi(const SetValuedMap& F) {
  return SetValuedMap(expr::epi(F.expr(), F.cone()), F.dim_x(), F.cone());
}

ScalarizedMap scalarize(const SetValuedMap& F, const ScalarFunctional& y) {
  require_dim(y.weights, F.dim_y(), "scalarize");
  if (y.norm == 0.0) throw InvalidArgument("scalarize: zero functional");
  return ScalarizedMap(F, y);
}

namespace {

double excess_value(const ConicPolytope& A, const ConicPolytope& B) {
  const auto e = excess(A, B);
  return e.infinite ? kInf : e.value;
}

// Local rule for continuity tests: only the three smallest radii count.
// `shift` is subtracted from the curve before comparing with the thresholds.
Verdict decide_local(std::vector<CurvePoint> curve, const SamplingSchedule& s, double shift) {
  Verdict v;
  v.curve = std::move(curve);
  const std::size_t n = v.curve.size();
  bool small = true;
  for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i)
    small = small && v.curve[i].worst_ratio - shift <= s.accept_tol;
  if (small) {
    v.status = Status::accepted;
  } else {
    v.status = v.curve.back().worst_ratio - shift >= s.reject_tol ? Status::rejected : Status::inconclusive;
    v.witness = v.curve.back().witness;
  }
  return v;
}

Verdict continuity(const SetValuedMap& F, const Point& x0, const SamplingSchedule& s, bool upper) {
  require_dim(x0, F.dim_x(), "continuity test");
  const ConicPolytope F0 = F(x0);
  auto curve = radial_curve(x0, s, [&](const Point& u, double) {
    return upper ? excess_value(F(u), F0) : excess_value(F0, F(u));
  });
  const double eps_min = *std::min_element(s.eps_grid.begin(), s.eps_grid.end());
  Verdict v = decide_local(std::move(curve), s, eps_min);
  std::ostringstream note;
  note << (upper ? "sup e(F(u), F(x0))" : "sup e(F(x0), F(u))") << " per radius; eps grid";
  for (double e : s.eps_grid) {
    bool pass = true;
    const auto n = v.curve.size();
    for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) pass = pass && v.curve[i].worst_ratio <= e + s.accept_tol;
    note << ' ' << e << (pass ? ":pass" : ":fail");
  }
  v.note = note.str();
  return v;
}

Verdict semicontinuity(const ExtendedScalar& f, const Point& x0, const SamplingSchedule& s, bool lower) {
  const SupportMin f0 = f(x0);
  auto curve = radial_curve(x0, s, [&](const Point& u, double) {
    const SupportMin fu = f(u);
    if (lower) {
      if (f0.minus_infinity) return 0.0;
      if (fu.minus_infinity) return kInf;
      return std::max(0.0, f0.value - fu.value);
    }
    if (fu.minus_infinity) return 0.0;
    if (f0.minus_infinity) return kInf;
    return std::max(0.0, fu.value - f0.value);
  });
  Verdict v = decide_local(std::move(curve), s, 0.0);
  v.note = lower ? "sup (f(x0) - f(u))+ per radius" : "sup (f(u) - f(x0))+ per radius";
  return v;
}

}  // namespace

Verdict test_uc(const SetValuedMap& F, const Point& x0, const SamplingSchedule& s) {
  return continuity(F, x0, s, true);
}

Verdict test_lc(const SetValuedMap& F, const Point& x0, const SamplingSchedule& s) {
  return continuity(F, x0, s, false);
}

Verdict test_lsc(const ExtendedScalar& f, const Point& x0, const SamplingSchedule& s) {
  return semicontinuity(f, x0, s, true);
}

Verdict test_usc(const ExtendedScalar& f, const Point& x0, const SamplingSchedule& s) {
  return semicontinuity(f, x0, s, false);
}

Verdict test_k_lipschitz(const SetValuedMap& F, const Point& x0, double L, const Direction& e,
                         const SamplingSchedule& s) {
  if (!(L > 0)) throw InvalidArgument("test_k_lipschitz: L must be positive");
  require_dim(e.vector, F.dim_y(), "test_k_lipschitz direction");
  if (e.vector.norm() == 0.0 || !F.cone().contains(e.vector))
    throw InvalidArgument("test_k_lipschitz: e must lie in K \\ {0}");
  const ConicPolytope Kset = F.cone().as_set();
  std::vector<CurvePoint> curve;
  std::vector<std::optional<Point>> partners;
  for (std::size_t k = 0; k < s.radii.size(); ++k) {
    std::vector<Point> pts{x0};
    for (const auto& d : sphere_directions(x0.size(), s.samples_per_sphere, s.seed, static_cast<int>(k))) {
      Point x = x0 + s.radii[k] * d;
      if (s.domain_box.contains(x)) pts.push_back(std::move(x));
    }
    std::vector<ConicPolytope> values;
    for (const auto& p : pts) values.push_back(F(p));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = 0; b < pts.size(); ++b)
        if (a != b) pairs.emplace_back(a, b);
    const auto ratios = parallel_map<double>(pairs.size(), [&](std::size_t i) {
      const auto [a, b] = pairs[i];
      const double gap = (pts[a] - pts[b]).norm();
      if (gap == 0.0) return 0.0;
      const auto lhs = values[a].translated(L * gap * e.vector);
      return excess_value(lhs, minkowski(values[b], Kset)) / gap;
    });
    CurvePoint c;
    c.radius = s.radii[k];
    std::optional<Point> partner;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!c.witness || ratios[i] > c.worst_ratio) {
        c.worst_ratio = ratios[i];
        c.witness = pts[pairs[i].first];
        partner = pts[pairs[i].second];
      }
    }
    curve.push_back(std::move(c));
    partners.push_back(std::move(partner));
  }
  Verdict v = decide(curve, s);
  if (v.status != Status::accepted) {
    std::size_t at = curve.size() - 1;
    for (std::size_t k = 0; k < curve.size(); ++k)
      if (std::isinf(curve[k].worst_ratio)) {
        at = k;
        break;
      }
    v.witness = curve[at].witness;
    v.witness_partner = partners[at];
  }
  v.note = "ratio e(F(x) + L|x-u|e, F(u) + K) / |x-u| over point pairs on each sphere";
  return v;
}

std::vector<std::pair<Point, Point>> convexity_pairs(const SamplingSchedule& s) {
  const auto dim = s.domain_box.dim();
  const int per_axis = dim == 1 ? 9 : (dim == 2 ? 5 : 3);
  const auto grid = box_grid(s.domain_box, per_axis);
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) out.emplace_back(grid[i], grid[j]);
  const double diag = (s.domain_box.upper - s.domain_box.lower).norm();
  Rng rng(s.seed ^ 0xC0FFEEULL);
  int added = 0, attempts = 0;
  while (added < 4 * s.samples_per_sphere && attempts < 100 * s.samples_per_sphere) {
    ++attempts;
    Point a(dim), b(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      a[i] = rng.uniform(s.domain_box.lower[i], s.domain_box.upper[i]);
      b[i] = rng.uniform(s.domain_box.lower[i], s.domain_box.upper[i]);
    }
    if ((a - b).norm() < 0.1 * diag) continue;
    out.emplace_back(std::move(a), std::move(b));
    ++added;
  }
  return out;
}

Verdict test_upper_k_convex(const SetValuedMap& F, const SamplingSchedule& s, bool strict) {
  const auto pairs = convexity_pairs(s);
  const ConicPolytope Kset = F.cone().as_set();
  const double lambdas[] = {0.25, 0.5, 0.75};
  struct Job {
    std::size_t pair;
    int lambda;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (int l = 0; l < 3; ++l) jobs.push_back({p, l});
  const auto values = parallel_map<double>(jobs.size(), [&](std::size_t i) {
    const auto& [x, y] = pairs[jobs[i].pair];
    const double lam = lambdas[jobs[i].lambda];
    const auto lhs = minkowski(scale(lam, F(x)), scale(1.0 - lam, F(y)));
    const auto mid = F(lam * x + (1.0 - lam) * y);
    if (strict) return -strict_inclusion_margin(lhs, mid, F.cone());
    return excess_value(lhs, minkowski(mid, Kset));
  });
  Verdict v;
  double worst = -kInf;
  for (int l = 0; l < 3; ++l) {
    CurvePoint c;
    c.radius = lambdas[l];
    c.worst_ratio = -kInf;
    std::size_t best = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].lambda != l) continue;
      if (values[i] > c.worst_ratio) {
        c.worst_ratio = values[i];
        c.witness = pairs[jobs[i].pair].first;
        best = jobs[i].pair;
      }
    }
    if (c.worst_ratio > worst) {
      worst = c.worst_ratio;
      v.witness = pairs[best].first;
      v.witness_partner = pairs[best].second;
    }
    v.curve.push_back(std::move(c));
  }
  if (strict) {
    // worst = -(smallest strict margin)
    v.status = worst <= -s.accept_tol ? Status::accepted : (worst >= -1e-12 ? Status::rejected : Status::inconclusive);
    v.note = "curve: minus the smallest strict margin per lambda";
  } else {
    v.status = worst <= s.accept_tol ? Status::accepted : (worst >= s.reject_tol ? Status::rejected : Status::inconclusive);
    v.note = "curve: worst excess per lambda over grid and random pairs";
  }
  if (v.status == Status::accepted) {
    v.witness.reset();
    v.witness_partner.reset();
  }
  return v;
}

}  // namespace setcalc
