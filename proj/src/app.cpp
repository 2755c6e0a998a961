#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "json_io.hpp"
#include "setcalc/optimize.hpp"
#include "setcalc/sampling.hpp"

namespace setcalc::app {

// Defined in the generated golden table.
struct EmbeddedGolden {
  const char* file;
  const char* text;
};
extern const EmbeddedGolden kEmbeddedGoldens[];
extern const std::size_t kEmbeddedGoldenCount;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json num(double x) {
  if (x == 0.0) return 0.0;  // no -0 in reports
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

Json opt_vec(const std::optional<Point>& p) { return p ? vec(*p) : Json(nullptr); }

Json mat(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Json curve_json(const std::vector<CurvePoint>& curve) {
  Json a = Json::array();
  for (const auto& c : curve) {
    Json p;
    p["radius"] = num(c.radius);
    p["worst_ratio"] = num(c.worst_ratio);
    p["witness"] = opt_vec(c.witness);
    a.push_back(std::move(p));
  }
  return a;
}

Json verdict_json(const Verdict& v, bool with_curve = true) {
  Json j;
  j["status"] = to_string(v.status);
  j["note"] = v.note;
  j["witness"] = opt_vec(v.witness);
  j["witness_partner"] = opt_vec(v.witness_partner);
  if (with_curve) j["curve"] = curve_json(v.curve);
  return j;
}

Json minimality_json(const MinimalityReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["status"] = to_string(r.status);
  j["epsilon"] = num(r.epsilon);
  j["grid_step"] = num(r.grid_step);
  j["points_checked"] = r.points_checked;
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(Json{{"x", vec(x.x)}, {"reason", x.reason}});
  j["witnesses"] = std::move(w);
  j["dominated_by_value"] = r.dominated_by_value ? Json(*r.dominated_by_value) : Json(nullptr);
  return j;
}

int exit_for(Status s) {
  switch (s) {
    case Status::accepted:
      return 0;
    case Status::rejected:
      return 1;
    case Status::inconclusive:
      return 2;
  }
  return 2;
}

Status combine(const std::vector<Status>& all) {
  bool rej = false, inc = false;
  for (auto s : all) {
    rej = rej || s == Status::rejected;
    inc = inc || s == Status::inconclusive;
  }
  return rej ? Status::rejected : inc ? Status::inconclusive : Status::accepted;
}

void apply(SamplingSchedule& s, const Options& opt) {
  if (opt.seed) s.seed = *opt.seed;
  if (opt.grid) s.grid_points = *opt.grid;
  if (opt.tol_accept) s.accept_tol = *opt.tol_accept;
  if (opt.tol_reject) s.reject_tol = *opt.tol_reject;
  if (s.grid_points < 2) throw InvalidArgument("--grid must be at least 2");
  s.validate();
}

Json schedule_json(const SamplingSchedule& s) {
  Json j;
  j["seed"] = s.seed;
  j["radii"] = Json::array();
  for (double r : s.radii) j["radii"].push_back(num(r));
  j["samples_per_sphere"] = s.samples_per_sphere;
  j["accept_tol"] = num(s.accept_tol);
  j["reject_tol"] = num(s.reject_tol);
  j["domain_box"] = Json{{"lower", vec(s.domain_box.lower)}, {"upper", vec(s.domain_box.upper)}};
  j["grid_points"] = s.grid_points;
  j["eps_grid"] = Json::array();
  for (double e : s.eps_grid) j["eps_grid"].push_back(num(e));
  return j;
}

Json header(const std::string& command, const LoadedProblem* p) {
  Json j;
  j["tool"] = "setcalc";
  j["version"] = version();
  j["command"] = command;
  if (p) j["problem"] = Json{{"name", p->pf.name}, {"hash", p->hash}};
  else j["problem"] = nullptr;
  return j;
}

SetValuedMap named_map(const ProblemFile& pf, const std::string& name) {
  const MapPtr* m = find_named(pf.maps, name);
  if (!m) throw InvalidArgument("no map named '" + name + "' in the problem file");
  return SetValuedMap(*m, pf.dim_x, pf.cone());
}

const LinOp& named_candidate(const ProblemFile& pf, const std::string& name) {
  const LinOp* T = find_named(pf.candidates, name);
  if (!T) throw InvalidArgument("no candidate operator named '" + name + "' in the problem file");
  return *T;
}

Point base_point(const ProblemFile& pf, bool required) {
  if (pf.base_point) return *pf.base_point;
  if (required) throw InvalidArgument("the problem file has no base_point");
  return Vector::Zero(pf.dim_x);
}

const Direction& direction(const ProblemFile& pf) {
  if (!pf.direction_e) throw InvalidArgument("the problem file has no direction_e");
  return *pf.direction_e;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector uniform_vec(Rng& g, Eigen::Index d, double lo, double hi) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = g.uniform(lo, hi);
  return v;
}

PolyCone random_cone(Rng& g, Eigen::Index d) {
  if (g.uniform() < 0.5) return PolyCone::orthant(d);
  std::vector<Point> gens;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector v = uniform_vec(g, d, 0.0, 0.4);
    v[i] += 1.0;
    gens.push_back(v);
  }
  return PolyCone(d, gens);
}

Vector random_in_cone(Rng& g, const PolyCone& K, double scale) {
  Vector k = Vector::Zero(K.dim());
  for (const auto& gen : K.generators()) k += g.uniform(0.0, scale) * gen;
  return k;
}

Json cone_json(const PolyCone& K) {
  Json a = Json::array();
  for (const auto& g : K.generators()) a.push_back(vec(g));
  return a;
}

// ---------------------------------------------------------------------------
// Randomized property suites: one instance per trial, seeded independently.

struct TrialOutcome {
  bool counted = true;  // false: instance skipped (precondition not met)
  bool premise = false;  // the implication's left side held
  bool violation = false;
  Json instance;
};

struct Suite {
  const char* statement;
  int default_trials;
  std::function<TrialOutcome(Rng&, const SamplingSchedule&)> run;
};

TrialOutcome trial_radstrom(Rng& g, const SamplingSchedule&) {
  const Eigen::Index d = g.integer(2, 3);
  const PolyCone K = random_cone(g, d);
  std::vector<Point> b, c, a, c_rays;
  for (long long i = g.integer(1, 3); i > 0; --i) b.push_back(uniform_vec(g, d, -1, 1));
  for (long long i = g.integer(1, 2); i > 0; --i) c.push_back(uniform_vec(g, d, -1, 1));
  if (g.uniform() < 0.5) {
    Vector r = random_in_cone(g, K, 1.0);
    if (r.norm() > 1e-9) c_rays.push_back(r / r.norm());
  }
  for (long long i = g.integer(1, 3); i > 0; --i) {
    const double u = g.uniform();
    if (u < 0.5) {
      a.push_back(b[static_cast<std::size_t>(g.integer(0, static_cast<long long>(b.size()) - 1))] +
                  random_in_cone(g, K, 0.8));
    } else if (u < 0.75) {
      Vector p = Vector::Zero(d);
      double tot = 0;
      std::vector<double> w;
      for (std::size_t k = 0; k < b.size(); ++k) w.push_back(g.uniform(0.01, 1.0)), tot += w.back();
      for (std::size_t k = 0; k < b.size(); ++k) p += w[k] / tot * b[k];
      a.push_back(p + random_in_cone(g, K, 0.3));
    } else {
      a.push_back(uniform_vec(g, d, -1, 1.5));
    }
  }
  const ConicPolytope A(d, a), B(d, b), C(d, c, c_rays);
  const auto r = radstrom_check(A, B, C, K);
  TrialOutcome out;
  out.premise = r.hypothesis;
  out.violation = r.hypothesis && !r.conclusion;
  out.instance = Json{{"A", set_to_json(A)}, {"B", set_to_json(B)}, {"C", set_to_json(C)}, {"K", cone_json(K)},
                      {"hypothesis", r.hypothesis}, {"conclusion", r.conclusion}};
  return out;
}

TrialOutcome trial_rez_incl(Rng& g, const SamplingSchedule&) {
  const Eigen::Index d = g.integer(2, 3);
  const PolyCone K = random_cone(g, d);
  std::vector<Point> b, a, b_rays;
  for (long long i = g.integer(2, 4); i > 0; --i) b.push_back(uniform_vec(g, d, -1, 1));
  if (g.uniform() < 0.3) {
    Vector r = random_in_cone(g, K, 1.0);
    if (r.norm() > 1e-9) b_rays.push_back(r / r.norm());
  }
  for (long long i = g.integer(1, 3); i > 0; --i) {
    Vector p = Vector::Zero(d);
    double tot = 0;
    std::vector<double> w;
    for (std::size_t k = 0; k < b.size(); ++k) w.push_back(g.uniform(0.0, 1.0)), tot += w.back();
    for (std::size_t k = 0; k < b.size(); ++k) p += w[k] / tot * b[k];
    a.push_back(p + random_in_cone(g, K, 0.5) + uniform_vec(g, d, -0.3, 0.3));
  }
  const ConicPolytope A(d, a), B(d, b, b_rays, true);
  const auto r = scalarized_inclusion_check(A, B, K);
  TrialOutcome out;
  out.premise = r.scalarized;
  out.violation = r.scalarized != r.direct;
  out.instance = Json{{"A", set_to_json(A)},  {"B", set_to_json(B)},           {"K", cone_json(K)},
                      {"direct", r.direct}, {"scalarized", r.scalarized}};
  return out;
}

struct SumInstance {
  MapPtr F1, F2;
  double xbar;
  Vector T1, T2;
  Vector b;
};

// F1 = sum_j a_j (x - c_j)^2 e_j, F2 = sum_j b_j |x - d_j| e_j on R -> R^2.
SumInstance random_sum_instance(Rng& g) {
  SumInstance s;
  std::vector<MapPtr> f1, f2;
  s.xbar = g.uniform(-0.5, 0.5);
  Vector a(2), c(2), d(2);
  s.b.resize(2);
  for (int j = 0; j < 2; ++j) {
    a[j] = g.uniform(0.2, 2.0);
    c[j] = g.uniform(-0.5, 0.5);
    s.b[j] = g.uniform(0.1, 1.5);
    d[j] = g.uniform(-0.5, 0.5);
  }
  if (g.uniform() < 0.3) s.xbar = d[0];
  s.T1.resize(2);
  s.T2.resize(2);
  for (int j = 0; j < 2; ++j) {
    const Vector e = Vector::Unit(2, j);
    const auto shifted = expr::affine(make_vector({1.0}), -c[j]);
    f1.push_back(expr::scalar_dir(expr::scale(a[j], expr::product({shifted, shifted})), e));
    f2.push_back(expr::scalar_dir(expr::scale(s.b[j], expr::norm(make_vector({d[j]}))), e));
    s.T1[j] = 2 * a[j] * (s.xbar - c[j]);
    const double gap = s.xbar - d[j];
    s.T2[j] = gap == 0.0 ? s.b[j] * g.uniform(-1, 1) : s.b[j] * (gap > 0 ? 1.0 : -1.0);
  }
  s.F1 = expr::sum(f1);
  s.F2 = expr::sum(f2);
  return s;
}

TrialOutcome sum_trial(Rng& g, const SamplingSchedule& sched, bool limiting) {
  const SumInstance inst = random_sum_instance(g);
  const PolyCone K = PolyCone::orthant(2);
  const SetValuedMap F1(inst.F1, 1, K), F2(inst.F2, 1, K);
  const LinOp T(Matrix(inst.T1 + inst.T2)), T1(Matrix(inst.T1)), T2(Matrix(inst.T2));
  const Point xbar = make_vector({inst.xbar});
  TrialOutcome out;
  SumRuleReport r;
  if (limiting) {
    r = limiting_sum_rule_check(F1, F2, xbar, T, inst.b.maxCoeff() + 0.1, Direction{make_vector({1.0, 1.0})}, sched,
                                false);
    out.counted = r.precondition.status == Status::accepted && r.upper_continuity->status == Status::accepted &&
                  r.k_lipschitz->status == Status::accepted;
  } else {
    r = sum_rule_check(F1, F2, xbar, T, sched, std::make_pair(T1, T2), false);
    out.counted = r.precondition.status == Status::accepted;
  }
  out.premise = out.counted;
  out.violation = out.counted && !r.holds();
  out.instance = Json{{"F1", map_to_json(*inst.F1)}, {"F2", map_to_json(*inst.F2)}, {"xbar", inst.xbar},
                      {"T", vec(inst.T1 + inst.T2)},  {"holds", r.holds()}};
  return out;
}

TrialOutcome trial_diff_rule(Rng& g, const SamplingSchedule& sched) {
  const double a = g.uniform(0.2, 2.0), c = g.uniform(-0.5, 0.5);
  double xbar = g.uniform(-0.5, 0.5);
  if (std::abs(xbar - c) < 0.05) xbar = c + (xbar >= c ? 0.05 : -0.05);
  const double sgn = xbar > c ? 1.0 : -1.0;
  const PolyCone K = PolyCone::orthant(1);
  const auto x0 = expr::coord(0);
  const MapPtr Fe = expr::scalar_dir(expr::scale(a, expr::product({x0, x0})), make_vector({1.0}));
  const ScalarPtr phi = expr::norm(make_vector({c}));
  const SetValuedMap F(Fe, 1, K);
  TrialOutcome out;
  try {
    const auto r = difference_rule_check(F, phi, Direction{make_vector({1.0})}, make_vector({xbar}),
                                         LinOp(Matrix::Constant(1, 1, 2 * a * xbar - sgn)),
                                         LinOp(Matrix::Constant(1, 1, sgn)), sched, make_vector({sgn}));
    out.violation = r.status == Status::rejected;
    out.counted = r.difference.status == Status::accepted && r.t_check.status == Status::accepted;
    out.premise = out.counted;
  } catch (const PreconditionFailed&) {
    out.counted = false;
  }
  out.instance = Json{{"F", map_to_json(*Fe)}, {"phi", scalar_to_json(*phi)}, {"xbar", xbar}};
  return out;
}

TrialOutcome trial_iscusc(Rng& g, const SamplingSchedule& sched) {
  const PolyCone K = PolyCone::orthant(1);
  auto cloud = [&]() {
    std::vector<Point> v;
    for (long long i = g.integer(1, 3); i > 0; --i) v.push_back(make_vector({g.uniform(-1, 1)}));
    return expr::const_set(ConicPolytope(1, v));
  };
  auto moving = [&]() {
    return expr::sum({cloud(), expr::affine_arg(Matrix::Constant(1, 1, g.uniform(-1, 1)), make_vector({0.0}))});
  };
  MapPtr m;
  switch (g.integer(0, 2)) {
    case 0:
      m = moving();
      break;
    case 1:
      m = expr::branch(expr::coord(0), moving(), moving());
      break;
    default:
      m = expr::branch(expr::norm(make_vector({0.0})), moving(), cloud());
      break;
  }
  const SetValuedMap F(m, 1, K);
  const Point x0 = make_vector({0.0});
  const ScalarizedMap f = scalarize(F, ScalarFunctional(make_vector({1.0})));
  const ExtendedScalar fs = [&](const Point& x) { return f(x); };
  const auto uc = test_uc(F, x0, sched), lc = test_lc(F, x0, sched);
  const auto lsc = test_lsc(fs, x0, sched), usc = test_usc(fs, x0, sched);
  TrialOutcome out;
  out.premise = uc.status == Status::accepted || lc.status == Status::accepted;
  out.violation = (uc.status == Status::accepted && lsc.status == Status::rejected) ||
                  (lc.status == Status::accepted && usc.status == Status::rejected);
  out.instance = Json{{"F", map_to_json(*m)},          {"uc", to_string(uc.status)},   {"lc", to_string(lc.status)},
                      {"lsc", to_string(lsc.status)}, {"usc", to_string(usc.status)}};
  return out;
}

TrialOutcome trial_scalarization(Rng& g, const SamplingSchedule& sched) {
  const PolyCone K = PolyCone::orthant(2);
  std::vector<Point> P;
  for (int i = 0; i < 3; ++i) P.push_back(uniform_vec(g, 2, -1, 1));
  const Vector a = uniform_vec(g, 2, -1, 1);
  const MapPtr m = expr::sum({expr::affine_arg(Matrix(a), Vector::Zero(2)), expr::const_set(ConicPolytope(2, P, {}, true))});
  const SetValuedMap F(m, 1, K);
  Vector t = a;
  if (g.uniform() < 0.5) t += uniform_vec(g, 2, -0.3, 0.3);
  const Point xbar = make_vector({g.uniform(-0.5, 0.5)});
  const LinOp T{Matrix(t)};
  const auto conv = scalarization_converse(F, xbar, T, sched);
  bool forward_ok = true;
  if (conv.frechet.status == Status::accepted)
    for (const auto& y : K.duals()) forward_ok = forward_ok && scalarization_forward(F, xbar, T, y, sched).status == Status::accepted;
  TrialOutcome out;
  out.premise = conv.frechet.status == Status::accepted;
  out.violation = !forward_ok || !conv.consistent;
  out.instance = Json{{"F", map_to_json(*m)}, {"xbar", xbar[0]}, {"T", vec(t)},
                      {"frechet", to_string(conv.frechet.status)}, {"combined", to_string(conv.combined.status)}};
  return out;
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s{
      {"radstrom", {"hypothesis implies conclusion (C with rays in K)", 500, trial_radstrom}},
      {"rez-incl", {"hulled B: scalarized comparison over K+ iff A inside B + K", 500, trial_rez_incl}},
      {"sum-conv",
       {"y* o T splits over grid subdifferentials", 100,
        [](Rng& g, const SamplingSchedule& sc) { return sum_trial(g, sc, false); }}},
      {"sum-lim",
       {"limiting sum rule under u.c. and K-Lipschitz hypotheses", 50,
        [](Rng& g, const SamplingSchedule& sc) { return sum_trial(g, sc, true); }}},
      {"diff-rule", {"difference rule inner checks accepted", 50, trial_diff_rule}},
      {"iscusc", {"u.c. implies l.s.c. and l.c. implies u.s.c. of the minimal function", 50, trial_iscusc}},
      {"scalarization",
       {"forward scalarization and shared-schedule converse consistent", 100, trial_scalarization}},
  };
  return s;
}

Report run_suite(const std::string& lemma, const Suite& suite, const Options& opt) {
  SamplingSchedule sched = SamplingSchedule::defaults(1);
  apply(sched, opt);
  const int trials = opt.trials.value_or(suite.default_trials);
  if (trials < 1) throw InvalidArgument("--trials must be positive");
  int counted = 0, premises = 0, violations = 0;
  Json counterexamples = Json::array();
  for (int i = 0; i < trials; ++i) {
    Rng g(mix_seed(sched.seed, static_cast<std::uint64_t>(i)));
    // The randomized maps live on R^1 (or the sets on R^2, R^3); the schedule box is per instance.
    const TrialOutcome t = suite.run(g, sched);
    counted += t.counted;
    premises += t.counted && t.premise;
    if (t.violation) {
      ++violations;
      Json c = t.instance;
      c["trial"] = i;
      counterexamples.push_back(std::move(c));
    }
  }
  Report rep;
  rep.json = header("verify", nullptr);
  rep.json["config"] = schedule_json(sched);
  Json r;
  r["lemma"] = lemma;
  r["mode"] = "random";
  r["statement"] = suite.statement;
  r["trials"] = trials;
  r["counted"] = counted;
  r["skipped"] = trials - counted;
  r["premise_held"] = premises;
  r["violations"] = violations;
  r["counterexamples"] = std::move(counterexamples);
  rep.json["results"] = Json::array({std::move(r)});
  rep.exit_code = violations == 0 ? 0 : 1;
  rep.json["status"] = violations == 0 ? "accepted" : "rejected";
  rep.json["exit_code"] = rep.exit_code;
  return rep;
}

// ---------------------------------------------------------------------------
// File-driven verification: maps and candidates are looked up by fixed names.

Json verify_file(const LoadedProblem& p, const std::string& lemma, const Options& opt, const SamplingSchedule& s,
                 Status& status) {
  const ProblemFile& pf = p.pf;
  const PolyCone& K = pf.cone();
  Json r;
  r["lemma"] = lemma;
  r["mode"] = "file";
  if (lemma == "radstrom") {
    const Point x = base_point(pf, false);
    const auto A = named_map(pf, "A")(x), B = named_map(pf, "B")(x), C = named_map(pf, "C")(x);
    bool pre = true;
    for (const auto& ray : C.rays()) pre = pre && K.contains(ray);
    const auto out = radstrom_check(A, B, C, K, s.accept_tol, false);
    r["precondition"] = pre;
    r["hypothesis"] = out.hypothesis;
    r["hypothesis_excess"] = num(out.hypothesis_excess);
    r["conclusion"] = out.conclusion;
    r["failing_vertex"] = opt_vec(out.failing_vertex);
    const bool violated = out.hypothesis && !out.conclusion;
    r["implication_holds"] = !violated;
    if (violated && !pre) r["note"] = "counterexample once the rays-in-K condition on C is dropped";
    status = violated ? Status::rejected : Status::accepted;
  } else if (lemma == "rez-incl") {
    const Point x = base_point(pf, false);
    const auto A = named_map(pf, "A")(x), B = named_map(pf, "B")(x);
    const auto c = scalarized_inclusion_check(A, B, K);
    r["direct"] = c.direct;
    r["scalarized"] = c.scalarized;
    r["generators_only"] = c.generators_only;
    try {
      const auto e = excess(A, B.with_rays(K.generators()));
      r["excess"] = e.infinite ? Json("inf") : Json(e.value);
    } catch (const UnsupportedShape&) {
      r["excess"] = nullptr;
    }
    r["separating_functional"] = c.separating_functional ? vec(*c.separating_functional) : Json(nullptr);
    r["outside_vertex"] = opt_vec(c.outside_vertex);
    const bool forward = !c.direct || c.scalarized;
    if (B.hulled()) {
      r["converse"] = "applicable";
      r["implication_holds"] = forward && (!c.scalarized || c.direct);
    } else {
      r["converse"] = "not applicable (B is not convex)";
      r["implication_holds"] = forward;
    }
    status = r["implication_holds"].get<bool>() ? Status::accepted : Status::rejected;
  } else if (lemma == "sum-conv" || lemma == "sum-lim") {
    const auto F1 = named_map(pf, "F1"), F2 = named_map(pf, "F2");
    const Point x = base_point(pf, true);
    const LinOp& T = named_candidate(pf, "T");
    SumRuleReport out;
    if (lemma == "sum-conv") {
      std::optional<std::pair<LinOp, LinOp>> parts;
      if (find_named(pf.candidates, "T1") && find_named(pf.candidates, "T2"))
        parts = std::make_pair(named_candidate(pf, "T1"), named_candidate(pf, "T2"));
      out = sum_rule_check(F1, F2, x, T, s, parts);
    } else {
      out = limiting_sum_rule_check(F1, F2, x, T, opt.lipschitz.value_or(1.0), direction(pf), s);
      r["upper_continuity_F1"] = verdict_json(*out.upper_continuity, false);
      r["k_lipschitz_F2"] = verdict_json(*out.k_lipschitz, false);
    }
    r["precondition"] = verdict_json(out.precondition, false);
    r["trivial_inclusion"] = out.trivial_inclusion ? Json(*out.trivial_inclusion) : Json(nullptr);
    Json rows = Json::array();
    for (std::size_t i = 0; i < out.duals.size(); ++i)
      rows.push_back(Json{{"functional", vec(out.duals[i].weights)}, {"feasible", static_cast<bool>(out.decomposition[i])}});
    r["decomposition"] = std::move(rows);
    r["grid_step"] = num(out.grid_step);
    r["holds"] = out.holds();
    std::vector<Status> st{out.holds() ? Status::accepted : Status::rejected};
    if (out.upper_continuity) st.push_back(out.upper_continuity->status);
    if (out.k_lipschitz) st.push_back(out.k_lipschitz->status);
    status = combine(st);
  } else if (lemma == "diff-rule") {
    const auto F = named_map(pf, "F");
    const ScalarPtr* phi = find_named(pf.scalars, "phi");
    if (!phi) throw InvalidArgument("no scalar named 'phi' in the problem file");
    std::optional<Vector> sub;
    if (const LinOp* ps = find_named(pf.candidates, "phi_subgradient")) sub = Vector(ps->matrix().row(0).transpose());
    const auto out = difference_rule_check(F, *phi, direction(pf), base_point(pf, true), named_candidate(pf, "T"),
                                           named_candidate(pf, "t"), s, sub);
    r["difference"] = verdict_json(out.difference, false);
    r["t_check"] = verdict_json(out.t_check, false);
    r["phi_subgradient"] = out.phi_subgradient ? verdict_json(*out.phi_subgradient, false) : Json(nullptr);
    Json rows = Json::array();
    for (std::size_t i = 0; i < out.functionals.size(); ++i)
      rows.push_back(Json{{"functional", vec(out.functionals[i].weights)}, {"inner", verdict_json(out.inner[i], false)}});
    r["inner"] = std::move(rows);
    r["status"] = to_string(out.status);
    status = out.status;
  } else if (lemma == "iscusc") {
    const auto F = named_map(pf, "F");
    if (F.dim_y() != 1) throw InvalidArgument("iscusc needs a map into R (dim_y = 1)");
    const Point x = base_point(pf, false);
    const ScalarizedMap f = scalarize(F, ScalarFunctional(make_vector({1.0})));
    const ExtendedScalar fs = [&](const Point& u) { return f(u); };
    const auto uc = test_uc(F, x, s), lc = test_lc(F, x, s), lsc = test_lsc(fs, x, s), usc = test_usc(fs, x, s);
    r["uc"] = verdict_json(uc, false);
    r["lc"] = verdict_json(lc, false);
    r["lsc"] = verdict_json(lsc, false);
    r["usc"] = verdict_json(usc, false);
    const bool ok = !(uc.status == Status::accepted && lsc.status == Status::rejected) &&
                    !(lc.status == Status::accepted && usc.status == Status::rejected);
    r["implication_holds"] = ok;
    status = ok ? Status::accepted : Status::rejected;
  } else if (lemma == "scalarization") {
    const auto F = named_map(pf, "F");
    const Point x = base_point(pf, true);
    const LinOp& T = named_candidate(pf, "T");
    const auto conv = scalarization_converse(F, x, T, s);
    r["frechet"] = verdict_json(frechet_member(F, x, T, s), false);
    Json fwd = Json::array();
    bool forward_ok = true;
    for (const auto& y : K.duals()) {
      const auto v = scalarization_forward(F, x, T, y, s);
      forward_ok = forward_ok && v.status == Status::accepted;
      fwd.push_back(Json{{"functional", vec(y.weights)}, {"verdict", verdict_json(v, false)}});
    }
    r["forward"] = std::move(fwd);
    Json c;
    c["applicable"] = conv.applicable;
    c["reason"] = conv.reason;
    if (conv.applicable) {
      Json fam = Json::array();
      for (std::size_t i = 0; i < conv.family.size(); ++i)
        fam.push_back(Json{{"functional", vec(conv.family[i].weights)}, {"status", to_string(conv.per_functional[i].status)}});
      c["family"] = std::move(fam);
      c["combined"] = verdict_json(conv.combined, false);
      c["consistent"] = conv.consistent;
    }
    r["converse"] = std::move(c);
    const bool frechet_acc = r["frechet"]["status"] == "accepted";
    const bool ok = (!frechet_acc || forward_ok) && (!conv.applicable || conv.consistent);
    r["implication_holds"] = ok;
    status = ok ? Status::accepted : Status::rejected;
  } else {
    throw InvalidArgument("unsupported lemma '" + lemma + "'");
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* version() { return "0.1.0"; }

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{"radstrom", "rez-incl", "sum-conv", "sum-lim",
                                              "diff-rule", "iscusc",   "scalarization"};
  return names;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LoadedProblem load_problem_text(const std::string& text) { return LoadedProblem{parse(text), fnv1a64(text)}; }

Report check_subgradient(const LoadedProblem& p, const std::string& map, const std::optional<Point>& point,
                         const std::string& candidate, const Options& opt) {
  const ProblemFile& pf = p.pf;
  const auto F = named_map(pf, map);
  const LinOp& T = named_candidate(pf, candidate);
  const Point x = point ? *point : base_point(pf, true);
  require_dim(x, pf.dim_x, "--point");
  SamplingSchedule s = pf.schedule;
  apply(s, opt);
  const Verdict v = opt.upper ? upper_frechet_member(F, x, T, s) : frechet_member(F, x, T, s);

  Report rep;
  rep.json = header("check-subgradient", &p);
  rep.json["config"] = schedule_json(s);
  Json r;
  r["check"] = opt.upper ? "upper_frechet_member" : "frechet_member";
  r["map"] = map;
  r["candidate"] = candidate;
  r["point"] = vec(x);
  r["operator"] = mat(T.matrix());
  r["verdict"] = verdict_json(v);
  rep.json["results"] = Json::array({std::move(r)});
  rep.exit_code = exit_for(v.status);
  rep.json["status"] = to_string(v.status);
  rep.json["exit_code"] = rep.exit_code;

  std::ostringstream csv;
  csv << "radius,worst_ratio";
  for (Eigen::Index i = 0; i < pf.dim_x; ++i) csv << ",witness_" << i;
  csv << '\n';
  char buf[64];
  auto put = [&](double d) {
    if (std::isfinite(d)) {
      std::snprintf(buf, sizeof buf, "%.17g", d);
      csv << buf;
    } else {
      csv << (d > 0 ? "inf" : "-inf");
    }
  };
  for (const auto& c : v.curve) {
    put(c.radius);
    csv << ',';
    put(c.worst_ratio);
    for (Eigen::Index i = 0; i < pf.dim_x; ++i) {
      csv << ',';
      if (c.witness) put((*c.witness)[i]);
    }
    csv << '\n';
  }
  rep.csv = csv.str();
  return rep;
}

Report verify(const LoadedProblem* p, const std::string& lemma, const Options& opt) {
  const auto& all = suites();
  const auto it = all.find(lemma);
  if (it == all.end()) throw InvalidArgument("unsupported lemma '" + lemma + "'");
  if (!p) return run_suite(lemma, it->second, opt);
  SamplingSchedule s = p->pf.schedule;
  apply(s, opt);
  Status status = Status::inconclusive;
  Json r = verify_file(*p, lemma, opt, s, status);
  Report rep;
  rep.json = header("verify", p);
  rep.json["config"] = schedule_json(s);
  rep.json["results"] = Json::array({std::move(r)});
  rep.exit_code = exit_for(status);
  rep.json["status"] = to_string(status);
  rep.json["exit_code"] = rep.exit_code;
  return rep;
}

Report solve(const LoadedProblem& p, bool penalize_flag, const Options& opt) {
  const ProblemFile& pf = p.pf;
  if (pf.maps.empty()) throw InvalidArgument("the problem file has no maps");
  const std::string name = find_named(pf.maps, "F") ? "F" : pf.maps.front().first;
  const auto F = named_map(pf, name);
  SamplingSchedule s = pf.schedule;
  apply(s, opt);
  const ConstraintSet M(pf.constraint_set);
  if (penalize_flag && M.whole_space()) throw InvalidArgument("--penalize needs a constraint_set in the problem file");

  Report rep;
  rep.json = header("solve", &p);
  rep.json["config"] = schedule_json(s);
  Json r;
  r["map"] = name;
  const double eps = finest_epsilon(s);
  r["epsilon"] = num(eps);
  Json ideal = Json::array();
  for (const auto& pt : solve_ideal(F, M, s)) ideal.push_back(Json{{"x", vec(pt.x)}, {"merit", num(pt.merit)}});
  r["ideal_points"] = std::move(ideal);
  Json lmin = Json::array();
  for (const auto& x : M.grid(s.domain_box, s.grid_points)) {
    try {
      if (check_l_min(F, M, x, eps, s).status == Status::accepted) lmin.push_back(vec(x));
    } catch (const InvalidArgument&) {
      // isolated grid point of M
    }
  }
  r["l_min_points"] = std::move(lmin);
  Status status = Status::accepted;
  if (penalize_flag) {
    const Point xbar = base_point(pf, true);
    const PenalizationSpec spec = pf.penalization.value_or(PenalizationSpec{});
    const PenalizationConfig cfg{spec.ell, spec.mu, direction(pf), spec.radius};
    const auto pen = verify_penalization(F, M, xbar, cfg, s);
    Json pj;
    pj["xbar"] = vec(xbar);
    pj["ell"] = num(cfg.ell);
    pj["mu"] = num(cfg.mu);
    pj["radius"] = num(cfg.radius);
    pj["constrained_ideal"] = minimality_json(pen.constrained_ideal);
    pj["lipschitz"] = verdict_json(pen.lipschitz);
    pj["unconstrained_ideal"] = minimality_json(pen.unconstrained_ideal);
    pj["implication_holds"] = pen.implication_holds;
    r["penalization"] = std::move(pj);
    const auto nec = necessary_condition_report(F, M, xbar, cfg, s);
    Json nj;
    nj["header"] = nec.header;
    nj["conditional"] = nec.conditional;
    nj["sharp_shift_clauses"] = Json{{"constrained_ideal", to_string(nec.precondition.constrained_ideal.status)},
                                     {"lipschitz", to_string(nec.precondition.lipschitz.status)},
                                     {"unconstrained_ideal", to_string(nec.precondition.unconstrained_ideal.status)}};
    Json rows = Json::array();
    for (const auto& row : nec.rows)
      rows.push_back(Json{{"functional", vec(row.y.weights)}, {"w", vec(row.w)}, {"feasible", row.feasible}});
    nj["rows"] = std::move(rows);
    nj["grid_step"] = num(nec.grid_step);
    nj["status"] = to_string(nec.status);
    r["necessary_condition"] = std::move(nj);
    status = combine({pen.constrained_ideal.status, pen.lipschitz.status, pen.unconstrained_ideal.status, nec.status});
  }
  rep.json["results"] = Json::array({std::move(r)});
  rep.exit_code = exit_for(status);
  rep.json["status"] = to_string(status);
  rep.json["exit_code"] = rep.exit_code;
  return rep;
}

// ---------------------------------------------------------------------------
// Golden corpus

namespace {

struct GoldenSource {
  std::string file;
  std::string text;
};

std::vector<GoldenSource> golden_sources(const std::optional<std::string>& store_dir) {
  std::vector<GoldenSource> out;
  if (!store_dir) {
    for (std::size_t i = 0; i < kEmbeddedGoldenCount; ++i)
      out.push_back({kEmbeddedGoldens[i].file, kEmbeddedGoldens[i].text});
    return out;
  }
  namespace fs = std::filesystem;
  if (!fs::is_directory(*store_dir)) throw InvalidArgument("golden store '" + *store_dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(*store_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.push_back({f.filename().string(), ss.str()});
  }
  return out;
}

Report run_golden(const Json& g) {
  const std::string command = g.at("command").get<std::string>();
  const Json args = g.value("args", Json::object());
  Options opt;
  if (args.contains("trials")) opt.trials = args["trials"].get<int>();
  if (args.contains("seed")) opt.seed = args["seed"].get<std::uint64_t>();
  if (args.contains("lipschitz")) opt.lipschitz = args["lipschitz"].get<double>();
  opt.upper = args.value("upper", false);
  std::optional<LoadedProblem> p;
  if (g.contains("problem")) p = load_problem_text(g["problem"].dump(2) + "\n");
  if (command == "check-subgradient") {
    if (!p) throw InvalidArgument("golden without problem");
    std::optional<Point> pt;
    if (args.contains("point")) {
      const auto v = args["point"].get<std::vector<double>>();
      pt = Vector::Map(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    return check_subgradient(*p, args.at("map").get<std::string>(), pt, args.at("candidate").get<std::string>(), opt);
  }
  if (command == "verify") return verify(p ? &*p : nullptr, args.at("lemma").get<std::string>(), opt);
  if (command == "solve") {
    if (!p) throw InvalidArgument("golden without problem");
    return solve(*p, args.value("penalize", false), opt);
  }
  throw InvalidArgument("golden: unknown command '" + command + "'");
}

bool value_matches(const Json& actual, const Json& expected, double tol) {
  if (expected.is_number() && actual.is_number())
    return std::abs(actual.get<double>() - expected.get<double>()) <= tol * std::max(1.0, std::abs(expected.get<double>()));
  return actual == expected;
}

}  // namespace

Report goldens(const Options& opt, const std::optional<std::string>& store_dir) {
  (void)opt;
  Report rep;
  rep.json = header("goldens", nullptr);
  Json rows = Json::array();
  bool all = true;
  for (const auto& src : golden_sources(store_dir)) {
    Json row;
    row["file"] = src.file;
    bool pass = true;
    try {
      const Json g = Json::parse(src.text);
      row["name"] = g.at("name");
      const Json& expect = g.at("expect");
      const Report r = run_golden(g);
      const int want = expect.at("exit_code").get<int>();
      row["exit_code"] = r.exit_code;
      row["expected_exit_code"] = want;
      pass = r.exit_code == want;
      Json checks = Json::array();
      for (const auto& c : expect.value("checks", Json::array())) {
        const auto ptr = Json::json_pointer(c.at("pointer").get<std::string>());
        const Json actual = r.json.contains(ptr) ? r.json.at(ptr) : Json(nullptr);
        const bool ok = value_matches(actual, c.at("value"), c.value("tol", 0.0));
        pass = pass && ok;
        checks.push_back(Json{{"pointer", c["pointer"]}, {"expected", c["value"]}, {"actual", actual}, {"ok", ok}});
      }
      row["checks"] = std::move(checks);
    } catch (const std::exception& e) {
      pass = false;
      row["error"] = e.what();
    }
    row["pass"] = pass;
    all = all && pass;
    rows.push_back(std::move(row));
  }
  rep.json["results"] = std::move(rows);
  rep.exit_code = all ? 0 : 1;
  rep.json["status"] = all ? "accepted" : "rejected";
  rep.json["exit_code"] = rep.exit_code;
  return rep;
}

Report goldens_list(const std::optional<std::string>& store_dir) {
  Report rep;
  rep.json = header("goldens", nullptr);
  Json rows = Json::array();
  for (const auto& src : golden_sources(store_dir)) {
    Json row;
    row["file"] = src.file;
    try {
      const Json g = Json::parse(src.text);
      row["name"] = g.at("name");
      row["source"] = g.value("source", "");
      row["description"] = g.value("description", "");
      row["command"] = g.at("command");
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    rows.push_back(std::move(row));
  }
  rep.json["results"] = std::move(rows);
  rep.exit_code = 0;
  rep.json["status"] = "accepted";
  rep.json["exit_code"] = 0;
  return rep;
}

}  // namespace setcalc::app
