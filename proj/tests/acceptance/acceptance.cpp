// Acceptance run: one PASS/FAIL line per criterion (AC8 is split into
// sub-lines). Exit status 1 when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "setcalc/optimize.hpp"
#include "setcalc/sampling.hpp"
#include "setcalc/setcalc.h"

using namespace setcalc;
using Json = nlohmann::json;

namespace {

int g_failures = 0;

void line(const std::string& id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", id.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Json load_golden(const std::string& file) {
  std::ifstream in(std::string(SETCALC_GOLDENS_DIR) + "/" + file);
  if (!in) throw std::runtime_error("missing golden " + file);
  return Json::parse(in);
}

// C API round trip; returns the report JSON text (empty on error).
std::string capi_report(const std::function<sc_status(sc_report**)>& call, int* exit_code = nullptr) {
  sc_report* r = nullptr;
  if (call(&r) != SC_OK) return "";
  std::string out = sc_report_json(r);
  if (exit_code) *exit_code = sc_report_exit_code(r);
  sc_report_free(r);
  return out;
}

sc_problem* capi_problem(const Json& problem) {
  const std::string text = problem.dump(2);
  sc_problem* p = nullptr;
  if (sc_problem_parse(text.data(), text.size(), &p) != SC_OK) return nullptr;
  return p;
}

Json capi_verify(const Json& problem, const char* lemma, int trials = 0, int* exit_code = nullptr) {
  sc_problem* p = problem.is_null() ? nullptr : capi_problem(problem);
  sc_options o;
  sc_options_init(&o);
  if (trials > 0) o.has_trials = 1, o.trials = trials;
  const std::string text = capi_report([&](sc_report** r) { return sc_verify(p, lemma, &o, r); }, exit_code);
  sc_problem_free(p);
  return text.empty() ? Json() : Json::parse(text);
}

Json capi_solve_penalized(const Json& problem, int* exit_code) {
  sc_problem* p = capi_problem(problem);
  const std::string text = capi_report([&](sc_report** r) { return sc_solve(p, 1, nullptr, r); }, exit_code);
  sc_problem_free(p);
  return text.empty() ? Json() : Json::parse(text);
}

ScalarPtr square_of(ScalarPtr s) { return expr::product({s, s}); }
ScalarPtr shifted(double c) { return expr::affine(make_vector({1.0}), -c); }

// ---------------------------------------------------------------------------

void ac1() {
  Stopwatch t;
  const PolyCone K = PolyCone::orthant(2);
  const ConicPolytope A(2, {make_vector({1, 1})});
  const ConicPolytope B(2, {make_vector({2, 0}), make_vector({0, 2})});
  const auto chk = scalarized_inclusion_check(A, B, K);
  const auto ex = excess(A, B.with_rays(K.generators()));
  // Oracle: the nearest point of b + R^2_+ to a is max(a, b) componentwise.
  double oracle = INFINITY;
  for (const auto& b : B.vertices()) oracle = std::min(oracle, (A.vertices()[0] - A.vertices()[0].cwiseMax(b)).norm());
  const double secs = t.seconds();
  const bool ok = !chk.direct && chk.scalarized && !ex.infinite && std::abs(ex.value - 1.0) <= 1e-8 &&
                  std::abs(ex.value - oracle) <= 1e-8 && secs < 1.0;
  line("AC1", ok,
       fmt("direct=%d scalarized=%d excess=%.12g oracle=%.12g time=%.3fs", chk.direct, chk.scalarized, ex.value,
           oracle, secs));
}

MapPtr corner_map() {
  const ConicPolytope up(2, {make_vector({0, 0})}, {make_vector({0, 1})});
  return expr::branch(expr::coord(0),
                      expr::sum({expr::affine_arg(Matrix((Matrix(2, 1) << 1, 0).finished()), make_vector({0, -2})),
                                 expr::const_set(up)}),
                      expr::const_set(up));
}

void ac2() {
  Stopwatch t;
  const PolyCone K = PolyCone::orthant(2);
  const SetValuedMap F(corner_map(), 1, K);
  SamplingSchedule s = SamplingSchedule::defaults(1);
  s.domain_box = Box{make_vector({0}), make_vector({1})};
  const ConstraintSet M;
  const Point x0 = make_vector({0});
  const auto lmin = check_l_min(F, M, x0, 0.1, s);
  const auto ideal = check_ideal_min(F, M, x0, 0.1, s);
  const auto v = frechet_member(F, x0, LinOp(Matrix::Zero(2, 1)), s);
  double worst_dev = 0.0;
  for (const auto& c : v.curve) worst_dev = std::max(worst_dev, std::abs(c.worst_ratio - 2.0 / c.radius));
  const double secs = t.seconds();
  const bool ok = lmin.status == Status::accepted && ideal.status == Status::rejected && v.status == Status::rejected &&
                  v.curve.size() == s.radii.size() && worst_dev <= 1e-6 && secs < 5.0;
  line("AC2", ok,
       fmt("l_min=%s ideal_min=%s frechet(0)=%s max|ratio-2/r|=%.2e over %zu radii time=%.3fs", to_string(lmin.status),
           to_string(ideal.status), to_string(v.status), worst_dev, v.curve.size(), secs));
}

void ac3() {
  const PolyCone K = PolyCone::orthant(1);
  const Direction e{make_vector({1})};
  int accepted = 0, bound_ok = 0, total = 0;
  bool reject_ok = true;
  Rng g(2024);
  for (int dim = 1; dim <= 2; ++dim) {
    const SetValuedMap F(expr::scalar_dir(expr::norm(Vector::Zero(dim)), e.vector), dim, K);
    const SamplingSchedule s = SamplingSchedule::defaults(dim);
    const Point x0 = Vector::Zero(dim);
    for (int i = 0; i < 20; ++i) {
      Vector xs(dim);
      for (int k = 0; k < dim; ++k) xs[k] = g.normal();
      xs *= g.uniform() / xs.norm();
      if (i == 0) xs = Vector::Unit(dim, 0);  // boundary of the dual ball
      const LinOp T = phi_e_subgradient_map(xs, e);
      ++total;
      if (frechet_member(F, x0, T, s).status == Status::accepted) {
        ++accepted;
        bound_ok += norm_e_dual_bound_check(T, e, K);
      }
    }
    Vector big = Vector::Zero(dim);
    big[0] = 1.5;
    reject_ok = reject_ok && frechet_member(F, x0, phi_e_subgradient_map(big, e), s).status == Status::rejected;
  }
  line("AC3", accepted == total && bound_ok == accepted && reject_ok,
       fmt("R^1 and R^2: %d/%d sampled |x*|<=1 accepted, dual bound %d/%d, |x*|=1.5 rejected=%d", accepted, total,
           bound_ok, accepted, reject_ok));
}

void suite_line(const std::string& id, const char* lemma, int trials, const std::string& extra_detail, bool extra_ok) {
  int code = -1;
  const Json j = capi_verify(Json(), lemma, trials, &code);
  if (j.is_null()) {
    line(id, false, std::string("verify ") + lemma + " failed: " + sc_last_error());
    return;
  }
  const auto& r = j["results"][0];
  const int violations = r["violations"], premise = r["premise_held"], counted = r["counted"];
  line(id, code == 0 && violations == 0 && premise > 0 && extra_ok,
       fmt("%s: %d trials, %d counted, premise held in %d, %d violations", lemma, trials, counted, premise, violations) +
           extra_detail);
}

void ac4() { suite_line("AC4", "radstrom", 500, "", true); }

void ac5() {
  const Json g = load_golden("rez_incl_counterexample.json");
  const Json r = capi_verify(g["problem"], "rez-incl");
  bool ok = !r.is_null();
  std::string detail = "; stored counterexample ";
  if (ok) {
    const auto& x = r["results"][0];
    ok = x["direct"] == false && x["scalarized"] == true && x["converse"] != "applicable";
    detail += fmt("direct=%s scalarized=%s converse=%s", x["direct"].dump().c_str(), x["scalarized"].dump().c_str(),
                  x["converse"].get<std::string>().c_str());
  }
  suite_line("AC5", "rez-incl", 500, detail, ok);
}

// Catalog of convex instances with cloud values on the box [-1, 1]^d.
struct CatalogEntry {
  std::string label;
  MapPtr F;
  int dim_x;
  int dim_y;
  Point xbar;
  Matrix T;
};

std::vector<CatalogEntry> convex_catalog() {
  std::vector<CatalogEntry> c;
  const auto x = expr::coord(0);
  auto scalar1 = [](ScalarPtr s) { return expr::scalar_dir(std::move(s), make_vector({1})); };
  auto add1 = [&](const std::string& l, MapPtr F, double xb, double t) {
    c.push_back({l, F, 1, 1, make_vector({xb}), Matrix::Constant(1, 1, t)});
  };
  const auto sq = scalar1(square_of(x));
  add1("x^2 @0 T=0", sq, 0, 0);
  add1("x^2 @0 T=0.5", sq, 0, 0.5);
  add1("x^2 @0.5 T=1", sq, 0.5, 1);
  add1("x^2 @0.5 T=1.5", sq, 0.5, 1.5);
  const auto ab = scalar1(expr::norm(make_vector({0})));
  for (double t : {0.0, 0.5, -0.7, 1.5, -1.3}) add1(fmt("|x| @0 T=%g", t), ab, 0, t);
  add1("|x| @0.5 T=1", ab, 0.5, 1);
  add1("|x| @0.5 T=0", ab, 0.5, 0);
  const auto mx = scalar1(expr::max({x, expr::scale(-2, x)}));
  for (double t : {-1.5, 0.8, 1.4, -2.5}) add1(fmt("max(x,-2x) @0 T=%g", t), mx, 0, t);
  const auto mix = scalar1(expr::sum({expr::norm(make_vector({0.3})), square_of(x)}));
  add1("|x-0.3|+x^2 @0.3 T=0", mix, 0.3, 0);
  add1("|x-0.3|+x^2 @0.3 T=1.9", mix, 0.3, 1.9);
  const auto lin = scalar1(expr::scale(3, x));
  add1("3x @0 T=3", lin, 0, 3);
  add1("3x @0 T=2.9", lin, 0, 2.9);
  const auto mq = scalar1(expr::max({square_of(x), expr::scale(0.5, x)}));
  add1("max(x^2,x/2) @0 T=0.25", mq, 0, 0.25);
  add1("max(x^2,x/2) @0 T=-0.2", mq, 0, -0.2);

  auto add2 = [&](const std::string& l, MapPtr F, Point xb, Matrix T) { c.push_back({l, F, 2, 1, xb, T}); };
  const auto n2 = scalar1(expr::norm(Vector::Zero(2)));
  add2("|x|_2 @0 T=(0.3,0.4)", n2, Vector::Zero(2), (Matrix(1, 2) << 0.3, 0.4).finished());
  add2("|x|_2 @0 T=(1,1)", n2, Vector::Zero(2), (Matrix(1, 2) << 1, 1).finished());
  const auto q2 = scalar1(expr::sum({square_of(expr::coord(0)), square_of(expr::coord(1))}));
  add2("|x|^2 @(0.2,-0.1) T=(0.4,-0.2)", q2, make_vector({0.2, -0.1}), (Matrix(1, 2) << 0.4, -0.2).finished());
  add2("|x|^2 @(0.2,-0.1) T=(0.4,0.3)", q2, make_vector({0.2, -0.1}), (Matrix(1, 2) << 0.4, 0.3).finished());

  auto add12 = [&](const std::string& l, MapPtr F, double xb, double t0, double t1) {
    c.push_back({l, F, 1, 2, make_vector({xb}), (Matrix(2, 1) << t0, t1).finished()});
  };
  const auto v1 = expr::sum({expr::scalar_dir(square_of(x), make_vector({1, 0})),
                             expr::scalar_dir(expr::norm(make_vector({0})), make_vector({0, 1}))});
  add12("(x^2,|x|) @0 T=(0,0.5)", v1, 0, 0, 0.5);
  add12("(x^2,|x|) @0 T=(0.3,0)", v1, 0, 0.3, 0);
  add12("(x^2,|x|) @0 T=(0,1.2)", v1, 0, 0, 1.2);
  const auto v2 = expr::sum({expr::scalar_dir(expr::norm(make_vector({0.2})), make_vector({1, 0})),
                             expr::scalar_dir(square_of(shifted(-0.1)), make_vector({0, 1}))});
  add12("(|x-0.2|,(x+0.1)^2) @0.2 T=(0.5,0.6)", v2, 0.2, 0.5, 0.6);
  add12("(|x-0.2|,(x+0.1)^2) @0.2 T=(1.5,0.6)", v2, 0.2, 1.5, 0.6);
  return c;
}

void ac6() {
  const auto cat = convex_catalog();
  int agree = 0, inconclusive = 0, accepted = 0;
  std::string bad;
  for (const auto& e : cat) {
    const PolyCone K = PolyCone::orthant(e.dim_y);
    const SetValuedMap F(e.F, e.dim_x, K);
    const SamplingSchedule s = SamplingSchedule::defaults(e.dim_x);
    const LinOp T(e.T);
    const auto v = frechet_member(F, e.xbar, T, s);
    bool holds = false;
    try {
      holds = convex_subdiff_formula_check(F, e.xbar, T, s).holds;
    } catch (const PreconditionFailed&) {
      bad += " [" + e.label + ": not upper K-convex]";
      continue;
    }
    inconclusive += v.status == Status::inconclusive;
    accepted += v.status == Status::accepted;
    const bool same = (v.status == Status::accepted && holds) || (v.status == Status::rejected && !holds);
    agree += same;
    if (!same) bad += " [" + e.label + ": " + to_string(v.status) + " vs " + (holds ? "true" : "false") + "]";
  }
  line("AC6", agree == static_cast<int>(cat.size()) && cat.size() == 30 && inconclusive == 0,
       fmt("%d/%zu agree (%d accepted), %d inconclusive", agree, cat.size(), accepted, inconclusive) + bad);
}

void ac7() {
  const Json f1 = capi_verify(load_golden("iscusc_F1.json")["problem"], "iscusc");
  const Json f2 = capi_verify(load_golden("iscusc_F2.json")["problem"], "iscusc");
  bool ok = !f1.is_null() && !f2.is_null();
  std::string detail;
  if (ok) {
    const auto& a = f1["results"][0];
    const auto& b = f2["results"][0];
    ok = a["usc"]["status"] == "accepted" && a["lc"]["status"] == "rejected" && b["lsc"]["status"] == "accepted" &&
         b["uc"]["status"] == "rejected";
    detail = fmt("; F1: usc=%s lc=%s; F2: lsc=%s uc=%s", a["usc"]["status"].get<std::string>().c_str(),
                 a["lc"]["status"].get<std::string>().c_str(), b["lsc"]["status"].get<std::string>().c_str(),
                 b["uc"]["status"].get<std::string>().c_str());
  }
  suite_line("AC7", "iscusc", 50, detail, ok);
}

// ---------------------------------------------------------------------------
// Penalization suite and the interior ideal-point remark.

struct PenInstance {
  MapPtr F;
  ScalarPtr f;
  ConstraintSet M;
  Point xbar;
  PenalizationConfig cfg;
};

bool interior_of(const ConstraintSet& M, const Box& box, const Point& x, double h) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (double sgn : {-1.0, 1.0}) {
      const Point y = x + sgn * h * Vector::Unit(x.size(), i);
      if (!box.contains(y) || !M.contains(y)) return false;
    }
  return true;
}

struct RemarkTally {
  int points = 0;
  int accepted = 0;
  std::string bad;
};

void check_remark(const SetValuedMap& F, const ConstraintSet& M, const SamplingSchedule& s, RemarkTally& tally,
                  const std::string& label) {
  const double h = (s.domain_box.upper - s.domain_box.lower).maxCoeff() / (s.grid_points - 1);
  for (const auto& p : solve_ideal(F, M, s)) {
    if (!interior_of(M, s.domain_box, p.x, h)) continue;
    ++tally.points;
    const auto v = frechet_member(F, p.x, LinOp(Matrix::Zero(F.dim_y(), F.dim_x())), s);
    if (v.status == Status::accepted) ++tally.accepted;
    else tally.bad += " [" + label + fmt(" x=%g: %s]", p.x[0], to_string(v.status));
  }
}

// 1-D instances: F = a (x - c)^2 + b |x - c| (times e = 1) on M = one or two
// intervals; centers and endpoints on the grid nodes; ell above the slope
// measured over grid pairs in B(xbar, r).
PenInstance random_pen_instance(Rng& g, const SamplingSchedule& s) {
  const double h = 2.0 / (s.grid_points - 1);
  auto node = [&](double lo, double hi) { return std::round(g.uniform(lo, hi) / h) * h; };
  PenInstance in;
  const double a = g.uniform(0.1, 2.0), b = g.uniform() < 0.5 ? 0.0 : g.uniform(0.1, 1.0), c = node(-0.8, 0.8);
  in.f = expr::sum({expr::scale(a, square_of(shifted(c))), expr::scale(b, expr::norm(make_vector({c})))});
  in.F = expr::scalar_dir(in.f, make_vector({1}));
  double m0 = node(-1, 0.6), m1 = m0 + h * static_cast<double>(g.integer(2, 10));
  std::vector<ConicPolytope> pieces{ConicPolytope(1, {make_vector({m0}), make_vector({std::min(m1, 1.0)})}, {}, true)};
  double best = std::clamp(c, m0, std::min(m1, 1.0));
  if (g.uniform() < 0.4 && m1 + 3 * h < 1.0) {
    const double m2 = m1 + h * static_cast<double>(g.integer(2, 4)), m3 = std::min(1.0, m2 + h * static_cast<double>(g.integer(1, 6)));
    pieces.push_back(ConicPolytope(1, {make_vector({m2}), make_vector({m3})}, {}, true));
    const double other = std::clamp(c, m2, m3);
    if (eval_scalar(*in.f, make_vector({other})) < eval_scalar(*in.f, make_vector({best}))) best = other;
  }
  in.M = ConstraintSet(pieces);
  in.xbar = make_vector({best});
  const double r = g.uniform(0.2, 0.5);
  double slope = 0.0;
  const auto grid = box_grid(s.domain_box, s.grid_points);
  for (const auto& u : grid)
    for (const auto& v : grid)
      if (u[0] < v[0] && std::abs(u[0] - best) <= r && std::abs(v[0] - best) <= r)
        slope = std::max(slope, std::abs(eval_scalar(*in.f, v) - eval_scalar(*in.f, u)) / (v[0] - u[0]));
  in.cfg = PenalizationConfig{1.25 * slope + 0.05, 0.0, Direction{make_vector({1})}, r};
  return in;
}

void ac8_and_9() {
  Stopwatch t;
  const PolyCone K = PolyCone::orthant(1);
  const SamplingSchedule s = SamplingSchedule::defaults(1);
  RemarkTally remark;
  int premise = 0, violations = 0, c_accepted = 0;
  std::string bad;
  for (int i = 0; i < 100; ++i) {
    Rng g(0xACE8ULL * 1000003ULL + static_cast<std::uint64_t>(i));
    const PenInstance in = random_pen_instance(g, s);
    const SetValuedMap F(in.F, 1, K);
    const auto rep = verify_penalization(F, in.M, in.xbar, in.cfg, s);
    const bool ab = rep.constrained_ideal.status == Status::accepted && rep.lipschitz.status == Status::accepted;
    premise += ab;
    c_accepted += ab && rep.unconstrained_ideal.status == Status::accepted;
    if (ab && rep.unconstrained_ideal.status != Status::accepted) {
      ++violations;
      bad += fmt(" [trial %d: (c) %s]", i, to_string(rep.unconstrained_ideal.status));
    }
    check_remark(F, in.M, s, remark, fmt("trial %d", i));
  }
  line("AC8a", violations == 0 && premise > 0,
       fmt("penalization suite: 100 instances, (a)&(b) held in %d, (c) accepted in %d, %d violations", premise,
           c_accepted, violations) +
           bad);

  int code = -1;
  const Json parabola = load_golden("parabola_penalization.json")["problem"];
  const Json pr = capi_solve_penalized(parabola, &code);
  if (pr.is_null()) {
    line("AC8b", false, std::string("parabola solve failed: ") + sc_last_error());
  } else {
    const auto& r = pr["results"][0];
    const auto& p = r["penalization"];
    const bool zero = !r["ideal_points"].empty() && r["ideal_points"][0]["x"] == Json::array({0.0});
    const bool clauses = p["constrained_ideal"]["status"] == "accepted" && p["lipschitz"]["status"] == "accepted" &&
                         p["unconstrained_ideal"]["status"] == "accepted";
    line("AC8b", zero && clauses,
         fmt("parabola on [0,1]: ideal point 0 reported=%d, clauses a/b/c = %s/%s/%s", zero,
             p["constrained_ideal"]["status"].get<std::string>().c_str(),
             p["lipschitz"]["status"].get<std::string>().c_str(),
             p["unconstrained_ideal"]["status"].get<std::string>().c_str()));
    std::string rows;
    bool all_feasible = true;
    for (const auto& row : r["necessary_condition"]["rows"]) {
      all_feasible = all_feasible && row["feasible"].get<bool>();
      rows += fmt(" w=%+g:%s", row["w"][0].get<double>(), row["feasible"].get<bool>() ? "feasible" : "infeasible");
    }
    line("AC8c", all_feasible, "parabola necessary-condition table at mu=0.5 feasible;" + rows);
  }
  Json p2 = parabola;
  p2["penalization"]["mu"] = 2.0;
  const Json pr2 = capi_solve_penalized(p2, &code);
  // The condition quantifies over every w, so one infeasible row makes the table infeasible.
  bool infeasible2 = false;
  std::string rows2;
  if (!pr2.is_null())
    for (const auto& row : pr2["results"][0]["necessary_condition"]["rows"]) {
      infeasible2 = infeasible2 || !row["feasible"].get<bool>();
      rows2 += fmt(" w=%+g:%s", row["w"][0].get<double>(), row["feasible"].get<bool>() ? "feasible" : "infeasible");
    }
  line("AC8d", infeasible2, "parabola necessary-condition table at mu=2 infeasible;" + rows2);

  // Sharp reference instance |x| on [-1, 1].
  const Json half = capi_solve_penalized(load_golden("abs_sharp_mu_half.json")["problem"], &code);
  const Json two = capi_solve_penalized(load_golden("abs_sharp_mu_two.json")["problem"], &code);
  bool sharp = !half.is_null() && !two.is_null();
  if (sharp) {
    for (const auto& row : half["results"][0]["necessary_condition"]["rows"]) sharp = sharp && row["feasible"].get<bool>();
    for (const auto& row : two["results"][0]["necessary_condition"]["rows"]) sharp = sharp && !row["feasible"].get<bool>();
  }
  line("AC8e", sharp, "|x| on [-1,1]: mu=0.5 rows feasible, mu=2 rows infeasible");
  const double secs = t.seconds();
  line("AC8f", secs < 300.0, fmt("penalization suite runtime %.1fs (limit 300s)", secs));

  // Remark on interior ideal points: also over every solve golden.
  for (const char* file : {"corner_solve.json", "parabola_penalization.json", "abs_sharp_mu_half.json",
                           "abs_sharp_mu_two.json"}) {
    const ProblemFile pf = parse(load_golden(file)["problem"].dump());
    const MapPtr* m = find_named(pf.maps, "F");
    const SetValuedMap F(*m, pf.dim_x, pf.cone());
    check_remark(F, ConstraintSet(pf.constraint_set), pf.schedule, remark, file);
  }
  line("AC9", remark.points > 0 && remark.accepted == remark.points,
       fmt("interior ideal points with 0 in the Frechet subdifferential: %d/%d", remark.accepted, remark.points) +
           remark.bad);
}

void ac10() {
  const Json corner = load_golden("corner_check_zero.json")["problem"];
  const Json parabola = load_golden("parabola_penalization.json")["problem"];
  auto run_all = [&](int threads) {
    sc_set_threads(threads);
    std::string out;
    sc_problem* c = capi_problem(corner);
    sc_problem* p = capi_problem(parabola);
    sc_options o;
    sc_options_init(&o);
    o.has_seed = 1;
    o.seed = 12345;
    out += capi_report([&](sc_report** r) { return sc_check_subgradient(c, "F", "T", nullptr, 0, &o, r); });
    out += capi_report([&](sc_report** r) { return sc_solve(c, 0, &o, r); });
    out += capi_report([&](sc_report** r) { return sc_solve(p, 1, &o, r); });
    o.has_trials = 1;
    o.trials = 100;
    for (const char* lemma : {"radstrom", "rez-incl", "iscusc", "scalarization"})
      out += capi_report([&](sc_report** r) { return sc_verify(nullptr, lemma, &o, r); });
    out += capi_report([&](sc_report** r) { return sc_goldens_run(nullptr, nullptr, r); });
    sc_problem_free(c);
    sc_problem_free(p);
    return out;
  };
  const std::string a = run_all(1), b = run_all(8), c = run_all(1);
  sc_set_threads(1);
  line("AC10", !a.empty() && a == b && a == c,
       fmt("%zu bytes of JSON; threads 1 vs 8 identical=%d, repeat identical=%d", a.size(), a == b, a == c));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)()>> steps{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3},       {"AC4", ac4},  {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8_and_9}, {"AC10", ac10}};
  for (const auto& [id, fn] : steps) {
    try {
      fn();
    } catch (const std::exception& e) {
      line(id, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d failing line(s)\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
