#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "setcalc/setcalc.h"

namespace {

const char* kCorner = R"({
  "name": "corner",
  "dim_x": 1,
  "dim_y": 2,
  "cone": {"generators": [[1, 0], [0, 1]]},
  "maps": {
    "F": {
      "kind": "branch",
      "guard": {"kind": "coord", "index": 0},
      "nonneg_child": {"kind": "sum", "children": [
        {"kind": "affine_arg", "T": [[1], [0]], "b": [0, -2]},
        {"kind": "const_set", "set": {"vertices": [[0, 0]], "rays": [[0, 1]]}}
      ]},
      "neg_child": {"kind": "const_set", "set": {"vertices": [[0, 0]], "rays": [[0, 1]]}}
    }
  },
  "candidates": {"zero": [[0], [0]], "slope": [[1], [0]]},
  "base_point": [0]
})";

sc_problem* parse_ok(const char* text) {
  sc_problem* p = nullptr;
  REQUIRE(sc_problem_parse(text, std::strlen(text), &p) == SC_OK);
  REQUIRE(p != nullptr);
  return p;
}

sc_status parse_status(const std::string& text) {
  sc_problem* p = nullptr;
  const sc_status st = sc_problem_parse(text.data(), text.size(), &p);
  sc_problem_free(p);
  return st;
}

nlohmann::json report_json(const sc_report* r) { return nlohmann::json::parse(sc_report_json(r)); }

}  // namespace

TEST_CASE("capi: version and options") {
  CHECK(std::string(sc_version()) == "0.1.0");
  sc_options o;
  std::memset(&o, 0xff, sizeof o);
  sc_options_init(&o);
  CHECK(o.has_seed == 0);
  CHECK(o.upper == 0);
  CHECK(std::string(sc_status_name(SC_ERR_SCHEMA)) == "schema error");
}

TEST_CASE("capi: parse errors map to status codes") {
  CHECK(parse_status("{\n  \"dim_x\": 1,\n  oops\n}") == SC_ERR_PARSE);
  CHECK(std::string(sc_last_error()).rfind("3:3", 0) == 0);
  CHECK(parse_status(R"({"dim_x": 1, "dim_y": 1})") == SC_ERR_SCHEMA);
  CHECK(std::string(sc_last_error()).find("/cone") != std::string::npos);
  CHECK(parse_status(R"({"dim_x": 1, "dim_y": 1, "cone": {"generators": [[1]]},
                         "maps": {"F": {"kind": "const_set", "set": {"vertices": [[0, 1]]}}}})") == SC_ERR_DIMENSION);
  sc_problem* p = nullptr;
  CHECK(sc_problem_load("/definitely/not/here.json", &p) == SC_ERR_IO);
  CHECK(p == nullptr);
  CHECK(sc_problem_parse(nullptr, 0, &p) == SC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: check_subgradient report and exit codes") {
  sc_problem* p = parse_ok(kCorner);
  sc_report* r = nullptr;
  REQUIRE(sc_check_subgradient(p, "F", "zero", nullptr, 0, nullptr, &r) == SC_OK);
  CHECK(sc_report_exit_code(r) == 1);
  const auto j = report_json(r);
  CHECK(j["tool"] == "setcalc");
  CHECK(j["problem"]["hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(j["results"][0]["verdict"]["curve"][0]["worst_ratio"].get<double>() == doctest::Approx(4.0));
  CHECK(std::string(sc_report_csv(r)).rfind("radius,worst_ratio,witness_0\n", 0) == 0);
  sc_report_free(r);

  // At x = 0.5 the map is locally x -> (x, -2) + K, so (1, 0) is a subgradient.
  const double pt[] = {0.5};
  REQUIRE(sc_check_subgradient(p, "F", "slope", pt, 1, nullptr, &r) == SC_OK);
  CHECK(sc_report_exit_code(r) == 0);
  sc_report_free(r);

  CHECK(sc_check_subgradient(p, "F", "missing", nullptr, 0, nullptr, &r) == SC_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::string(sc_last_error()).find("missing") != std::string::npos);
  const double bad[] = {0.5, 0.5};
  CHECK(sc_check_subgradient(p, "F", "zero", bad, 2, nullptr, &r) == SC_ERR_DIMENSION);
  sc_problem_free(p);
}

TEST_CASE("capi: options override the schedule") {
  sc_problem* p = parse_ok(kCorner);
  sc_options o;
  sc_options_init(&o);
  o.has_seed = 1;
  o.seed = 99;
  o.has_grid = 1;
  o.grid_points = 11;
  sc_report* r = nullptr;
  REQUIRE(sc_check_subgradient(p, "F", "zero", nullptr, 0, &o, &r) == SC_OK);
  const auto j = report_json(r);
  CHECK(j["config"]["seed"] == 99);
  CHECK(j["config"]["grid_points"] == 11);
  sc_report_free(r);
  o.has_tol_accept = 1;
  o.tol_accept = 1.0;  // above tol_reject
  CHECK(sc_check_subgradient(p, "F", "zero", nullptr, 0, &o, &r) == SC_ERR_INVALID_ARGUMENT);
  sc_problem_free(p);
}

TEST_CASE("capi: randomized verify and goldens") {
  sc_options o;
  sc_options_init(&o);
  o.has_trials = 1;
  o.trials = 20;
  sc_report* r = nullptr;
  REQUIRE(sc_verify(nullptr, "radstrom", &o, &r) == SC_OK);
  CHECK(sc_report_exit_code(r) == 0);
  CHECK(report_json(r)["results"][0]["trials"] == 20);
  sc_report_free(r);
  CHECK(sc_verify(nullptr, "nonsense", &o, &r) == SC_ERR_INVALID_ARGUMENT);

  REQUIRE(sc_goldens_list(nullptr, &r) == SC_OK);
  CHECK(report_json(r)["results"].size() >= 10);
  sc_report_free(r);
  REQUIRE(sc_goldens_run(nullptr, nullptr, &r) == SC_OK);
  CHECK(sc_report_exit_code(r) == 0);
  sc_report_free(r);
  CHECK(sc_goldens_run("/no/such/dir", nullptr, &r) == SC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: solve requires M for penalization") {
  sc_problem* p = parse_ok(kCorner);
  sc_report* r = nullptr;
  CHECK(sc_solve(p, 1, nullptr, &r) == SC_ERR_INVALID_ARGUMENT);
  REQUIRE(sc_solve(p, 0, nullptr, &r) == SC_OK);
  CHECK(sc_report_exit_code(r) == 0);
  sc_report_free(r);
  sc_problem_free(p);
}

TEST_CASE("capi: thread count does not change reports") {
  sc_problem* p = parse_ok(kCorner);
  sc_report *a = nullptr, *b = nullptr;
  REQUIRE(sc_set_threads(1) == SC_OK);
  REQUIRE(sc_check_subgradient(p, "F", "zero", nullptr, 0, nullptr, &a) == SC_OK);
  REQUIRE(sc_set_threads(4) == SC_OK);
  REQUIRE(sc_check_subgradient(p, "F", "zero", nullptr, 0, nullptr, &b) == SC_OK);
  CHECK(std::string(sc_report_json(a)) == sc_report_json(b));
  CHECK(sc_set_threads(0) == SC_ERR_INVALID_ARGUMENT);
  sc_set_threads(1);
  sc_report_free(a);
  sc_report_free(b);
  sc_problem_free(p);
}
