#include "setcalc/setcalc.h"

#include <fstream>
#include <sstream>
#include <string>

#include "app.hpp"
#include "setcalc/sampling.hpp"

struct sc_problem {
  setcalc::app::LoadedProblem loaded;
};

struct sc_report {
  std::string json;
  std::string csv;
  int exit_code = 0;
};

namespace {

thread_local std::string g_last_error;

sc_status fail(sc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Every entry point funnels exceptions through here.
template <class Fn>
sc_status guarded(Fn&& fn) {
  using namespace setcalc;
  g_last_error.clear();
  try {
    return fn();
  } catch (const SyntaxError& e) {
    return fail(SC_ERR_PARSE, e.what());
  } catch (const FileDimensionMismatch& e) {
    return fail(SC_ERR_DIMENSION, e.what());
  } catch (const ParseError& e) {
    return fail(SC_ERR_SCHEMA, e.what());
  } catch (const DimensionMismatch& e) {
    return fail(SC_ERR_DIMENSION, e.what());
  } catch (const InvalidArgument& e) {
    return fail(SC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const UnsupportedShape& e) {
    return fail(SC_ERR_UNSUPPORTED, e.what());
  } catch (const PreconditionFailed& e) {
    return fail(SC_ERR_PRECONDITION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SC_ERR_INTERNAL, "unknown error");
  }
}

setcalc::app::Options to_options(const sc_options* o) {
  setcalc::app::Options out;
  if (!o) return out;
  if (o->has_seed) out.seed = o->seed;
  if (o->has_trials) out.trials = o->trials;
  if (o->has_grid) out.grid = o->grid_points;
  if (o->has_tol_accept) out.tol_accept = o->tol_accept;
  if (o->has_tol_reject) out.tol_reject = o->tol_reject;
  if (o->has_lipschitz) out.lipschitz = o->lipschitz;
  out.upper = o->upper != 0;
  return out;
}

sc_status emit(setcalc::app::Report&& r, sc_report** out) {
  auto* rep = new sc_report;
  rep->json = r.json.dump(2) + "\n";
  rep->csv = std::move(r.csv);
  rep->exit_code = r.exit_code;
  *out = rep;
  return SC_OK;
}

#define SC_REQUIRE(cond, msg) \
  if (!(cond)) return fail(SC_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* sc_version(void) { return setcalc::app::version(); }

const char* sc_last_error(void) { return g_last_error.c_str(); }

const char* sc_status_name(sc_status s) {
  switch (s) {
    case SC_OK: return "ok";
    case SC_ERR_PARSE: return "parse error";
    case SC_ERR_SCHEMA: return "schema error";
    case SC_ERR_IO: return "i/o error";
    case SC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SC_ERR_DIMENSION: return "dimension mismatch";
    case SC_ERR_UNSUPPORTED: return "unsupported shape";
    case SC_ERR_PRECONDITION: return "precondition failed";
    case SC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sc_options_init(sc_options* opt) {
  if (opt) *opt = sc_options{};
}

sc_status sc_set_threads(int threads) {
  SC_REQUIRE(threads >= 1, "thread count must be at least 1");
  return guarded([&] {
    setcalc::set_parallelism(threads);
    return SC_OK;
  });
}

sc_status sc_problem_parse(const char* text, size_t len, sc_problem** out) {
  SC_REQUIRE(text && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* p = new sc_problem{setcalc::app::load_problem_text(std::string(text, len))};
    *out = p;
    return SC_OK;
  });
}

sc_status sc_problem_load(const char* path, sc_problem** out) {
  SC_REQUIRE(path && out, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(SC_ERR_IO, std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  return sc_problem_parse(text.data(), text.size(), out);
}

void sc_problem_free(sc_problem* p) { delete p; }

sc_status sc_check_subgradient(const sc_problem* p, const char* map, const char* candidate, const double* point,
                               size_t point_len, const sc_options* opt, sc_report** out) {
  SC_REQUIRE(p && map && candidate && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<setcalc::Point> pt;
    if (point) pt = setcalc::Vector::Map(point, static_cast<Eigen::Index>(point_len));
    return emit(setcalc::app::check_subgradient(p->loaded, map, pt, candidate, to_options(opt)), out);
  });
}

sc_status sc_verify(const sc_problem* p, const char* lemma, const sc_options* opt, sc_report** out) {
  SC_REQUIRE(lemma && out, "null argument");
  *out = nullptr;
  return guarded([&] { return emit(setcalc::app::verify(p ? &p->loaded : nullptr, lemma, to_options(opt)), out); });
}

sc_status sc_solve(const sc_problem* p, int penalize, const sc_options* opt, sc_report** out) {
  SC_REQUIRE(p && out, "null argument");
  *out = nullptr;
  return guarded([&] { return emit(setcalc::app::solve(p->loaded, penalize != 0, to_options(opt)), out); });
}

sc_status sc_goldens_run(const char* store_dir, const sc_options* opt, sc_report** out) {
  SC_REQUIRE(out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<std::string> dir;
    if (store_dir) dir = store_dir;
    return emit(setcalc::app::goldens(to_options(opt), dir), out);
  });
}

sc_status sc_goldens_list(const char* store_dir, sc_report** out) {
  SC_REQUIRE(out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<std::string> dir;
    if (store_dir) dir = store_dir;
    return emit(setcalc::app::goldens_list(dir), out);
  });
}

const char* sc_report_json(const sc_report* r) { return r ? r->json.c_str() : ""; }
const char* sc_report_csv(const sc_report* r) { return r ? r->csv.c_str() : ""; }
int sc_report_exit_code(const sc_report* r) { return r ? r->exit_code : 3; }
void sc_report_free(sc_report* r) { delete r; }

}  // extern "C"
