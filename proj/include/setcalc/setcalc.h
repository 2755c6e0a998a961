#ifndef SETCALC_SETCALC_H
#define SETCALC_SETCALC_H

/* C interface of libsetcalc. Every call returns an sc_status; on failure
 * sc_last_error() describes the problem (per thread, valid until the next
 * call on that thread). Handles are opaque and released with their _free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_PARSE = 1,            /* malformed JSON (message carries line:col) */
  SC_ERR_SCHEMA = 2,           /* well-formed but invalid problem file */
  SC_ERR_IO = 3,               /* file not readable / writable */
  SC_ERR_INVALID_ARGUMENT = 4, /* bad option, unknown name, broken schedule */
  SC_ERR_DIMENSION = 5,        /* dimension mismatch */
  SC_ERR_UNSUPPORTED = 6,      /* shape outside the exact algorithms */
  SC_ERR_PRECONDITION = 7,     /* a hypothesis check did not accept */
  SC_ERR_INTERNAL = 8
} sc_status;

typedef struct sc_problem sc_problem;
typedef struct sc_report sc_report;

/* Overrides for the problem's sampling schedule. has_* = 0 keeps the file value. */
typedef struct sc_options {
  int has_seed;
  uint64_t seed;
  int has_trials;
  int trials;
  int has_grid;
  int grid_points;
  int has_tol_accept;
  double tol_accept;
  int has_tol_reject;
  double tol_reject;
  int has_lipschitz;
  double lipschitz;
  int upper; /* check_subgradient: test the upper subgradient instead */
} sc_options;

SC_API const char* sc_version(void);
SC_API const char* sc_last_error(void);
SC_API const char* sc_status_name(sc_status s);
SC_API void sc_options_init(sc_options* opt);

/* Worker threads for the sampling drivers (>= 1). Results do not depend on it. */
SC_API sc_status sc_set_threads(int threads);

SC_API sc_status sc_problem_parse(const char* text, size_t len, sc_problem** out);
SC_API sc_status sc_problem_load(const char* path, sc_problem** out);
SC_API void sc_problem_free(sc_problem* p);

/* point: dim_x doubles, or NULL for the file's base_point. */
SC_API sc_status sc_check_subgradient(const sc_problem* p, const char* map, const char* candidate,
                                      const double* point, size_t point_len, const sc_options* opt,
                                      sc_report** out);
/* p NULL runs the randomized suite for the lemma. */
SC_API sc_status sc_verify(const sc_problem* p, const char* lemma, const sc_options* opt, sc_report** out);
SC_API sc_status sc_solve(const sc_problem* p, int penalize, const sc_options* opt, sc_report** out);
/* store_dir NULL uses the corpus compiled into the library. */
SC_API sc_status sc_goldens_run(const char* store_dir, const sc_options* opt, sc_report** out);
SC_API sc_status sc_goldens_list(const char* store_dir, sc_report** out);

/* NUL-terminated, owned by the report. */
SC_API const char* sc_report_json(const sc_report* r);
SC_API const char* sc_report_csv(const sc_report* r);
/* 0 accepted, 1 rejected, 2 inconclusive. */
SC_API int sc_report_exit_code(const sc_report* r);
SC_API void sc_report_free(sc_report* r);

#ifdef __cplusplus
}
#endif

#endif
