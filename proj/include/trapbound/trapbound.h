/*
 * C interface to the trapbound library.
 *
 * Every fallible call returns a tb_status. On failure a message describing
 * the error is available from tb_last_error_message() on the calling thread
 * until the next library call on that thread. Objects are opaque handles
 * released with the matching *_destroy function; strings returned through
 * `char **` out-parameters are released with tb_string_free().
 */
#ifndef TRAPBOUND_H
#define TRAPBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TRAPBOUND_BUILDING)
#    define TB_API __declspec(dllexport)
#  else
#    define TB_API __declspec(dllimport)
#  endif
#else
#  define TB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tb_status {
  TB_OK = 0,
  TB_E_ARGUMENT = 1,
  TB_E_SYNTAX = 2,
  TB_E_DOMAIN = 3,
  TB_E_PRECONDITION = 4,
  TB_E_NO_ROOT = 5,
  TB_E_NONCONVERGENCE = 6,
  TB_E_NOT_DIFFERENTIABLE = 7,
  TB_E_IO = 8,
  TB_E_INTERNAL = 99
} tb_status;

TB_API const char *tb_status_name(tb_status status);
TB_API const char *tb_last_error_message(void);
/* Byte offset of the last syntax error, or (size_t)-1. */
TB_API size_t tb_last_error_offset(void);
TB_API const char *tb_version(void);

TB_API void tb_string_free(char *s);

/* ---- expressions in the variable s ---------------------------------- */

typedef struct tb_function tb_function;

TB_API tb_status tb_function_parse(const char *text, tb_function **out);
TB_API void tb_function_destroy(tb_function *f);
TB_API tb_status tb_function_eval(const tb_function *f, double s, double *out);
TB_API tb_status tb_function_derivative(const tb_function *f, int order,
                                        tb_function **out);
TB_API tb_status tb_function_to_string(const tb_function *f, char **out);

/* ---- quadrature ------------------------------------------------------ */

typedef struct tb_quad_result {
  double value;
  double err_estimate;
  uint64_t evals;
} tb_quad_result;

TB_API tb_status tb_integrate(const tb_function *f, double a, double b,
                              double tol, tb_quad_result *out);
TB_API tb_status tb_composite_trapezoid(const tb_function *f, double a,
                                        double b, int n, double *out);
TB_API tb_status tb_composite_simpson(const tb_function *f, double a,
                                      double b, int n, double *out);
TB_API tb_status tb_sup_abs_derivative(const tb_function *f, int order,
                                       double a, double b, double *out);

/* ---- mean-value point ------------------------------------------------ */

TB_API tb_status tb_aux_F(const tb_function *f, double a, double b, double t,
                          double *out);
TB_API tb_status tb_aux_F_prime(const tb_function *f, double a, double b,
                                double t, double *out);
TB_API tb_status tb_secant_slope(const tb_function *f, double a, double b,
                                 double *out);

typedef struct tb_mvt tb_mvt;

typedef struct tb_mvt_options {
  size_t grid;    /* default 1024 */
  double tol;     /* default 1e-10 */
  unsigned jobs;  /* default 1 */
} tb_mvt_options;

TB_API void tb_mvt_options_default(tb_mvt_options *opts);
/* opts may be NULL for defaults. */
TB_API tb_status tb_solve_mvt(const tb_function *f, double a, double b,
                              const tb_mvt_options *opts, tb_mvt **out);
TB_API void tb_mvt_destroy(tb_mvt *p);
TB_API double tb_mvt_x(const tb_mvt *p);
TB_API double tb_mvt_residual(const tb_mvt *p);
TB_API int tb_mvt_degenerate(const tb_mvt *p);
TB_API double tb_mvt_secant(const tb_mvt *p);
TB_API size_t tb_mvt_root_count(const tb_mvt *p);
/* NaN when i is out of range. */
TB_API double tb_mvt_root(const tb_mvt *p, size_t i);
/* Returns 0 when degenerate (no bracket). */
TB_API int tb_mvt_bracket(const tb_mvt *p, double *lo, double *hi);

/* ---- bounds at a given x --------------------------------------------- */

typedef struct tb_envelope {
  double lower;
  double middle;
  double upper;
  double M;
  double m;
  double delta;
  double integral;
} tb_envelope;

TB_API tb_status tb_envelope_at(const tb_function *f, double a, double b,
                                double x, tb_envelope *out);
TB_API tb_status tb_gap_delta(const tb_function *f, double a, double b,
                              double x, double *out);
TB_API tb_status tb_psi(const tb_function *f, double a, double b, double x,
                        double *out);
TB_API tb_status tb_alt_form_bounds(const tb_function *f, double a, double b,
                                    double x, double *lower_int,
                                    double *upper_int);

typedef struct tb_simpson_check {
  int in_class_F;
  double simpson_value;
  double integral;
  double discrepancy;
} tb_simpson_check;

TB_API tb_status tb_simpson_exactness(const tb_function *f, double a,
                                      double b, double tol,
                                      tb_simpson_check *out);
TB_API tb_status tb_classical_trap_bound(const tb_function *f, double a,
                                         double b, double *out);
TB_API tb_status tb_hermite_hadamard(const tb_function *f, double a, double b,
                                     double *left, double *mid, double *right,
                                     int *holds);
TB_API tb_status tb_intermediate_sandwich(const tb_function *f, double a,
                                          double b, double x, int *holds);

/* ---- full analysis reports ------------------------------------------- */

typedef struct tb_report tb_report;

typedef struct tb_analysis_options {
  size_t grid;        /* default 1024 */
  double tol;         /* solver tolerance, default 1e-10 */
  double quad_tol;    /* default 1e-10 */
  double simpson_tol; /* default 1e-8 */
  int has_x;          /* nonzero: use x instead of solving */
  double x;
  unsigned jobs;
} tb_analysis_options;

typedef enum tb_format {
  TB_FORMAT_TABLE = 0,
  TB_FORMAT_JSON = 1,
  TB_FORMAT_CSV = 2
} tb_format;

TB_API void tb_analysis_options_default(tb_analysis_options *opts);
TB_API tb_status tb_analyze(const char *function_text, double a, double b,
                            const tb_analysis_options *opts, tb_report **out);
TB_API void tb_report_destroy(tb_report *r);
/* 1 when an inequality that must hold is violated. */
TB_API int tb_report_violation(const tb_report *r);
/* Human-readable description of the violations, one per line. */
TB_API tb_status tb_report_violations(const tb_report *r, char **out);
/* CSV output is the header line plus one row named `name`. */
TB_API tb_status tb_report_format(const tb_report *r, tb_format format,
                                  const char *name, char **out);
TB_API tb_status tb_report_from_json(const char *json, tb_report **out);

/* ---- means ------------------------------------------------------------ */

typedef enum tb_mean_kind {
  TB_MEAN_ARITHMETIC = 0,
  TB_MEAN_GEOMETRIC = 1,
  TB_MEAN_HARMONIC = 2,
  TB_MEAN_POWER = 3,       /* param = r */
  TB_MEAN_IDENTRIC = 4,
  TB_MEAN_LOGARITHMIC = 5,
  TB_MEAN_GENLOG = 6       /* param = p */
} tb_mean_kind;

TB_API tb_status tb_mean(tb_mean_kind kind, double param, double alpha,
                         double beta, double *out);
TB_API tb_status tb_mean_chain_check(double alpha, double beta, int *holds);

typedef enum tb_application {
  TB_APP_RECIP_SQ = 0,
  TB_APP_RECIP = 1,
  TB_APP_LOG = 2,
  TB_APP_POWER = 3
} tb_application;

typedef struct tb_application_report {
  double x;
  double M;
  double m;
  double lower;
  double middle;
  double upper;
  double quadrature_middle;
  int middle_matches;
  int sandwich_ok;
  int x_matches_closed_form; /* -1 when not applicable */
} tb_application_report;

TB_API tb_status tb_application_from_string(const char *name,
                                            tb_application *out);
TB_API tb_status tb_application_check(tb_application which, double a,
                                      double b, double p,
                                      const tb_mvt_options *opts,
                                      tb_application_report *out);

/* ---- corpus sweeps ----------------------------------------------------- */

typedef struct tb_corpus tb_corpus;

TB_API tb_status tb_corpus_builtin(const char *name, tb_corpus **out);
TB_API tb_status tb_corpus_parse(const char *text, tb_corpus **out);
TB_API tb_status tb_corpus_load(const char *path, tb_corpus **out);
TB_API void tb_corpus_destroy(tb_corpus *c);
TB_API size_t tb_corpus_size(const tb_corpus *c);
/* CSV with header; *all_ok is 0 when any row violates a required
   inequality. Byte-identical for every value of jobs. */
TB_API tb_status tb_sweep(const tb_corpus *c, const tb_analysis_options *opts,
                          unsigned jobs, char **csv, int *all_ok);

#ifdef __cplusplus
}
#endif

#endif /* TRAPBOUND_H */
