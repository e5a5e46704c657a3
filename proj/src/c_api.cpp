#include "trapbound/trapbound.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "trapbound/bounds.hpp"
#include "trapbound/means.hpp"
#include "trapbound/meanvalue.hpp"
#include "trapbound/quad.hpp"
#include "trapbound/report.hpp"

using namespace trapbound;

struct tb_function {
  FunctionDef def;
};
struct tb_mvt {
  MeanValuePoint point;
};
struct tb_report {
  Report report;
};
struct tb_corpus {
  std::vector<CorpusEntry> entries;
};

namespace {

thread_local std::string g_message;
thread_local std::size_t g_offset = static_cast<std::size_t>(-1);

tb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Argument: return TB_E_ARGUMENT;
    case ErrorCode::Syntax: return TB_E_SYNTAX;
    case ErrorCode::Domain: return TB_E_DOMAIN;
    case ErrorCode::Precondition: return TB_E_PRECONDITION;
    case ErrorCode::NoRoot: return TB_E_NO_ROOT;
    case ErrorCode::NonConvergence: return TB_E_NONCONVERGENCE;
    case ErrorCode::NotDifferentiable: return TB_E_NOT_DIFFERENTIABLE;
    case ErrorCode::Io: return TB_E_IO;
  }
  return TB_E_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread-local
// error message.
template <class Body>
tb_status guarded(Body&& body) {
  g_message.clear();
  g_offset = static_cast<std::size_t>(-1);
  try {
    body();
    return TB_OK;
  } catch (const SyntaxError& e) {
    g_message = e.what();
    g_offset = e.offset();
    return TB_E_SYNTAX;
  } catch (const Error& e) {
    g_message = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_message = "out of memory";
  } catch (const std::exception& e) {
    g_message = e.what();
  } catch (...) {
    g_message = "unknown error";
  }
  return TB_E_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SolveOptions solve_options(const tb_mvt_options* opts) {
  SolveOptions s;
  if (opts != nullptr) {
    s.grid_n = opts->grid;
    s.tol = opts->tol;
    s.jobs = opts->jobs;
  }
  return s;
}

AnalysisOptions analysis_options(const tb_analysis_options* opts) {
  AnalysisOptions o;
  if (opts != nullptr) {
    o.grid = opts->grid;
    o.tol = opts->tol;
    o.quad_tol = opts->quad_tol;
    o.simpson_tol = opts->simpson_tol;
    if (opts->has_x) o.x = opts->x;
    o.jobs = opts->jobs;
  }
  return o;
}

}  // namespace

extern "C" {

const char* tb_status_name(tb_status status) {
  switch (status) {
    case TB_OK: return "ok";
    case TB_E_ARGUMENT: return "argument error";
    case TB_E_SYNTAX: return "syntax error";
    case TB_E_DOMAIN: return "domain error";
    case TB_E_PRECONDITION: return "precondition error";
    case TB_E_NO_ROOT: return "no root found";
    case TB_E_NONCONVERGENCE: return "non-convergence";
    case TB_E_NOT_DIFFERENTIABLE: return "not differentiable";
    case TB_E_IO: return "i/o error";
    case TB_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tb_last_error_message(void) { return g_message.c_str(); }
size_t tb_last_error_offset(void) { return g_offset; }
const char* tb_version(void) { return "1.0.0"; }
void tb_string_free(char* s) { std::free(s); }

// ---- expressions

tb_status tb_function_parse(const char* text, tb_function** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tb_function{FunctionDef::from_text(text)};
  });
}

void tb_function_destroy(tb_function* f) { delete f; }

tb_status tb_function_eval(const tb_function* f, double s, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = f->def(s);
  });
}

tb_status tb_function_derivative(const tb_function* f, int order,
                                 tb_function** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = new tb_function{
        FunctionDef{differentiate(f->def.expr, order), {}, std::nullopt}};
  });
}

tb_status tb_function_to_string(const tb_function* f, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(f->def.expr.to_string());
  });
}

// ---- quadrature

tb_status tb_integrate(const tb_function* f, double a, double b, double tol,
                       tb_quad_result* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    const QuadResult r = integrate(f->def, Interval(a, b), tol);
    *out = tb_quad_result{r.value, r.err_estimate, r.evals};
  });
}

tb_status tb_composite_trapezoid(const tb_function* f, double a, double b,
                                 int n, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = composite_trapezoid(f->def, Interval(a, b), n);
  });
}

tb_status tb_composite_simpson(const tb_function* f, double a, double b, int n,
                               double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = composite_simpson(f->def, Interval(a, b), n);
  });
}

tb_status tb_sup_abs_derivative(const tb_function* f, int order, double a,
                                double b, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = sup_abs_derivative(f->def, order, Interval(a, b));
  });
}

// ---- mean-value point

tb_status tb_aux_F(const tb_function* f, double a, double b, double t,
                   double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = aux_F(f->def, Interval(a, b), t);
  });
}

tb_status tb_aux_F_prime(const tb_function* f, double a, double b, double t,
                         double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = aux_F_prime(f->def, Interval(a, b), t);
  });
}

tb_status tb_secant_slope(const tb_function* f, double a, double b,
                          double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = secant_slope(f->def, Interval(a, b));
  });
}

void tb_mvt_options_default(tb_mvt_options* opts) {
  if (opts == nullptr) return;
  opts->grid = kDefaultMvtGrid;
  opts->tol = kDefaultMvtTol;
  opts->jobs = 1;
}

tb_status tb_solve_mvt(const tb_function* f, double a, double b,
                       const tb_mvt_options* opts, tb_mvt** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = new tb_mvt{solve_mvt(f->def, Interval(a, b), solve_options(opts))};
  });
}

void tb_mvt_destroy(tb_mvt* p) { delete p; }
double tb_mvt_x(const tb_mvt* p) { return p->point.x; }
double tb_mvt_residual(const tb_mvt* p) { return p->point.residual; }
int tb_mvt_degenerate(const tb_mvt* p) { return p->point.degenerate ? 1 : 0; }
double tb_mvt_secant(const tb_mvt* p) { return p->point.secant; }
size_t tb_mvt_root_count(const tb_mvt* p) { return p->point.roots.size(); }

double tb_mvt_root(const tb_mvt* p, size_t i) {
  return i < p->point.roots.size() ? p->point.roots[i] : NAN;
}

int tb_mvt_bracket(const tb_mvt* p, double* lo, double* hi) {
  if (!p->point.bracket) return 0;
  if (lo) *lo = p->point.bracket->a;
  if (hi) *hi = p->point.bracket->b;
  return 1;
}

// ---- bounds

tb_status tb_envelope_at(const tb_function* f, double a, double b, double x,
                         tb_envelope* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    const Envelope e = envelope(f->def, Interval(a, b), x);
    *out = tb_envelope{e.lower,        e.middle,       e.upper, e.geometry.M,
                       e.geometry.m,   e.delta,        e.integral};
  });
}

tb_status tb_gap_delta(const tb_function* f, double a, double b, double x,
                       double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = gap_delta(f->def, Interval(a, b), x);
  });
}

tb_status tb_psi(const tb_function* f, double a, double b, double x,
                 double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = psi(f->def, Interval(a, b), x).value;
  });
}

tb_status tb_alt_form_bounds(const tb_function* f, double a, double b,
                             double x, double* lower_int, double* upper_int) {
  return guarded([&] {
    require(f, "f");
    require(lower_int, "lower_int");
    require(upper_int, "upper_int");
    const AltFormBounds r = alt_form_bounds(f->def, Interval(a, b), x);
    *lower_int = r.lower_int;
    *upper_int = r.upper_int;
  });
}

tb_status tb_simpson_exactness(const tb_function* f, double a, double b,
                               double tol, tb_simpson_check* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    const SimpsonCheck r = simpson_exactness(f->def, Interval(a, b), tol);
    *out = tb_simpson_check{r.in_class_F ? 1 : 0, r.simpson_value, r.integral,
                            r.discrepancy};
  });
}

tb_status tb_classical_trap_bound(const tb_function* f, double a, double b,
                                  double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = classical_trap_bound(f->def, Interval(a, b));
  });
}

tb_status tb_hermite_hadamard(const tb_function* f, double a, double b,
                              double* left, double* mid, double* right,
                              int* holds) {
  return guarded([&] {
    require(f, "f");
    const HermiteHadamard r = hermite_hadamard_check(f->def, Interval(a, b));
    if (left) *left = r.left;
    if (mid) *mid = r.mid;
    if (right) *right = r.right;
    if (holds) *holds = r.holds ? 1 : 0;
  });
}

tb_status tb_intermediate_sandwich(const tb_function* f, double a, double b,
                                   double x, int* holds) {
  return guarded([&] {
    require(f, "f");
    require(holds, "holds");
    *holds = intermediate_sandwich_check(f->def, Interval(a, b), x) ? 1 : 0;
  });
}

// ---- reports

void tb_analysis_options_default(tb_analysis_options* opts) {
  if (opts == nullptr) return;
  const AnalysisOptions d;
  opts->grid = d.grid;
  opts->tol = d.tol;
  opts->quad_tol = d.quad_tol;
  opts->simpson_tol = d.simpson_tol;
  opts->has_x = 0;
  opts->x = 0.0;
  opts->jobs = d.jobs;
}

tb_status tb_analyze(const char* function_text, double a, double b,
                     const tb_analysis_options* opts, tb_report** out) {
  return guarded([&] {
    require(function_text, "function_text");
    require(out, "out");
    *out = new tb_report{analyze(function_text, a, b, analysis_options(opts))};
  });
}

void tb_report_destroy(tb_report* r) { delete r; }

int tb_report_violation(const tb_report* r) {
  return r->report.violation() ? 1 : 0;
}

tb_status tb_report_violations(const tb_report* r, char** out) {
  return guarded([&] {
    require(r, "r");
    require(out, "out");
    std::string text;
    for (const auto& v : r->report.violations()) text += v + "\n";
    *out = dup_string(text);
  });
}

tb_status tb_report_format(const tb_report* r, tb_format format,
                           const char* name, char** out) {
  return guarded([&] {
    require(r, "r");
    require(out, "out");
    switch (format) {
      case TB_FORMAT_TABLE: *out = dup_string(to_table(r->report)); return;
      case TB_FORMAT_JSON: *out = dup_string(to_json(r->report) + "\n"); return;
      case TB_FORMAT_CSV:
        *out = dup_string(std::string(kCsvHeader) + "\n" +
                          to_csv_row(r->report, name ? name : "fn") + "\n");
        return;
    }
    throw ArgumentError("unknown output format");
  });
}

tb_status tb_report_from_json(const char* json, tb_report** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new tb_report{report_from_json(json)};
  });
}

// ---- means

tb_status tb_mean(tb_mean_kind kind, double param, double alpha, double beta,
                  double* out) {
  return guarded([&] {
    require(out, "out");
    MeanKind k;
    switch (kind) {
      case TB_MEAN_ARITHMETIC: k = MeanKind::Arithmetic; break;
      case TB_MEAN_GEOMETRIC: k = MeanKind::Geometric; break;
      case TB_MEAN_HARMONIC: k = MeanKind::Harmonic; break;
      case TB_MEAN_POWER: k = MeanKind::Power; break;
      case TB_MEAN_IDENTRIC: k = MeanKind::Identric; break;
      case TB_MEAN_LOGARITHMIC: k = MeanKind::Logarithmic; break;
      case TB_MEAN_GENLOG: k = MeanKind::GenLog; break;
      default: throw ArgumentError("unknown mean kind");
    }
    *out = mean(MeanSpec{k, param}, MeanPair(alpha, beta));
  });
}

tb_status tb_mean_chain_check(double alpha, double beta, int* holds) {
  return guarded([&] {
    require(holds, "holds");
    *holds = mean_chain_check(MeanPair(alpha, beta)) ? 1 : 0;
  });
}

tb_status tb_application_from_string(const char* name, tb_application* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto app = application_from_string(name);
    if (!app)
      throw ArgumentError(std::string("unknown application '") + name +
                          "' (expected recip_sq, recip, log or power)");
    *out = static_cast<tb_application>(*app);
  });
}

tb_status tb_application_check(tb_application which, double a, double b,
                               double p, const tb_mvt_options* opts,
                               tb_application_report* out) {
  return guarded([&] {
    require(out, "out");
    if (which < TB_APP_RECIP_SQ || which > TB_APP_POWER)
      throw ArgumentError("unknown application");
    const ApplicationReport r =
        application_check(static_cast<Application>(which), Interval(a, b), p,
                          solve_options(opts));
    out->x = r.mvt.x;
    out->M = r.M;
    out->m = r.m;
    out->lower = r.lower;
    out->middle = r.middle;
    out->upper = r.upper;
    out->quadrature_middle = r.quadrature_middle;
    out->middle_matches = r.middle_matches ? 1 : 0;
    out->sandwich_ok = r.sandwich_ok ? 1 : 0;
    out->x_matches_closed_form =
        r.x_matches_closed_form ? (*r.x_matches_closed_form ? 1 : 0) : -1;
  });
}

// ---- corpus

tb_status tb_corpus_builtin(const char* name, tb_corpus** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    auto entries = builtin_corpus(name);
    if (!entries)
      throw ArgumentError(std::string("unknown builtin corpus '") + name + "'");
    *out = new tb_corpus{std::move(*entries)};
  });
}

tb_status tb_corpus_parse(const char* text, tb_corpus** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tb_corpus{parse_corpus(text)};
  });
}

tb_status tb_corpus_load(const char* path, tb_corpus** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tb_corpus{load_corpus_file(path)};
  });
}

void tb_corpus_destroy(tb_corpus* c) { delete c; }
size_t tb_corpus_size(const tb_corpus* c) { return c->entries.size(); }

tb_status tb_sweep(const tb_corpus* c, const tb_analysis_options* opts,
                   unsigned jobs, char** csv, int* all_ok) {
  return guarded([&] {
    require(c, "corpus");
    require(csv, "csv");
    const SweepResult r = sweep(c->entries, analysis_options(opts), jobs);
    *csv = dup_string(r.csv);
    if (all_ok) *all_ok = r.all_ok ? 1 : 0;
  });
}

}  // extern "C"
