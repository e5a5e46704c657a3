#include <cmath>
#include <string>

#include "doctest.h"
#include "trapbound/trapbound.h"

namespace {

struct Fn {
  tb_function* f = nullptr;
  explicit Fn(const char* text) { REQUIRE(tb_function_parse(text, &f) == TB_OK); }
  ~Fn() { tb_function_destroy(f); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  tb_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(tb_status_name(TB_OK)) == "ok");
  CHECK(std::string(tb_status_name(TB_E_DOMAIN)) == "domain error");
  CHECK(std::string(tb_version()) == "1.0.0");
}

TEST_CASE("parse errors carry an offset") {
  tb_function* f = nullptr;
  CHECK(tb_function_parse("2*+s", &f) == TB_E_SYNTAX);
  CHECK(f == nullptr);
  CHECK(tb_last_error_offset() == 2);
  CHECK(std::string(tb_last_error_message()).size() > 0);
  CHECK(tb_function_parse("s+", &f) == TB_E_SYNTAX);
  CHECK(tb_last_error_offset() == 2);
  CHECK(tb_function_parse("s", &f) == TB_OK);
  CHECK(tb_last_error_offset() == static_cast<size_t>(-1));
  tb_function_destroy(f);
}

TEST_CASE("null arguments") {
  tb_function* f = nullptr;
  double v = 0;
  CHECK(tb_function_parse(nullptr, &f) == TB_E_ARGUMENT);
  CHECK(tb_function_parse("s", nullptr) == TB_E_ARGUMENT);
  CHECK(tb_function_eval(nullptr, 1, &v) == TB_E_ARGUMENT);
  CHECK(std::string(tb_last_error_message()).find("NULL") != std::string::npos);
  tb_function_destroy(nullptr);
  tb_string_free(nullptr);
  tb_mvt_options_default(nullptr);
  tb_analysis_options_default(nullptr);
}

TEST_CASE("functions") {
  Fn f("s^3");
  double v = 0;
  CHECK(tb_function_eval(f.f, 2, &v) == TB_OK);
  CHECK(v == 8);
  tb_function* d = nullptr;
  REQUIRE(tb_function_derivative(f.f, 2, &d) == TB_OK);
  CHECK(tb_function_eval(d, 2, &v) == TB_OK);
  CHECK(v == doctest::Approx(12));
  char* text = nullptr;
  REQUIRE(tb_function_to_string(f.f, &text) == TB_OK);
  CHECK(take(text) == "s^3");
  tb_function_destroy(d);

  Fn ln("ln(s)");
  CHECK(tb_function_eval(ln.f, -1, &v) == TB_E_DOMAIN);
  Fn ab("abs(s)");
  CHECK(tb_function_derivative(ab.f, 2, &d) == TB_E_NOT_DIFFERENTIABLE);
  CHECK(tb_function_derivative(f.f, -1, &d) == TB_E_ARGUMENT);
}

TEST_CASE("quadrature") {
  Fn f("s^2");
  tb_quad_result q{};
  REQUIRE(tb_integrate(f.f, 0, 1, 1e-12, &q) == TB_OK);
  CHECK(q.value == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(q.evals > 0);
  double v = 0;
  CHECK(tb_integrate(f.f, 1, 0, 1e-12, &q) == TB_E_ARGUMENT);
  REQUIRE(tb_composite_trapezoid(f.f, 0, 1, 1, &v) == TB_OK);
  CHECK(v == 0.5);
  REQUIRE(tb_composite_simpson(f.f, 0, 1, 2, &v) == TB_OK);
  CHECK(v == doctest::Approx(1.0 / 3));
  CHECK(tb_composite_simpson(f.f, 0, 1, 3, &v) == TB_E_ARGUMENT);
  REQUIRE(tb_sup_abs_derivative(f.f, 1, 0, 1, &v) == TB_OK);
  CHECK(v == doctest::Approx(2));
}

TEST_CASE("mean-value point") {
  Fn f("1/s^2");
  double v = 0;
  REQUIRE(tb_secant_slope(f.f, 1, 2, &v) == TB_OK);
  CHECK(v == doctest::Approx(0.25));
  REQUIRE(tb_aux_F(f.f, 1, 2, 1.5, &v) == TB_OK);
  CHECK(v == doctest::Approx(-1.0 / 3));  // -(b-a)/(ab t)
  REQUIRE(tb_aux_F_prime(f.f, 1, 2, std::sqrt(2.0), &v) == TB_OK);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-9));

  tb_mvt_options opts;
  tb_mvt_options_default(&opts);
  CHECK(opts.grid == 1024);
  opts.jobs = 4;
  tb_mvt* p = nullptr;
  REQUIRE(tb_solve_mvt(f.f, 1, 4, &opts, &p) == TB_OK);
  CHECK(std::fabs(tb_mvt_x(p) - 2) <= 1e-8);
  CHECK(!tb_mvt_degenerate(p));
  CHECK(tb_mvt_residual(p) < 1e-9);
  CHECK(tb_mvt_secant(p) == doctest::Approx(0.1875));
  REQUIRE(tb_mvt_root_count(p) >= 1);
  CHECK(tb_mvt_root(p, 0) == doctest::Approx(2));
  CHECK(std::isnan(tb_mvt_root(p, 99)));
  double lo = 0, hi = 0;
  CHECK(tb_mvt_bracket(p, &lo, &hi) == 1);
  CHECK(lo <= 2);
  CHECK(2 <= hi);
  tb_mvt_destroy(p);

  Fn sq("s^2");
  REQUIRE(tb_solve_mvt(sq.f, 0, 1, nullptr, &p) == TB_OK);
  CHECK(tb_mvt_degenerate(p));
  CHECK(tb_mvt_x(p) == 0.5);
  CHECK(tb_mvt_bracket(p, &lo, &hi) == 0);
  tb_mvt_destroy(p);

  Fn neg("s-10");
  CHECK(tb_solve_mvt(neg.f, 0, 1, nullptr, &p) == TB_E_PRECONDITION);
}

TEST_CASE("bounds") {
  Fn f("1/s^2");
  const double x = std::sqrt(2.0);
  tb_envelope env{};
  REQUIRE(tb_envelope_at(f.f, 1, 2, x, &env) == TB_OK);
  CHECK(env.lower == doctest::Approx(-0.30177669529663688).epsilon(1e-9));
  CHECK(env.middle == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(env.upper == doctest::Approx(0.42677669529663688).epsilon(1e-9));
  CHECK(env.M + env.m == doctest::Approx(1));
  CHECK(env.integral == doctest::Approx(0.5));
  double v = 0;
  REQUIRE(tb_gap_delta(f.f, 1, 2, x, &v) == TB_OK);
  CHECK(v == doctest::Approx(env.delta));
  REQUIRE(tb_psi(f.f, 1, 2, x, &v) == TB_OK);
  CHECK(v == doctest::Approx(1.6553300858899106));
  double li = 0, ui = 0;
  REQUIRE(tb_alt_form_bounds(f.f, 1, 2, x, &li, &ui) == TB_OK);
  CHECK(li <= 0.5);
  CHECK(0.5 <= ui);
  CHECK(tb_envelope_at(f.f, 1, 2, 2, &env) == TB_E_ARGUMENT);

  Fn ex("exp(s)");
  tb_simpson_check sc{};
  REQUIRE(tb_simpson_exactness(ex.f, 0, 1, 1e-8, &sc) == TB_OK);
  CHECK(!sc.in_class_F);
  CHECK(sc.discrepancy == doctest::Approx(5.793e-4).epsilon(1e-3));
  REQUIRE(tb_classical_trap_bound(ex.f, 0, 1, &v) == TB_OK);
  CHECK(v == doctest::Approx(std::exp(1.0) / 12));
  double l = 0, m = 0, r = 0;
  int holds = 0;
  REQUIRE(tb_hermite_hadamard(ex.f, 0, 1, &l, &m, &r, &holds) == TB_OK);
  CHECK(holds == 1);
  CHECK(l < m);
  CHECK(m < r);
  REQUIRE(tb_intermediate_sandwich(ex.f, 0, 1, 0.3, &holds) == TB_OK);
  CHECK(holds == 1);
}

TEST_CASE("reports") {
  tb_analysis_options opts;
  tb_analysis_options_default(&opts);
  CHECK(opts.has_x == 0);
  tb_report* r = nullptr;
  REQUIRE(tb_analyze("1/s^2", 1, 2, &opts, &r) == TB_OK);
  CHECK(tb_report_violation(r) == 0);
  char* s = nullptr;
  REQUIRE(tb_report_violations(r, &s) == TB_OK);
  CHECK(take(s).empty());

  REQUIRE(tb_report_format(r, TB_FORMAT_JSON, nullptr, &s) == TB_OK);
  const std::string json = take(s);
  CHECK(json.find("\"middle\"") != std::string::npos);
  tb_report* back = nullptr;
  REQUIRE(tb_report_from_json(json.c_str(), &back) == TB_OK);
  REQUIRE(tb_report_format(back, TB_FORMAT_JSON, nullptr, &s) == TB_OK);
  CHECK(take(s) == json);
  tb_report_destroy(back);

  REQUIRE(tb_report_format(r, TB_FORMAT_CSV, "recip_sq", &s) == TB_OK);
  const std::string csv = take(s);
  CHECK(csv.rfind("name,expr,a,b,x,", 0) == 0);
  CHECK(csv.find("\nrecip_sq,1/s^2,1,2,") != std::string::npos);
  REQUIRE(tb_report_format(r, TB_FORMAT_TABLE, nullptr, &s) == TB_OK);
  CHECK(take(s).find("0.125") != std::string::npos);
  CHECK(tb_report_format(r, static_cast<tb_format>(7), nullptr, &s) == TB_E_ARGUMENT);
  tb_report_destroy(r);

  CHECK(tb_report_from_json("[]", &back) == TB_E_ARGUMENT);
  CHECK(tb_analyze("1/s", 0, 1, nullptr, &r) == TB_E_DOMAIN);
  CHECK(tb_analyze("s-10", 0, 1, nullptr, &r) == TB_E_PRECONDITION);

  opts.has_x = 1;
  opts.x = 1.2;
  REQUIRE(tb_analyze("1/s^2", 1, 2, &opts, &r) == TB_OK);
  REQUIRE(tb_report_format(r, TB_FORMAT_JSON, nullptr, &s) == TB_OK);
  CHECK(take(s).find("\"source\": \"user\"") != std::string::npos);
  tb_report_destroy(r);
}

TEST_CASE("means") {
  double v = 0;
  REQUIRE(tb_mean(TB_MEAN_IDENTRIC, 0, 1, 2, &v) == TB_OK);
  CHECK(v == doctest::Approx(4 / std::exp(1.0)));
  REQUIRE(tb_mean(TB_MEAN_GENLOG, 2, 1, 2, &v) == TB_OK);
  CHECK(v == doctest::Approx(std::sqrt(7.0 / 3)));
  CHECK(tb_mean(TB_MEAN_POWER, 0, 1, 2, &v) == TB_E_ARGUMENT);
  CHECK(tb_mean(TB_MEAN_ARITHMETIC, 0, -1, 2, &v) == TB_E_ARGUMENT);
  CHECK(tb_mean(static_cast<tb_mean_kind>(42), 0, 1, 2, &v) == TB_E_ARGUMENT);
  int holds = 0;
  REQUIRE(tb_mean_chain_check(1, 2, &holds) == TB_OK);
  CHECK(holds == 1);

  tb_application app;
  REQUIRE(tb_application_from_string("recip_sq", &app) == TB_OK);
  CHECK(app == TB_APP_RECIP_SQ);
  CHECK(tb_application_from_string("tan", &app) == TB_E_ARGUMENT);
  tb_application_report rep{};
  REQUIRE(tb_application_check(TB_APP_RECIP_SQ, 1, 2, 0, nullptr, &rep) == TB_OK);
  CHECK(rep.middle == doctest::Approx(0.25));
  CHECK(rep.sandwich_ok == 1);
  CHECK(rep.middle_matches == 1);
  CHECK(rep.x_matches_closed_form == 1);
  REQUIRE(tb_application_check(TB_APP_POWER, 1, 2, 3, nullptr, &rep) == TB_OK);
  CHECK(rep.x_matches_closed_form == -1);
  CHECK(rep.sandwich_ok == 1);
  CHECK(tb_application_check(TB_APP_LOG, 0.5, 2, 0, nullptr, &rep) == TB_E_PRECONDITION);
}

TEST_CASE("corpus and sweep") {
  tb_corpus* c = nullptr;
  REQUIRE(tb_corpus_builtin("paper", &c) == TB_OK);
  CHECK(tb_corpus_size(c) >= 6);
  char* one = nullptr;
  char* eight = nullptr;
  int ok1 = 0, ok8 = 0;
  REQUIRE(tb_sweep(c, nullptr, 1, &one, &ok1) == TB_OK);
  REQUIRE(tb_sweep(c, nullptr, 8, &eight, &ok8) == TB_OK);
  CHECK(take(one) == take(eight));
  CHECK(ok1 == 1);
  CHECK(ok8 == 1);
  tb_corpus_destroy(c);

  CHECK(tb_corpus_builtin("other", &c) == TB_E_ARGUMENT);
  CHECK(tb_corpus_parse("# nothing\n", &c) == TB_E_ARGUMENT);
  CHECK(tb_corpus_load("/nonexistent/file", &c) == TB_E_IO);
  REQUIRE(tb_corpus_parse("sq | s^2 | 0 | 1\n", &c) == TB_OK);
  CHECK(tb_corpus_size(c) == 1);
  tb_corpus_destroy(c);
}
