#include <cmath>
#include <random>

#include "doctest.h"
#include "corpus.hpp"
#include "oracles.hpp"
#include "trapbound/means.hpp"
#include "trapbound/meanvalue.hpp"

using namespace trapbound;

namespace {

FunctionDef fn(const char* text) { return FunctionDef::from_text(text); }

// Root of F'(t) = secant for exp on [0, 1], from a 10^6-point scan of the
// closed-form g plus 40-digit refinement.
constexpr double kExpRoot = 0.5249025328999656;

}  // namespace

TEST_CASE("F examples") {
  // F(t) = -(b-a)/(ab t) for 1/s^2 by direct integration.
  CHECK(oracle::close(aux_F(fn("1/s^2"), Interval(1, 2), 1.5), -1.0 / 3.0, 1e-12));
  for (double t : {0.0, 0.3, 1.0, 2.0})
    CHECK(oracle::close(aux_F(fn("4.5"), Interval(0, 2), t), 0.0, 1e-12));
  const double e = std::exp(1.0);
  CHECK(oracle::close(aux_F(fn("ln(s)"), Interval(1, e), 2.0),
                      std::log(identric(2.0, e) / identric(1.0, 2.0)), 1e-12));
  CHECK_THROWS_AS(aux_F(fn("s"), Interval(0, 1), 1.5), ArgumentError);
  CHECK_THROWS_AS(aux_F(fn("s"), Interval(0, 1), -0.1), ArgumentError);
}

TEST_CASE("F endpoint values are the continuous extensions") {
  const FunctionDef f = fn("exp(s)");
  const Interval iv(0, 1);
  const double e = std::exp(1.0);
  CHECK(oracle::close(aux_F(f, iv, 0.0), (e - 1) - 1.0, 1e-12));
  CHECK(oracle::close(aux_F(f, iv, 1.0), e - (e - 1), 1e-12));
  CHECK(oracle::close(aux_F(f, iv, 1e-7), aux_F(f, iv, 0.0), 1e-6));
  CHECK(oracle::close(aux_F(f, iv, 1 - 1e-7), aux_F(f, iv, 1.0), 1e-6));
}

TEST_CASE("F' examples") {
  const FunctionDef sq = fn("s^2");
  for (double t : {0.1, 0.5, 0.77}) {
    CHECK(oracle::close(aux_F_prime(sq, Interval(0, 1), t), 1.0 / 3.0, 1e-10));
    const double fd = oracle::central_difference(
        [&](double u) { return aux_F(sq, Interval(0, 1), u); }, t, 1e-4);
    CHECK(oracle::close(fd, 1.0 / 3.0, 1e-7));
  }
  CHECK(oracle::close(aux_F_prime(fn("3"), Interval(0, 1), 0.4), 0.0, 1e-10));
  CHECK(oracle::close(aux_F_prime(fn("1/s^2"), Interval(1, 2), std::sqrt(2.0)), 0.25, 1e-10));
  CHECK_THROWS_AS(aux_F_prime(sq, Interval(0, 1), 0.0), ArgumentError);
  CHECK_THROWS_AS(aux_F_prime(sq, Interval(0, 1), 1.0), ArgumentError);
}

TEST_CASE("F' is the derivative of F") {
  for (const auto& c : corpus::positive()) {
    CAPTURE(c.expr);
    const FunctionDef f = fn(c.expr.c_str());
    const Interval iv(c.a, c.b);
    for (double u : {0.3, 0.5, 0.65}) {
      const double t = c.a + u * iv.length();
      const double fd = oracle::central_difference(
          [&](double s) { return aux_F(f, iv, s); }, t, 1e-4 * iv.length());
      CHECK(oracle::close_rel(aux_F_prime(f, iv, t), fd, 1e-6));
    }
  }
}

TEST_CASE("secant slope") {
  CHECK(oracle::close(secant_slope(fn("1/s^2"), Interval(1, 2)), 0.25, 1e-12));
  CHECK(oracle::close(secant_slope(fn("2*s+1"), Interval(-3, 7)), 0.0, 1e-12));
  CHECK(oracle::close(secant_slope(fn("s^2"), Interval(0, 1)), 1.0 / 3.0, 1e-12));
  // Equals (F(b) - F(a)) / (b - a).
  const FunctionDef f = fn("exp(s)");
  const Interval iv(0, 1);
  CHECK(oracle::close(secant_slope(f, iv), aux_F(f, iv, 1) - aux_F(f, iv, 0), 1e-12));
}

TEST_CASE("solve_mvt examples") {
  const MeanValuePoint p = solve_mvt(fn("1/s^2"), Interval(1, 2));
  CHECK(!p.degenerate);
  CHECK(oracle::close(p.x, std::sqrt(2.0), 1e-8));
  CHECK(p.residual < 1e-9);
  REQUIRE(p.bracket.has_value());
  CHECK(p.bracket->a <= p.x);
  CHECK(p.x <= p.bracket->b);

  const MeanValuePoint q = solve_mvt(fn("s^2"), Interval(0, 1));
  CHECK(q.degenerate);
  CHECK(q.x == 0.5);
  CHECK(q.roots.empty());
  CHECK(!q.bracket.has_value());

  const MeanValuePoint r = solve_mvt(fn("exp(s)"), Interval(0, 1));
  CHECK(!r.degenerate);
  CHECK(oracle::close(r.x, kExpRoot, 1e-9));
  CHECK(r.residual <= 1e-9);
  CHECK(r.roots.size() == 1);
}

TEST_CASE("solve_mvt agrees with an independent dense-scan oracle") {
  // g(t) for exp on [0, 1] in closed form.
  const double e = std::exp(1.0);
  auto g = [e](double t) {
    return (e - std::exp(t)) / ((1 - t) * (1 - t)) + (std::exp(t) - 1) / (t * t) -
           std::exp(t) / (t * (1 - t)) - (3 - e);
  };
  const auto roots = oracle::scan_roots(g, 1e-3, 1 - 1e-3, 100000);
  REQUIRE(roots.size() == 1);
  CHECK(oracle::close(roots[0], kExpRoot, 1e-10));
}

TEST_CASE("degenerate functions") {
  for (const char* text : {"5", "3*s+1", "s^2+1", "2*s^2-s+1"}) {
    CAPTURE(text);
    const MeanValuePoint p = solve_mvt(fn(text), Interval(0, 1));
    CHECK(p.degenerate);
    CHECK(p.x == 0.5);
  }
}

TEST_CASE("solve_mvt preconditions and errors") {
  CHECK_THROWS_AS(solve_mvt(fn("s-10"), Interval(0, 1)), PreconditionError);
  CHECK_THROWS_AS(solve_mvt(fn("1/s"), Interval(0, 1)), DomainError);
  CHECK_THROWS_AS(solve_mvt(fn("s"), Interval(0, 1), {1, 1e-10, 1}), ArgumentError);
  CHECK_THROWS_AS(solve_mvt(fn("s"), Interval(0, 1), {16, 0.0, 1}), ArgumentError);
  // f >= 0 with a zero at the endpoint is accepted.
  CHECK_NOTHROW(solve_mvt(fn("ln(s)"), Interval(1, 2)));
  // Symmetric f makes g even about the midpoint; two symmetric grid points
  // then share a sign and no bracket is seen.
  try {
    solve_mvt(fn("cos(s-0.5)+2"), Interval(0, 1), {2, 1e-10, 1});
    FAIL("expected NoRootError");
  } catch (const NoRootError& err) {
    CHECK(err.min_abs_g() > 0.0);
  }
}

TEST_CASE("multiple roots: canonical choice is closest to the midpoint") {
  const FunctionDef f = fn("cos(6*(s-0.5))+1.5");
  const Interval iv(0, 1);
  const MeanValuePoint p = solve_mvt(f, iv);
  CHECK(!p.degenerate);
  REQUIRE(p.roots.size() >= 2);
  const double qtol = inner_quad_tol(kDefaultMvtTol);
  for (double r : p.roots) {
    CHECK(iv.interior(r));
    CHECK(std::fabs(aux_F_prime(f, iv, r, qtol) - p.secant) <= 1e-8);
    CHECK(std::fabs(p.x - 0.5) <= std::fabs(r - 0.5) + 1e-15);
  }
  // Symmetric pairs tie; the smaller x is chosen.
  CHECK(p.x <= 0.5 + 1e-12);
}

TEST_CASE("solve_mvt is independent of the worker count") {
  for (const auto& c : corpus::positive()) {
    CAPTURE(c.expr);
    const FunctionDef f = fn(c.expr.c_str());
    const Interval iv(c.a, c.b);
    const MeanValuePoint one = solve_mvt(f, iv, {512, 1e-10, 1});
    const MeanValuePoint four = solve_mvt(f, iv, {512, 1e-10, 4});
    CHECK(one.x == four.x);
    CHECK(one.roots == four.roots);
    CHECK(one.degenerate == four.degenerate);
  }
}

TEST_CASE("property: mean-value identity and the trapezoid-error form") {
  for (const auto& c : corpus::positive()) {
    CAPTURE(c.expr);
    const FunctionDef f = fn(c.expr.c_str());
    const Interval iv(c.a, c.b);
    const MeanValuePoint p = solve_mvt(f, iv);
    CHECK(iv.interior(p.x));
    for (double r : p.roots) CHECK(iv.interior(r));
    const double qtol = inner_quad_tol(kDefaultMvtTol);
    const double fp = aux_F_prime(f, iv, p.x, qtol);
    if (!p.degenerate) {
      CHECK(std::fabs(fp - secant_slope(f, iv)) <= 1e-8);
      CHECK(p.residual <= 1e-9);
    }
    const double len = iv.length();
    const double avg = oracle::gauss_legendre([&](double s) { return f(s); }, c.a, c.b) / len;
    CHECK(std::fabs(fp - 2.0 / len * (0.5 * (f(c.a) + f(c.b)) - avg)) <= 1e-8);
  }
}

TEST_CASE("property: F is odd about the midpoint for symmetric f") {
  const FunctionDef f = fn("cos(s-1.5)+2");
  const Interval iv(1, 2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pick(0.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    const double u = pick(rng);
    CHECK(std::fabs(aux_F(f, iv, 1.5 + u) + aux_F(f, iv, 1.5 - u)) <= 1e-9);
  }
}

TEST_CASE("property: closed-form F for the reciprocal, log and power cases") {
  std::mt19937_64 rng(23);
  const double a = 1.3, b = 3.1;
  const Interval iv(a, b);
  std::uniform_real_distribution<double> pick(a + 1e-3, b - 1e-3);
  const FunctionDef recip = fn("1/s"), log = fn("ln(s)"), recip_sq = fn("1/s^2");
  for (int i = 0; i < 20; ++i) {
    const double t = pick(rng);
    CHECK(std::fabs(aux_F(recip, iv, t) -
                    std::log(std::pow(b / t, 1 / (b - t)) / std::pow(t / a, 1 / (t - a)))) <= 1e-8);
    CHECK(std::fabs(aux_F(log, iv, t) - std::log(identric(t, b) / identric(a, t))) <= 1e-8);
    CHECK(std::fabs(aux_F(recip_sq, iv, t) - (-(b - a) / (a * b * t))) <= 1e-8);
    for (double p : {2.0, 3.0, 0.5, -0.5}) {
      const std::string text = "s^(" + std::to_string(p) + ")";
      const double closed = std::pow(gen_log(p, t, b), p) - std::pow(gen_log(p, a, t), p);
      CHECK(std::fabs(aux_F(fn(text.c_str()), iv, t) - closed) <= 1e-8);
    }
  }
}
