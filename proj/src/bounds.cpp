#include "trapbound/bounds.hpp"

#include <cmath>
#include <sstream>

#include "trapbound/meanvalue.hpp"

namespace trapbound {

namespace {

bool le(double lhs, double rhs, double slack) {
  return lhs <= rhs + slack * (1.0 + std::fabs(rhs));
}

void require_interior(const Interval& iv, double x) {
  if (!iv.interior(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "x must lie strictly inside (" << iv.a << ", " << iv.b
       << "), got " << x;
    throw ArgumentError(os.str());
  }
}

}  // namespace

Geometry geometry(const Interval& iv, double x) {
  require_interior(iv, x);
  const double half = 0.5 * iv.length();
  const double off = std::fabs(x - iv.midpoint());
  const double M = half + off;
  const double m = half - off;
  const double M2 = std::max(x - iv.a, iv.b - x);
  const double m2 = std::min(x - iv.a, iv.b - x);
  const double scale = 1e-14 * (1.0 + std::fabs(iv.a) + std::fabs(iv.b));
  if (std::fabs(M - M2) > scale || std::fabs(m - m2) > scale)
    throw Error(ErrorCode::Argument,
                "max/min and midpoint-distance forms of M, m disagree");
  // The max/min form is exact in floating point; use it.
  return Geometry{x, M2, m2};
}

bool Envelope::sandwich_holds(double slack) const {
  return le(lower, middle, slack) && le(middle, upper, slack);
}

Envelope envelope(const FunctionDef& f, const Interval& iv, double x,
                  bool x_is_mvt, double quad_tol) {
  const Geometry geo = geometry(iv, x);
  require_nonnegative(f, iv);
  const double len = iv.length();
  const double integral = integrate(f, iv, quad_tol).value;
  const double avg = integral / len;
  const double fx = f(x);
  const double prod = (x - iv.a) * (iv.b - x);
  const double M2 = geo.M * geo.M, m2 = geo.m * geo.m;

  Envelope env;
  env.geometry = geo;
  env.integral = integral;
  env.x_is_mvt = x_is_mvt;
  env.lower = len * len / (2.0 * M2) * (avg - M2 * fx / prod);
  env.upper = len * len / (2.0 * m2) * (avg - m2 * fx / prod);
  env.middle = 0.5 * (f(iv.a) + f(iv.b)) - avg;
  env.delta = env.upper - env.lower;
  return env;
}

double gap_delta(const FunctionDef& f, const Interval& iv, double x,
                 double quad_tol) {
  const Geometry geo = geometry(iv, x);
  const double M2 = geo.M * geo.M, m2 = geo.m * geo.m;
  const double integral = integrate(f, iv, quad_tol).value;
  return (M2 - m2) / (2.0 * m2 * M2) * iv.length() * integral;
}

PsiValue psi(const FunctionDef& f, const Interval& iv, double x) {
  require_interior(iv, x);
  const double len = iv.length();
  return PsiValue{len * len / (2.0 * (x - iv.a) * (iv.b - x)) * f(x) +
                  0.5 * (f(iv.a) + f(iv.b))};
}

bool AltFormBounds::holds(double slack) const {
  return le(lower_int, integral, slack) && le(integral, upper_int, slack);
}

AltFormBounds alt_form_bounds(const FunctionDef& f, const Interval& iv,
                              double x, double quad_tol) {
  const Geometry geo = geometry(iv, x);
  require_nonnegative(f, iv);
  const double len = iv.length();
  const double p = psi(f, iv, x).value;
  auto coeff = [len](double k) {
    return 2.0 * k * k * len / (2.0 * k * k + len * len);
  };
  return AltFormBounds{coeff(geo.m) * p, coeff(geo.M) * p,
                       integrate(f, iv, quad_tol).value};
}

SimpsonCheck simpson_exactness(const FunctionDef& f, const Interval& iv,
                               double tol, double quad_tol) {
  require_nonnegative(f, iv);
  const double mid = iv.midpoint();
  const double qtol = inner_quad_tol(tol);
  const double secant = secant_slope(f, iv, qtol);
  SimpsonCheck out;
  out.midpoint_residual = std::fabs(aux_F_prime(f, iv, mid, qtol) - secant);
  out.in_class_F = out.midpoint_residual <= tol * (1.0 + std::fabs(secant));
  out.simpson_value =
      iv.length() / 3.0 * (2.0 * f(mid) + 0.5 * (f(iv.a) + f(iv.b)));
  out.integral = integrate(f, iv, quad_tol).value;
  out.discrepancy = std::fabs(out.simpson_value - out.integral);
  return out;
}

double classical_trap_bound(const FunctionDef& f, const Interval& iv) {
  const double len = iv.length();
  return len * len * len / 12.0 * sup_abs_derivative(f, 2, iv);
}

double classical_simpson_bound(const FunctionDef& f, const Interval& iv,
                               bool sharp) {
  const double len = iv.length();
  const double len5 = len * len * len * len * len;
  return len5 / (sharp ? 2880.0 : 90.0) * sup_abs_derivative(f, 4, iv);
}

HermiteHadamard hermite_hadamard_check(const FunctionDef& f,
                                       const Interval& iv, double quad_tol) {
  HermiteHadamard hh;
  hh.left = f(iv.midpoint());
  hh.mid = integrate(f, iv, quad_tol).value / iv.length();
  hh.right = 0.5 * (f(iv.a) + f(iv.b));
  hh.holds = hh.left <= hh.mid + 1e-12 && hh.mid <= hh.right + 1e-12;
  return hh;
}

IntermediateSandwich intermediate_sandwich(const FunctionDef& f,
                                           const Interval& iv, double x,
                                           double quad_tol) {
  const Geometry geo = geometry(iv, x);
  require_nonnegative(f, iv);
  const double total = integrate(f, iv, quad_tol).value;
  const double left = integrate(f, Interval(iv.a, x), quad_tol).value;
  const double right = integrate(f, Interval(x, iv.b), quad_tol).value;
  const double ta = x - iv.a, bt = iv.b - x;
  IntermediateSandwich out;
  out.lower = total / (geo.M * geo.M);
  out.middle = right / (bt * bt) + left / (ta * ta);
  out.upper = total / (geo.m * geo.m);
  out.holds = out.middle - out.lower >= -kInequalitySlack &&
              out.upper - out.middle >= -kInequalitySlack;
  return out;
}

}  // namespace trapbound
