#pragma once

// Two-sided bounds on the trapezoid error (f(a)+f(b))/2 - (1/(b-a))∫f of a
// non-negative function, in terms of a point x in (a, b) and
//
//   M = max(x - a, b - x),   m = min(x - a, b - x).
//
// The sandwich lower <= middle <= upper is guaranteed when x solves
// F'(x) = secant (see meanvalue.hpp); every function here accepts an
// arbitrary interior x so callers can probe where it holds.

#include "trapbound/expr.hpp"
#include "trapbound/interval.hpp"
#include "trapbound/quad.hpp"

namespace trapbound {

// Additive slack for inequality checks on O(1) values; scaled by
// (1 + |value|) for larger magnitudes.
inline constexpr double kInequalitySlack = 1e-9;

struct Geometry {
  double x;
  double M;
  double m;
};

Geometry geometry(const Interval& iv, double x);

struct Envelope {
  double lower = 0.0;
  double middle = 0.0;  // (f(a)+f(b))/2 - (1/(b-a))∫f
  double upper = 0.0;
  Geometry geometry{};
  double delta = 0.0;  // upper - lower
  double integral = 0.0;
  bool x_is_mvt = false;

  bool sandwich_holds(double slack = kInequalitySlack) const;
};

Envelope envelope(const FunctionDef& f, const Interval& iv, double x,
                  bool x_is_mvt = false, double quad_tol = kDefaultQuadTol);

// Closed form ((M^2 - m^2) / (2 m^2 M^2)) (b - a) ∫f.
double gap_delta(const FunctionDef& f, const Interval& iv, double x,
                 double quad_tol = kDefaultQuadTol);

struct PsiValue {
  double value;
};

// (b-a)^2 f(x) / (2 (x-a)(b-x)) + (f(a)+f(b))/2
PsiValue psi(const FunctionDef& f, const Interval& iv, double x);

// Bounds on ∫f itself: lower uses m, upper uses M, both scaling Psi by
// 2K^2 (b-a) / (2K^2 + (b-a)^2).
struct AltFormBounds {
  double lower_int;
  double upper_int;
  double integral;

  bool holds(double slack = kInequalitySlack) const;
};

AltFormBounds alt_form_bounds(const FunctionDef& f, const Interval& iv,
                              double x, double quad_tol = kDefaultQuadTol);

struct SimpsonCheck {
  bool in_class_F = false;
  double simpson_value = 0.0;  // (b-a)/3 [2 f(mid) + (f(a)+f(b))/2]
  double integral = 0.0;
  double discrepancy = 0.0;
  double midpoint_residual = 0.0;  // |F'(mid) - secant|
};

// Membership test: the midpoint solves F'(x) = secant within
// tol (1 + |secant|).
SimpsonCheck simpson_exactness(const FunctionDef& f, const Interval& iv,
                               double tol = 1e-8,
                               double quad_tol = kDefaultQuadTol);

// (b-a)^3 / 12 * sup |f''|
double classical_trap_bound(const FunctionDef& f, const Interval& iv);

// (b-a)^5 / 90 * sup |f''''| with the wide constant, or the sharp
// (b-a)^5 / 2880 when `sharp` is set.
double classical_simpson_bound(const FunctionDef& f, const Interval& iv,
                               bool sharp = false);

struct HermiteHadamard {
  double left;   // f((a+b)/2)
  double mid;    // (1/(b-a)) ∫ f
  double right;  // (f(a)+f(b))/2
  bool holds;
};

// Convexity of f is the caller's claim; it is not verified.
HermiteHadamard hermite_hadamard_check(const FunctionDef& f,
                                       const Interval& iv,
                                       double quad_tol = kDefaultQuadTol);

struct IntermediateSandwich {
  double lower;   // ∫f / M^2
  double middle;  // ∫_x^b f / (b-x)^2 + ∫_a^x f / (x-a)^2
  double upper;   // ∫f / m^2
  bool holds;
};

IntermediateSandwich intermediate_sandwich(const FunctionDef& f,
                                           const Interval& iv, double x,
                                           double quad_tol = kDefaultQuadTol);

inline bool intermediate_sandwich_check(const FunctionDef& f,
                                        const Interval& iv, double x) {
  return intermediate_sandwich(f, iv, x).holds;
}

}  // namespace trapbound
