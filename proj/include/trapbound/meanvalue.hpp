#pragma once

// The auxiliary function
//
//   F(t) = (1/(b-t)) ∫_t^b f  -  (1/(t-a)) ∫_a^t f,
//
// its derivative, its secant slope over [a, b], and a solver for the
// mean-value point x with F'(x) = (F(b) - F(a)) / (b - a).

#include <cstddef>
#include <optional>
#include <vector>

#include "trapbound/expr.hpp"
#include "trapbound/interval.hpp"

namespace trapbound {

inline constexpr std::size_t kDefaultMvtGrid = 1024;
inline constexpr double kDefaultMvtTol = 1e-10;
inline constexpr int kPositivitySamples = 1025;

struct MeanValuePoint {
  double x = 0.0;
  double residual = 0.0;  // |F'(x) - secant|
  bool degenerate = false;
  std::vector<double> roots;
  std::optional<Interval> bracket;  // refined sign-change bracket of x
  double secant = 0.0;
};

// Tolerance used for the integrals inside F and F'.
double inner_quad_tol(double solver_tol);

// Continuous extension at the endpoints: F(a) = avg - f(a), F(b) = f(b) - avg.
double aux_F(const FunctionDef& f, const Interval& iv, double t,
             double quad_tol = inner_quad_tol(kDefaultMvtTol));

// Analytic derivative formula, not a difference quotient. Requires a < t < b.
double aux_F_prime(const FunctionDef& f, const Interval& iv, double t,
                   double quad_tol = inner_quad_tol(kDefaultMvtTol));

// (1/(b-a)) [f(a) + f(b) - (2/(b-a)) ∫ f].
double secant_slope(const FunctionDef& f, const Interval& iv,
                    double quad_tol = inner_quad_tol(kDefaultMvtTol));

// Throws PreconditionError when any of kPositivitySamples uniform samples of
// f on [a, b] is negative.
void require_nonnegative(const FunctionDef& f, const Interval& iv);

struct SolveOptions {
  std::size_t grid_n = kDefaultMvtGrid;
  double tol = kDefaultMvtTol;
  // Worker threads for the grid scan; results do not depend on it.
  unsigned jobs = 1;
};

MeanValuePoint solve_mvt(const FunctionDef& f, const Interval& iv,
                         const SolveOptions& opts = {});

}  // namespace trapbound
