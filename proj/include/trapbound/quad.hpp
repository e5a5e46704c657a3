#pragma once

#include <cstdint>
#include <functional>

#include "trapbound/expr.hpp"
#include "trapbound/interval.hpp"

namespace trapbound {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kMaxQuadDepth = 50;
inline constexpr int kSupGridPoints = 4097;

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::uint64_t evals = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Simpson with Richardson correction. A panel is accepted when its
// local error estimate is within tol scaled by panel length / (b - a), so
// err_estimate <= tol on success. Panels whose error is already at rounding
// level relative to their value are also accepted. Throws
// NonConvergenceError (carrying the best estimate) when a panel needs more
// than kMaxQuadDepth bisections; DomainError from f propagates.
QuadResult integrate(const Integrand& f, const Interval& iv,
                     double tol = kDefaultQuadTol);
QuadResult integrate(const FunctionDef& f, const Interval& iv,
                     double tol = kDefaultQuadTol);

// n = 1 is the single-panel rule (b - a)(f(a) + f(b)) / 2.
double composite_trapezoid(const FunctionDef& f, const Interval& iv, int n);

// n must be even and >= 2; n = 2 is (b - a)/6 [f(a) + 4 f(mid) + f(b)].
double composite_simpson(const FunctionDef& f, const Interval& iv, int n);

// sup |f^(order)| over iv: symbolic derivative sampled on a fixed
// kSupGridPoints grid, then golden-section refinement around the grid
// argmax. Never returns less than the grid maximum, but can under-estimate
// for spikes narrower than the grid spacing.
double sup_abs_derivative(const FunctionDef& f, int order, const Interval& iv);

}  // namespace trapbound
