#include "trapbound/quad.hpp"

#include <cmath>
#include <limits>

namespace trapbound {

namespace {

constexpr int kMinDepth = 3;

class AdaptiveSimpson {
 public:
  AdaptiveSimpson(const Integrand& f, double tol) : f_(f), tol_(tol) {}

  QuadResult run(const Interval& iv) {
    const double a = iv.a, b = iv.b, m = iv.midpoint();
    const double fa = eval(a), fm = eval(m), fb = eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = recurse(a, fa, m, fm, b, fb, whole, tol_, 0);
    if (exhausted_)
      throw NonConvergenceError(
          "adaptive quadrature exceeded recursion depth " +
              std::to_string(kMaxQuadDepth),
          value);
    return QuadResult{value, err_, evals_};
  }

 private:
  double eval(double s) {
    ++evals_;
    return f_(s);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb,
                 double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    const double diff = refined - whole;
    const double local_err = std::fabs(diff) / 15.0;
    const bool converged =
        local_err <= tol ||
        local_err <= 8.0 * std::numeric_limits<double>::epsilon() *
                         (std::fabs(left) + std::fabs(right));
    if (depth >= kMinDepth && converged) {
      err_ += local_err;
      return refined + diff / 15.0;
    }
    if (depth >= kMaxQuadDepth || lm <= a || rm >= b) {
      exhausted_ = true;
      err_ += local_err;
      return refined + diff / 15.0;
    }
    return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }

  const Integrand& f_;
  double tol_;
  double err_ = 0.0;
  std::uint64_t evals_ = 0;
  bool exhausted_ = false;
};

}  // namespace

QuadResult integrate(const Integrand& f, const Interval& iv, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw ArgumentError("quadrature tolerance must be positive and finite");
  return AdaptiveSimpson(f, tol).run(iv);
}

QuadResult integrate(const FunctionDef& f, const Interval& iv, double tol) {
  return integrate(Integrand([&f](double s) { return f.expr.eval(s); }), iv,
                   tol);
}

double composite_trapezoid(const FunctionDef& f, const Interval& iv, int n) {
  if (n < 1) throw ArgumentError("trapezoid panel count must be >= 1");
  const double h = iv.length() / n;
  double inner = 0.0;
  for (int i = 1; i < n; ++i) inner += f(iv.a + i * h);
  return h * (0.5 * (f(iv.a) + f(iv.b)) + inner);
}

double composite_simpson(const FunctionDef& f, const Interval& iv, int n) {
  if (n < 2 || n % 2 != 0)
    throw ArgumentError("Simpson panel count must be even and >= 2, got " +
                        std::to_string(n));
  const double h = iv.length() / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(iv.a + i * h);
  return h / 3.0 * (f(iv.a) + f(iv.b) + 4.0 * odd + 2.0 * even);
}

double sup_abs_derivative(const FunctionDef& f, int order, const Interval& iv) {
  if (order < 0) throw ArgumentError("derivative order must be non-negative");
  const Expr d = differentiate(f.expr, order);
  auto g = [&d](double s) { return std::fabs(d.eval(s)); };

  const int last = kSupGridPoints - 1;
  const double h = iv.length() / last;
  auto node = [&](int i) { return i == last ? iv.b : iv.a + i * h; };
  int best_i = 0;
  double best = -1.0;
  for (int i = 0; i <= last; ++i) {
    const double v = g(node(i));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  // Golden-section maximisation on the two grid cells around the argmax.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = node(best_i > 0 ? best_i - 1 : 0);
  double hi = node(best_i < last ? best_i + 1 : last);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * iv.length(); ++it) {
    if (g1 >= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - phi * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + phi * (hi - lo);
      g2 = g(x2);
    }
  }
  return std::fmax(best, std::fmax(g1, g2));
}

}  // namespace trapbound
