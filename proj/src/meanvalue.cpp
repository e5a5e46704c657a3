#include "trapbound/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "trapbound/quad.hpp"

namespace trapbound {

double inner_quad_tol(double solver_tol) {
  return std::min(1e-12, solver_tol * 1e-2);
}

double aux_F(const FunctionDef& f, const Interval& iv, double t,
             double quad_tol) {
  if (!iv.contains(t))
    throw ArgumentError("F(t) requires a <= t <= b");
  if (t == iv.a || t == iv.b) {
    const double avg = integrate(f, iv, quad_tol).value / iv.length();
    return t == iv.a ? avg - f(iv.a) : f(iv.b) - avg;
  }
  const double right = integrate(f, Interval(t, iv.b), quad_tol).value;
  const double left = integrate(f, Interval(iv.a, t), quad_tol).value;
  return right / (iv.b - t) - left / (t - iv.a);
}

double aux_F_prime(const FunctionDef& f, const Interval& iv, double t,
                   double quad_tol) {
  if (!iv.interior(t))
    throw ArgumentError("F'(t) requires a < t < b (the formula is singular at "
                        "the endpoints)");
  const double ta = t - iv.a, bt = iv.b - t;
  const double right = integrate(f, Interval(t, iv.b), quad_tol).value;
  const double left = integrate(f, Interval(iv.a, t), quad_tol).value;
  return right / (bt * bt) + left / (ta * ta) -
         iv.length() * f(t) / (ta * bt);
}

double secant_slope(const FunctionDef& f, const Interval& iv,
                    double quad_tol) {
  const double len = iv.length();
  const double integral = integrate(f, iv, quad_tol).value;
  return (f(iv.a) + f(iv.b) - 2.0 * integral / len) / len;
}

void require_nonnegative(const FunctionDef& f, const Interval& iv) {
  const int last = kPositivitySamples - 1;
  for (int i = 0; i <= last; ++i) {
    const double s = i == last ? iv.b : iv.a + iv.length() * i / last;
    const double v = f(s);
    if (v < 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "f must be non-negative on [a, b]; f(" << s << ") = " << v;
      throw PreconditionError(os.str());
    }
  }
}

namespace {

// Evaluates g on all grid nodes. Each node writes its own slot, so the
// result is independent of how nodes are split among threads.
std::vector<double> scan(const std::vector<double>& ts,
                         const auto& g, unsigned jobs) {
  std::vector<double> out(ts.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ts.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = g(ts[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < ts.size(); i += jobs) out[i] = g(ts[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

MeanValuePoint solve_mvt(const FunctionDef& f, const Interval& iv,
                         const SolveOptions& opts) {
  if (opts.grid_n < 2) throw ArgumentError("grid_n must be >= 2");
  if (!(opts.tol > 0.0)) throw ArgumentError("tol must be positive");
  require_nonnegative(f, iv);

  const double qtol = inner_quad_tol(opts.tol);
  const double secant = secant_slope(f, iv, qtol);
  auto g = [&](double t) { return aux_F_prime(f, iv, t, qtol) - secant; };

  const std::size_t n = opts.grid_n;
  const double margin = iv.length() / (4.0 * static_cast<double>(n));
  const double lo = iv.a + margin, hi = iv.b - margin;
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i)
    ts[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  const std::vector<double> gs = scan(ts, g, opts.jobs);

  double max_abs = 0.0, min_abs = INFINITY;
  for (double v : gs) {
    max_abs = std::max(max_abs, std::fabs(v));
    min_abs = std::min(min_abs, std::fabs(v));
  }

  MeanValuePoint out;
  out.secant = secant;
  const double mid = iv.midpoint();
  if (max_abs < opts.tol * (1.0 + std::fabs(secant))) {
    out.degenerate = true;
    out.x = mid;
    out.residual = std::fabs(g(mid));
    return out;
  }

  std::vector<Interval> brackets;
  for (std::size_t i = 0; i < n; ++i) {
    if (gs[i] == 0.0) {
      out.roots.push_back(ts[i]);
      brackets.emplace_back(i > 0 ? ts[i - 1] : iv.a,
                            i + 1 < n ? ts[i + 1] : iv.b);
    } else if (i + 1 < n && gs[i + 1] != 0.0 &&
               std::signbit(gs[i]) != std::signbit(gs[i + 1])) {
      double l = ts[i], r = ts[i + 1], gl = gs[i], gr = gs[i + 1];
      const double width = opts.tol * iv.length();
      while (r - l > width) {
        const double c = 0.5 * (l + r);
        if (c <= l || c >= r) break;
        const double gc = g(c);
        if (gc == 0.0) {
          l = r = c;
          gl = gr = 0.0;
          break;
        }
        if (std::signbit(gc) == std::signbit(gl)) {
          l = c;
          gl = gc;
        } else {
          r = c;
          gr = gc;
        }
      }
      // Best of the bracket ends and the secant-interpolated point.
      double x = std::fabs(gl) <= std::fabs(gr) ? l : r;
      double gx = std::min(std::fabs(gl), std::fabs(gr));
      if (gl != gr) {
        const double xi = l - gl * (r - l) / (gr - gl);
        if (xi > l && xi < r) {
          const double gi = std::fabs(g(xi));
          if (gi < gx) x = xi;
        }
      }
      out.roots.push_back(x);
      brackets.emplace_back(l < r ? l : std::nextafter(l, iv.a),
                            l < r ? r : std::nextafter(r, iv.b));
    }
  }

  if (out.roots.empty()) {
    std::ostringstream os;
    os.precision(6);
    os << "no sign change of F'(t) - secant on the scan grid (min |g| = "
       << min_abs << ")";
    throw NoRootError(os.str(), min_abs);
  }

  // Canonical root: closest to the midpoint, the smaller x on ties.
  std::size_t best = 0;
  for (std::size_t k = 1; k < out.roots.size(); ++k) {
    const double dk = std::fabs(out.roots[k] - mid);
    const double db = std::fabs(out.roots[best] - mid);
    if (dk < db || (dk == db && out.roots[k] < out.roots[best])) best = k;
  }
  out.x = out.roots[best];
  out.bracket = brackets[best];
  out.residual = std::fabs(g(out.x));
  return out;
}

}  // namespace trapbound
