#include "trapbound/means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trapbound/bounds.hpp"
#include "trapbound/quad.hpp"

namespace trapbound {

std::string MeanSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case MeanKind::Arithmetic: return "A";
    case MeanKind::Geometric: return "G";
    case MeanKind::Harmonic: return "H";
    case MeanKind::Identric: return "I";
    case MeanKind::Logarithmic: return "L";
    case MeanKind::Power: os << "M_" << param; return os.str();
    case MeanKind::GenLog: os << "L_" << param; return os.str();
  }
  return "?";
}

MeanPair::MeanPair(double a, double b) : alpha(a), beta(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw ArgumentError("means require finite alpha > 0 and beta > 0");
}

double mean(const MeanSpec& spec, const MeanPair& pair) {
  const double a = pair.alpha, b = pair.beta;
  switch (spec.kind) {
    case MeanKind::Arithmetic: return 0.5 * (a + b);
    case MeanKind::Geometric: return std::sqrt(a * b);
    case MeanKind::Harmonic: return 2.0 / (1.0 / a + 1.0 / b);
    case MeanKind::Power: {
      const double r = spec.param;
      if (r == 0.0 || !std::isfinite(r))
        throw ArgumentError("power mean requires r != 0");
      if (a == b) return a;
      return std::pow(0.5 * (std::pow(a, r) + std::pow(b, r)), 1.0 / r);
    }
    case MeanKind::Identric:
      if (a == b) return a;
      // (1/e) (b^b / a^a)^(1/(b-a)), in log space.
      return std::exp((b * std::log(b) - a * std::log(a)) / (b - a) - 1.0);
    case MeanKind::Logarithmic:
      if (a == b) return a;
      return (a - b) / (std::log(a) - std::log(b));
    case MeanKind::GenLog: {
      const double p = spec.param;
      if (p == 0.0 || p == -1.0 || !std::isfinite(p))
        throw ArgumentError("generalized log-mean requires p not in {-1, 0}");
      if (a == b) return a;
      const double q = p + 1.0;
      return std::pow((std::pow(b, q) - std::pow(a, q)) / (q * (b - a)),
                      1.0 / p);
    }
  }
  return NAN;
}

MeanChain mean_chain(const MeanPair& pair) {
  MeanChain c;
  c.H = harmonic(pair.alpha, pair.beta);
  c.G = geometric(pair.alpha, pair.beta);
  c.L = logarithmic(pair.alpha, pair.beta);
  c.I = identric(pair.alpha, pair.beta);
  c.A = arithmetic(pair.alpha, pair.beta);
  const double slack = 1e-12;
  c.holds = c.H <= c.G + slack && c.G <= c.L + slack && c.L <= c.I + slack &&
            c.I <= c.A + slack;
  return c;
}

namespace {

bool close_rel(double x, double y, double rel = 1e-10) {
  return std::fabs(x - y) <= rel * std::max({1.0, std::fabs(x), std::fabs(y)});
}

std::string pair_text(double x, double y) {
  std::ostringstream os;
  os << "(" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

AxiomReport mean_axioms_check(const MeanSpec& spec,
                              const std::vector<double>& samples) {
  AxiomReport rep;
  auto M = [&](double x, double y) { return mean(spec, MeanPair(x, y)); };
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(spec.label() + ": " + what);
  };
  static constexpr double scales[] = {0.5, 3.0, 10.0};

  for (double x : samples) {
    if (!close_rel(M(x, x), x)) fail(rep.reflexivity, "reflexivity at " + std::to_string(x));
    for (double y : samples) {
      const double v = M(x, y);
      if (!close_rel(v, M(y, x))) fail(rep.symmetry, "symmetry at " + pair_text(x, y));
      for (double k : scales)
        if (!close_rel(M(k * x, k * y), k * v))
          fail(rep.homogeneity, "homogeneity at " + pair_text(x, y));
      const double lo = std::min(x, y), hi = std::max(x, y);
      if (v < lo * (1 - 1e-10) || v > hi * (1 + 1e-10))
        fail(rep.internality, "internality at " + pair_text(x, y));
      // Componentwise monotonicity against every larger sample pair.
      for (double x2 : samples) {
        if (x2 < x) continue;
        for (double y2 : samples) {
          if (y2 < y) continue;
          if (v > M(x2, y2) * (1 + 1e-10))
            fail(rep.monotonicity, "monotonicity at " + pair_text(x, y));
        }
      }
    }
  }
  return rep;
}

std::optional<Application> application_from_string(std::string_view name) {
  if (name == "recip_sq") return Application::RecipSq;
  if (name == "recip") return Application::Recip;
  if (name == "log") return Application::Log;
  if (name == "power") return Application::Power;
  return std::nullopt;
}

std::string_view to_string(Application app) noexcept {
  switch (app) {
    case Application::RecipSq: return "recip_sq";
    case Application::Recip: return "recip";
    case Application::Log: return "log";
    case Application::Power: return "power";
  }
  return "?";
}

ApplicationReport application_check(Application which, const Interval& iv,
                                    double p, const SolveOptions& opts) {
  const double a = iv.a, b = iv.b;
  if (!(a > 0.0)) throw PreconditionError("applications require 0 < a < b");
  if (which == Application::Log && a < 1.0)
    throw PreconditionError("log application requires a >= 1 so that ln s >= 0");
  if (which == Application::Power && (p == 0.0 || p == -1.0))
    throw ArgumentError("power application requires p not in {-1, 0}");

  std::string text;
  switch (which) {
    case Application::RecipSq: text = "1/s^2"; break;
    case Application::Recip: text = "1/s"; break;
    case Application::Log: text = "ln(s)"; break;
    case Application::Power: {
      std::ostringstream os;
      os.precision(17);
      os << "s^" << (p < 0 ? "(" : "") << p << (p < 0 ? ")" : "");
      text = os.str();
      break;
    }
  }
  const FunctionDef f = FunctionDef::from_text(text);

  ApplicationReport rep{which, p, iv, {}, 0, 0, 0, 0, 0, 0, false, false, {}};
  rep.mvt = solve_mvt(f, iv, opts);
  // The recip_sq display is written at the closed-form point x = G(a,b);
  // the others at the solved x.
  const double G = geometric(a, b);
  const double x = which == Application::RecipSq ? G : rep.mvt.x;
  const Geometry geo = geometry(iv, x);
  rep.M = geo.M;
  rep.m = geo.m;
  const double len = b - a;
  const double prod = (x - a) * (b - x);
  const double M2 = geo.M * geo.M, m2 = geo.m * geo.m;
  auto side = [&](double k2, double avg_term, double fx_term) {
    return len * len / (2.0 * k2) * (avg_term - k2 * fx_term / prod);
  };

  const Envelope env = envelope(f, iv, x, true);
  double scale = 1.0;
  double avg_term = 0.0, fx_term = 0.0;
  switch (which) {
    case Application::RecipSq:
      // Everything multiplied by G^2: avg = 1/G^2 and f(G) = 1/G^2.
      scale = G * G;
      avg_term = 1.0;
      fx_term = 1.0;
      rep.middle = G * G / harmonic(a * a, b * b) - 1.0;
      rep.x_matches_closed_form = std::fabs(rep.mvt.x - G) <= 1e-8;
      break;
    case Application::Recip:
      avg_term = 1.0 / logarithmic(a, b);
      fx_term = 1.0 / x;
      rep.middle = 1.0 / harmonic(a, b) - 1.0 / logarithmic(a, b);
      break;
    case Application::Log:
      avg_term = std::log(identric(a, b));
      fx_term = std::log(x);
      rep.middle = std::log(geometric(a, b)) - std::log(identric(a, b));
      break;
    case Application::Power: {
      const double Lpp = std::pow(gen_log(p, a, b), p);
      const double Mpp = std::pow(power_mean(p, a, b), p);
      avg_term = Lpp;
      fx_term = std::pow(x, p);
      rep.middle = Mpp - Lpp;
      break;
    }
  }
  rep.lower = side(M2, avg_term, fx_term);
  rep.upper = side(m2, avg_term, fx_term);
  rep.quadrature_middle = scale * env.middle;
  rep.middle_matches =
      std::fabs(rep.middle - rep.quadrature_middle) <=
      1e-8 * (1.0 + std::fabs(rep.quadrature_middle));
  rep.sandwich_ok =
      rep.lower <= rep.middle + kInequalitySlack * (1.0 + std::fabs(rep.middle)) &&
      rep.middle <= rep.upper + kInequalitySlack * (1.0 + std::fabs(rep.upper));
  return rep;
}

}  // namespace trapbound
