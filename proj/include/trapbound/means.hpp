#pragma once

// Bivariate means of positive reals and the trapezoid-error applications
// built on them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapbound/interval.hpp"
#include "trapbound/meanvalue.hpp"

namespace trapbound {

enum class MeanKind {
  Arithmetic,   // A
  Geometric,    // G
  Harmonic,     // H
  Power,        // M_r, parameter r != 0
  Identric,     // I
  Logarithmic,  // L
  GenLog,       // L_p, parameter p not in {-1, 0}
};

struct MeanSpec {
  MeanKind kind;
  double param = 0.0;  // r for Power, p for GenLog

  std::string label() const;
};

struct MeanPair {
  double alpha;
  double beta;

  MeanPair(double a, double b);
};

// Equal arguments return the common value for every kind.
double mean(const MeanSpec& spec, const MeanPair& pair);

inline double arithmetic(double a, double b) { return mean({MeanKind::Arithmetic}, {a, b}); }
inline double geometric(double a, double b) { return mean({MeanKind::Geometric}, {a, b}); }
inline double harmonic(double a, double b) { return mean({MeanKind::Harmonic}, {a, b}); }
inline double identric(double a, double b) { return mean({MeanKind::Identric}, {a, b}); }
inline double logarithmic(double a, double b) { return mean({MeanKind::Logarithmic}, {a, b}); }
inline double power_mean(double r, double a, double b) { return mean({MeanKind::Power, r}, {a, b}); }
inline double gen_log(double p, double a, double b) { return mean({MeanKind::GenLog, p}, {a, b}); }

struct MeanChain {
  double H, G, L, I, A;
  bool holds;  // H <= G <= L <= I <= A with slack 1e-12
};

MeanChain mean_chain(const MeanPair& pair);
inline bool mean_chain_check(const MeanPair& pair) { return mean_chain(pair).holds; }

struct AxiomReport {
  bool homogeneity = true;
  bool symmetry = true;
  bool reflexivity = true;
  bool monotonicity = true;
  bool internality = true;
  std::vector<std::string> failures;

  bool all() const {
    return homogeneity && symmetry && reflexivity && monotonicity && internality;
  }
};

// Checks the five mean axioms on every pair drawn from `samples` (and
// scalings by a few factors), each to 1e-10 relative.
AxiomReport mean_axioms_check(const MeanSpec& spec,
                              const std::vector<double>& samples);

enum class Application { RecipSq, Recip, Log, Power };

std::optional<Application> application_from_string(std::string_view name);
std::string_view to_string(Application app) noexcept;

struct ApplicationReport {
  Application which;
  double p = 0.0;
  Interval iv;
  MeanValuePoint mvt;
  double M = 0.0, m = 0.0;
  // The printed bound sides and the mean-form middle. For RecipSq these are
  // the generic quantities multiplied by G(a,b)^2.
  double lower = 0.0, middle = 0.0, upper = 0.0;
  double quadrature_middle = 0.0;  // same scaling as `middle`
  bool middle_matches = false;     // 1e-8 relative
  bool sandwich_ok = false;
  std::optional<bool> x_matches_closed_form;  // RecipSq: x = sqrt(ab)
};

ApplicationReport application_check(Application which, const Interval& iv,
                                    double p = 2.0,
                                    const SolveOptions& opts = {});

}  // namespace trapbound
