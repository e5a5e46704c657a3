#pragma once

// End-to-end analysis of one (f, [a, b]) pair and its serialized forms.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapbound/meanvalue.hpp"
#include "trapbound/quad.hpp"

namespace trapbound {

struct AnalysisOptions {
  std::size_t grid = kDefaultMvtGrid;
  double tol = kDefaultMvtTol;        // mean-value solver
  double quad_tol = kDefaultQuadTol;  // integrals in the envelope
  double simpson_tol = 1e-8;
  std::optional<double> x;            // fixed x instead of solving
  unsigned jobs = 1;                  // threads for the solver scan
};

struct Report {
  std::string function;
  double a = 0.0, b = 0.0;
  bool x_is_mvt = true;

  struct {
    double x = 0.0;
    double residual = 0.0;
    bool degenerate = false;
    std::vector<double> roots;
  } mvt;
  struct {
    double M = 0.0, m = 0.0;
  } geometry;
  struct {
    double lower = 0.0, middle = 0.0, upper = 0.0, delta = 0.0;
  } envelope;
  struct {
    double lower_int = 0.0, upper_int = 0.0, integral = 0.0;
  } alt_form;
  double psi = 0.0;
  // NaN when f is not twice differentiable (abs).
  double classical_trap_bound = 0.0;
  struct {
    bool in_class_F = false;
    double value = 0.0, discrepancy = 0.0;
  } simpson;
  struct {
    bool sandwich_ok = false, eq24_ok = false, delta_identity_ok = false;
  } checks;
  struct {
    double tol = 0.0, quad_tol = 0.0;
    std::size_t grid = 0;
  } settings;
  double timing_ms = 0.0;

  // True when an inequality that must hold does not: the sandwich at a
  // non-degenerate solved x, the intermediate sandwich, or the gap identity.
  bool violation() const;
  std::vector<std::string> violations() const;
};

Report analyze(std::string_view function_text, double a, double b,
               const AnalysisOptions& opts = {});

std::string to_json(const Report& r, int indent = 2);
Report report_from_json(std::string_view json);

inline constexpr std::string_view kCsvHeader =
    "name,expr,a,b,x,degenerate,M,m,lower,middle,upper,delta,"
    "classical_bound,in_class_F,sandwich_ok";

// One CSV line (no trailing newline); floats with 17 significant digits.
std::string to_csv_row(const Report& r, std::string_view name);

std::string to_table(const Report& r);

// "%.17g"
std::string format_real(double v);

struct CorpusEntry {
  std::string name;
  std::string expr;
  double a;
  double b;
};

// Lines of `name | expression | a | b`; '#' starts a comment. Throws
// ArgumentError on malformed lines and on an empty corpus.
std::vector<CorpusEntry> parse_corpus(std::string_view text);
std::vector<CorpusEntry> load_corpus_file(const std::string& path);
std::optional<std::vector<CorpusEntry>> builtin_corpus(std::string_view name);

struct SweepResult {
  std::string csv;  // header + one row per entry, input order
  bool all_ok = true;
};

// Rows are computed on `jobs` threads; the output does not depend on it.
SweepResult sweep(const std::vector<CorpusEntry>& corpus,
                  const AnalysisOptions& opts, unsigned jobs);

}  // namespace trapbound
