// trapbound: trapezoid-error envelopes, mean-value points, means and
// corpus sweeps from the command line.
//
// Exit codes: 0 success, 1 usage/input error, 2 an inequality that must hold
// was violated.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapbound/trapbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

struct ApiError {
  tb_status status;
  std::string message;
};

void check(tb_status s) {
  if (s != TB_OK) throw ApiError{s, tb_last_error_message()};
}

struct StringDeleter {
  void operator()(char* s) const { tb_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Destroy)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Destroy(p); }
};
using Function = std::unique_ptr<tb_function, HandleDeleter<tb_function, tb_function_destroy>>;
using Mvt = std::unique_ptr<tb_mvt, HandleDeleter<tb_mvt, tb_mvt_destroy>>;
using Report = std::unique_ptr<tb_report, HandleDeleter<tb_report, tb_report_destroy>>;
using Corpus = std::unique_ptr<tb_corpus, HandleDeleter<tb_corpus, tb_corpus_destroy>>;

tb_format parse_format(const std::string& s) {
  if (s == "json") return TB_FORMAT_JSON;
  if (s == "csv") return TB_FORMAT_CSV;
  return TB_FORMAT_TABLE;
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- bounds

struct BoundsArgs {
  std::string fn;
  double a = 0, b = 0;
  std::string x = "auto";
  double tol = 1e-10;
  std::size_t grid = 1024;
  std::string format = "table";
  unsigned jobs = 1;
  std::string name = "fn";
};

int run_bounds(const BoundsArgs& args) {
  tb_analysis_options opts;
  tb_analysis_options_default(&opts);
  opts.tol = args.tol;
  opts.grid = args.grid;
  opts.jobs = args.jobs;
  if (args.x != "auto") {
    char* end = nullptr;
    errno = 0;
    opts.x = std::strtod(args.x.c_str(), &end);
    if (errno != 0 || end == args.x.c_str() || *end != '\0')
      throw ApiError{TB_E_ARGUMENT, "--x expects a real number or 'auto'"};
    opts.has_x = 1;
  }
  tb_report* raw = nullptr;
  check(tb_analyze(args.fn.c_str(), args.a, args.b, &opts, &raw));
  Report report(raw);

  char* text = nullptr;
  check(tb_report_format(report.get(), parse_format(args.format),
                         args.name.c_str(), &text));
  std::cout << OwnedString(text).get();
  if (tb_report_violation(report.get())) {
    char* why = nullptr;
    check(tb_report_violations(report.get(), &why));
    std::cerr << "inequality violated:\n" << OwnedString(why).get();
    return kExitViolation;
  }
  return kExitOk;
}

// ---- meanpoint

struct MeanpointArgs {
  std::string fn;
  double a = 0, b = 0;
  double tol = 1e-10;
  std::size_t grid = 1024;
  std::string format = "table";
  bool all_roots = false;
  unsigned jobs = 1;
};

int run_meanpoint(const MeanpointArgs& args) {
  tb_function* fraw = nullptr;
  check(tb_function_parse(args.fn.c_str(), &fraw));
  Function f(fraw);
  tb_mvt_options opts{args.grid, args.tol, args.jobs};
  tb_mvt* mraw = nullptr;
  check(tb_solve_mvt(f.get(), args.a, args.b, &opts, &mraw));
  Mvt p(mraw);

  const double x = tb_mvt_x(p.get());
  const double residual = tb_mvt_residual(p.get());
  const bool degenerate = tb_mvt_degenerate(p.get()) != 0;
  std::vector<double> roots;
  for (std::size_t i = 0; i < tb_mvt_root_count(p.get()); ++i)
    roots.push_back(tb_mvt_root(p.get(), i));

  const tb_format fmt = parse_format(args.format);
  if (fmt == TB_FORMAT_JSON) {
    nlohmann::ordered_json j;
    j["function"] = args.fn;
    j["interval"] = {{"a", args.a}, {"b", args.b}};
    j["x"] = x;
    j["residual"] = residual;
    j["degenerate"] = degenerate;
    j["secant"] = tb_mvt_secant(p.get());
    if (args.all_roots) j["roots"] = roots;
    std::cout << j.dump(2) << "\n";
  } else if (fmt == TB_FORMAT_CSV) {
    std::cout << "expr,a,b,x,residual,degenerate\n"
              << args.fn << ',' << real17(args.a) << ',' << real17(args.b)
              << ',' << real17(x) << ',' << real17(residual) << ','
              << (degenerate ? "true" : "false") << "\n";
    if (args.all_roots) {
      std::cout << "root\n";
      for (double r : roots) std::cout << real17(r) << "\n";
    }
  } else {
    std::cout << std::setprecision(6) << "f(s) = " << args.fn << " on ["
              << args.a << ", " << args.b << "]\n"
              << "  x           " << std::setprecision(10) << x << "\n"
              << "  residual    " << std::setprecision(6) << residual << "\n"
              << "  degenerate  " << (degenerate ? "true" : "false") << "\n"
              << "  secant      " << tb_mvt_secant(p.get()) << "\n";
    if (args.all_roots) {
      std::cout << "  roots (" << roots.size() << ")\n";
      for (double r : roots)
        std::cout << "    " << std::setprecision(10) << r << "\n";
    }
  }
  return kExitOk;
}

// ---- means

struct MeansArgs {
  double alpha = 1, beta = 2;
  double r = 2, p = 2;
  std::string check_app;
  double a = 1, b = 2;
  std::string format = "table";
};

int run_application(const MeansArgs& args) {
  tb_application which;
  check(tb_application_from_string(args.check_app.c_str(), &which));
  tb_application_report rep;
  check(tb_application_check(which, args.a, args.b, args.p, nullptr, &rep));
  const bool ok = rep.middle_matches && rep.sandwich_ok &&
                  rep.x_matches_closed_form != 0;

  const tb_format fmt = parse_format(args.format);
  if (fmt == TB_FORMAT_JSON) {
    nlohmann::ordered_json j;
    j["application"] = args.check_app;
    j["interval"] = {{"a", args.a}, {"b", args.b}};
    if (which == TB_APP_POWER) j["p"] = args.p;
    j["x"] = rep.x;
    j["M"] = rep.M;
    j["m"] = rep.m;
    j["lower"] = rep.lower;
    j["middle"] = rep.middle;
    j["upper"] = rep.upper;
    j["quadrature_middle"] = rep.quadrature_middle;
    j["middle_matches"] = rep.middle_matches != 0;
    j["sandwich_ok"] = rep.sandwich_ok != 0;
    if (rep.x_matches_closed_form >= 0)
      j["x_matches_closed_form"] = rep.x_matches_closed_form != 0;
    std::cout << j.dump(2) << "\n";
  } else if (fmt == TB_FORMAT_CSV) {
    std::cout << "application,a,b,p,x,M,m,lower,middle,upper,quadrature_middle,"
                 "middle_matches,sandwich_ok\n"
              << args.check_app << ',' << real17(args.a) << ','
              << real17(args.b) << ',' << real17(args.p) << ','
              << real17(rep.x) << ',' << real17(rep.M) << ',' << real17(rep.m)
              << ',' << real17(rep.lower) << ',' << real17(rep.middle) << ','
              << real17(rep.upper) << ',' << real17(rep.quadrature_middle)
              << ',' << (rep.middle_matches ? "true" : "false") << ','
              << (rep.sandwich_ok ? "true" : "false") << "\n";
  } else {
    std::cout << std::setprecision(6) << "application " << args.check_app
              << " on [" << args.a << ", " << args.b << "]\n"
              << "  x                  " << std::setprecision(10) << rep.x
              << std::setprecision(6) << "\n"
              << "  lower              " << rep.lower << "\n"
              << "  middle (means)     " << rep.middle << "\n"
              << "  middle (quadrature)" << ' ' << rep.quadrature_middle << "\n"
              << "  upper              " << rep.upper << "\n"
              << "  middle matches     " << (rep.middle_matches ? "yes" : "NO") << "\n"
              << "  sandwich           " << (rep.sandwich_ok ? "holds" : "FAILS") << "\n";
    if (rep.x_matches_closed_form >= 0)
      std::cout << "  x = sqrt(ab)       "
                << (rep.x_matches_closed_form ? "yes" : "NO") << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

int run_means(const MeansArgs& args) {
  if (!args.check_app.empty()) return run_application(args);

  struct Row {
    std::string label;
    tb_mean_kind kind;
    double param;
  };
  std::ostringstream rl, pl;
  rl << "M_" << args.r;
  pl << "L_" << args.p;
  const Row rows[] = {{"A", TB_MEAN_ARITHMETIC, 0},
                      {"G", TB_MEAN_GEOMETRIC, 0},
                      {"H", TB_MEAN_HARMONIC, 0},
                      {"L", TB_MEAN_LOGARITHMIC, 0},
                      {"I", TB_MEAN_IDENTRIC, 0},
                      {rl.str(), TB_MEAN_POWER, args.r},
                      {pl.str(), TB_MEAN_GENLOG, args.p}};
  std::vector<double> values;
  for (const Row& row : rows) {
    double v = 0;
    check(tb_mean(row.kind, row.param, args.alpha, args.beta, &v));
    values.push_back(v);
  }
  int chain = 0;
  check(tb_mean_chain_check(args.alpha, args.beta, &chain));

  const tb_format fmt = parse_format(args.format);
  if (fmt == TB_FORMAT_JSON) {
    nlohmann::ordered_json j;
    j["alpha"] = args.alpha;
    j["beta"] = args.beta;
    nlohmann::ordered_json means;
    for (std::size_t i = 0; i < values.size(); ++i) means[rows[i].label] = values[i];
    j["means"] = means;
    j["chain_holds"] = chain != 0;
    std::cout << j.dump(2) << "\n";
  } else if (fmt == TB_FORMAT_CSV) {
    std::cout << "mean,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      std::cout << rows[i].label << ',' << real17(values[i]) << "\n";
    std::cout << "chain_holds," << (chain ? "true" : "false") << "\n";
  } else {
    std::cout << std::setprecision(6) << "means of (" << args.alpha << ", "
              << args.beta << ")\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      std::cout << "  " << std::left << std::setw(8) << rows[i].label
                << values[i] << "\n";
    std::cout << "  H <= G <= L <= I <= A: " << (chain ? "holds" : "FAILS")
              << "\n";
  }
  return chain ? kExitOk : kExitViolation;
}

// ---- sweep

struct SweepArgs {
  std::string corpus;
  std::string builtin;
  std::string out;
  unsigned jobs = 1;
  double tol = 1e-10;
  std::size_t grid = 1024;
};

int run_sweep(const SweepArgs& args) {
  tb_corpus* craw = nullptr;
  if (!args.builtin.empty())
    check(tb_corpus_builtin(args.builtin.c_str(), &craw));
  else
    check(tb_corpus_load(args.corpus.c_str(), &craw));
  Corpus corpus(craw);

  tb_analysis_options opts;
  tb_analysis_options_default(&opts);
  opts.tol = args.tol;
  opts.grid = args.grid;
  char* csv = nullptr;
  int all_ok = 0;
  check(tb_sweep(corpus.get(), &opts, args.jobs, &csv, &all_ok));
  OwnedString text(csv);
  if (args.out.empty()) {
    std::cout << text.get();
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out || !(out << text.get()))
      throw ApiError{TB_E_IO, "cannot write '" + args.out + "'"};
  }
  if (!all_ok) {
    std::cerr << "inequality violated in at least one row\n";
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided trapezoid error bounds for non-negative functions"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand(
      "bounds", "Envelope, integral sandwich and comparisons for f on [a, b]");
  cmd_bounds->add_option("--fn", bounds.fn, "f(s), e.g. \"1/s^2\"")->required();
  cmd_bounds->add_option("--a", bounds.a, "left endpoint")->required();
  cmd_bounds->add_option("--b", bounds.b, "right endpoint")->required();
  cmd_bounds->add_option("--x", bounds.x, "evaluation point or 'auto' (solve)");
  cmd_bounds->add_option("--tol", bounds.tol, "solver tolerance");
  cmd_bounds->add_option("--grid", bounds.grid, "solver scan points");
  cmd_bounds->add_option("--format", bounds.format)
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd_bounds->add_option("--jobs", bounds.jobs, "threads for the solver scan");
  cmd_bounds->add_option("--name", bounds.name, "row name for csv output");

  MeanpointArgs mp;
  auto* cmd_mp = app.add_subcommand(
      "meanpoint", "Solve F'(x) = (F(b) - F(a))/(b - a) for x in (a, b)");
  cmd_mp->add_option("--fn", mp.fn)->required();
  cmd_mp->add_option("--a", mp.a)->required();
  cmd_mp->add_option("--b", mp.b)->required();
  cmd_mp->add_option("--tol", mp.tol);
  cmd_mp->add_option("--grid", mp.grid);
  cmd_mp->add_option("--format", mp.format)
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd_mp->add_flag("--all-roots", mp.all_roots, "list every root found");
  cmd_mp->add_option("--jobs", mp.jobs);

  MeansArgs means;
  auto* cmd_means = app.add_subcommand(
      "means", "Table of means, or check an application inequality");
  cmd_means->add_option("--alpha", means.alpha);
  cmd_means->add_option("--beta", means.beta);
  cmd_means->add_option("--r", means.r, "power mean order");
  cmd_means->add_option("--p", means.p, "generalized log-mean / power order");
  cmd_means->add_option("--check-app", means.check_app,
                        "recip_sq | recip | log | power");
  cmd_means->add_option("--a", means.a);
  cmd_means->add_option("--b", means.b);
  cmd_means->add_option("--format", means.format)
      ->check(CLI::IsMember({"table", "json", "csv"}));

  SweepArgs sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "CSV over a corpus of (f, a, b)");
  auto* opt_corpus = cmd_sweep->add_option(
      "--corpus", sw.corpus, "file of 'name | expression | a | b' lines");
  auto* opt_builtin =
      cmd_sweep->add_option("--builtin", sw.builtin, "builtin corpus (paper)");
  opt_corpus->excludes(opt_builtin);
  cmd_sweep->add_option("--out", sw.out, "write CSV here instead of stdout");
  cmd_sweep->add_option("--jobs", sw.jobs, "worker threads");
  cmd_sweep->add_option("--tol", sw.tol);
  cmd_sweep->add_option("--grid", sw.grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cmd_bounds) return run_bounds(bounds);
    if (*cmd_mp) return run_meanpoint(mp);
    if (*cmd_means) return run_means(means);
    if (*cmd_sweep) {
      if (sw.corpus.empty() && sw.builtin.empty()) {
        std::cerr << "sweep: one of --corpus or --builtin is required\n";
        return kExitInput;
      }
      return run_sweep(sw);
    }
  } catch (const ApiError& e) {
    std::cerr << "error: " << tb_status_name(e.status) << ": " << e.message << "\n";
    return kExitInput;
  }
  return kExitInput;
}
