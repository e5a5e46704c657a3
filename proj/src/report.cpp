#include "trapbound/report.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "trapbound/bounds.hpp"

namespace trapbound {

bool Report::violation() const { return !violations().empty(); }

std::vector<std::string> Report::violations() const {
  std::vector<std::string> out;
  if (x_is_mvt && !mvt.degenerate && !checks.sandwich_ok)
    out.push_back("lower <= middle <= upper fails at the mean-value point");
  if (!checks.eq24_ok)
    out.push_back("intermediate sandwich ∫f/M² <= ... <= ∫f/m² fails");
  if (!checks.delta_identity_ok)
    out.push_back("gap identity upper - lower = Δ fails");
  return out;
}

Report analyze(std::string_view function_text, double a, double b,
               const AnalysisOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const FunctionDef f = FunctionDef::from_text(function_text);
  const Interval iv(a, b);

  Report r;
  r.function = std::string(function_text);
  r.a = a;
  r.b = b;
  r.settings.tol = opts.tol;
  r.settings.quad_tol = opts.quad_tol;
  r.settings.grid = opts.grid;

  if (opts.x) {
    require_nonnegative(f, iv);
    if (!iv.interior(*opts.x)) geometry(iv, *opts.x);  // throws
    const double qtol = inner_quad_tol(opts.tol);
    r.x_is_mvt = false;
    r.mvt.x = *opts.x;
    r.mvt.residual =
        std::fabs(aux_F_prime(f, iv, *opts.x, qtol) - secant_slope(f, iv, qtol));
  } else {
    const MeanValuePoint p =
        solve_mvt(f, iv, SolveOptions{opts.grid, opts.tol, opts.jobs});
    r.mvt.x = p.x;
    r.mvt.residual = p.residual;
    r.mvt.degenerate = p.degenerate;
    r.mvt.roots = p.roots;
  }
  const double x = r.mvt.x;

  const Envelope env = envelope(f, iv, x, r.x_is_mvt, opts.quad_tol);
  r.geometry.M = env.geometry.M;
  r.geometry.m = env.geometry.m;
  r.envelope.lower = env.lower;
  r.envelope.middle = env.middle;
  r.envelope.upper = env.upper;
  r.envelope.delta = env.delta;

  const AltFormBounds alt = alt_form_bounds(f, iv, x, opts.quad_tol);
  r.alt_form.lower_int = alt.lower_int;
  r.alt_form.upper_int = alt.upper_int;
  r.alt_form.integral = alt.integral;
  r.psi = psi(f, iv, x).value;

  try {
    r.classical_trap_bound = classical_trap_bound(f, iv);
  } catch (const NotDifferentiableError&) {
    r.classical_trap_bound = NAN;
  }

  const SimpsonCheck sc = simpson_exactness(f, iv, opts.simpson_tol, opts.quad_tol);
  r.simpson.in_class_F = sc.in_class_F;
  r.simpson.value = sc.simpson_value;
  r.simpson.discrepancy = sc.discrepancy;

  r.checks.sandwich_ok = env.sandwich_holds();
  r.checks.eq24_ok = intermediate_sandwich(f, iv, x, opts.quad_tol).holds;
  const double delta = gap_delta(f, iv, x, opts.quad_tol);
  r.checks.delta_identity_ok =
      std::fabs(delta - env.delta) <= 1e-9 * std::fmax(1.0, std::fabs(delta));

  r.timing_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using ojson = nlohmann::ordered_json;

double num(const ojson& j) {
  return j.is_null() ? NAN : j.get<double>();
}

}  // namespace

std::string to_json(const Report& r, int indent) {
  ojson j;
  j["function"] = r.function;
  j["interval"] = {{"a", r.a}, {"b", r.b}};
  j["mvt"] = {{"x", r.mvt.x},
              {"residual", r.mvt.residual},
              {"degenerate", r.mvt.degenerate},
              {"roots", r.mvt.roots},
              {"source", r.x_is_mvt ? "mvt" : "user"}};
  j["geometry"] = {{"M", r.geometry.M}, {"m", r.geometry.m}};
  j["envelope"] = {{"lower", r.envelope.lower},
                   {"middle", r.envelope.middle},
                   {"upper", r.envelope.upper},
                   {"delta", r.envelope.delta}};
  j["alt_form"] = {{"lower_int", r.alt_form.lower_int},
                   {"upper_int", r.alt_form.upper_int},
                   {"integral", r.alt_form.integral}};
  j["psi"] = r.psi;
  // nlohmann writes non-finite numbers as null.
  j["classical_trap_bound"] = r.classical_trap_bound;
  j["simpson"] = {{"in_class_F", r.simpson.in_class_F},
                  {"value", r.simpson.value},
                  {"discrepancy", r.simpson.discrepancy}};
  j["checks"] = {{"sandwich_ok", r.checks.sandwich_ok},
                 {"eq24_ok", r.checks.eq24_ok},
                 {"delta_identity_ok", r.checks.delta_identity_ok}};
  j["settings"] = {{"tol", r.settings.tol},
                   {"quad_tol", r.settings.quad_tol},
                   {"grid", r.settings.grid}};
  j["timing_ms"] = r.timing_ms;
  return j.dump(indent);
}

Report report_from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
    Report r;
    r.function = j.at("function").get<std::string>();
    r.a = num(j.at("interval").at("a"));
    r.b = num(j.at("interval").at("b"));
    const auto& mvt = j.at("mvt");
    r.mvt.x = num(mvt.at("x"));
    r.mvt.residual = num(mvt.at("residual"));
    r.mvt.degenerate = mvt.at("degenerate").get<bool>();
    r.mvt.roots = mvt.at("roots").get<std::vector<double>>();
    r.x_is_mvt = mvt.value("source", std::string("mvt")) == "mvt";
    r.geometry.M = num(j.at("geometry").at("M"));
    r.geometry.m = num(j.at("geometry").at("m"));
    const auto& env = j.at("envelope");
    r.envelope.lower = num(env.at("lower"));
    r.envelope.middle = num(env.at("middle"));
    r.envelope.upper = num(env.at("upper"));
    r.envelope.delta = num(env.at("delta"));
    const auto& alt = j.at("alt_form");
    r.alt_form.lower_int = num(alt.at("lower_int"));
    r.alt_form.upper_int = num(alt.at("upper_int"));
    r.alt_form.integral = num(alt.at("integral"));
    r.psi = num(j.at("psi"));
    r.classical_trap_bound = num(j.at("classical_trap_bound"));
    const auto& simp = j.at("simpson");
    r.simpson.in_class_F = simp.at("in_class_F").get<bool>();
    r.simpson.value = num(simp.at("value"));
    r.simpson.discrepancy = num(simp.at("discrepancy"));
    const auto& chk = j.at("checks");
    r.checks.sandwich_ok = chk.at("sandwich_ok").get<bool>();
    r.checks.eq24_ok = chk.at("eq24_ok").get<bool>();
    r.checks.delta_identity_ok = chk.at("delta_identity_ok").get<bool>();
    if (j.contains("settings")) {
      const auto& s = j.at("settings");
      r.settings.tol = num(s.at("tol"));
      r.settings.quad_tol = num(s.at("quad_tol"));
      r.settings.grid = s.at("grid").get<std::size_t>();
    }
    if (j.contains("timing_ms")) r.timing_ms = num(j.at("timing_ms"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed report JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV and table

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_csv_row(const Report& r, std::string_view name) {
  std::string out;
  auto put = [&out](const std::string& field) {
    if (!out.empty()) out += ',';
    out += field;
  };
  put(csv_field(name));
  put(csv_field(r.function));
  put(format_real(r.a));
  put(format_real(r.b));
  put(format_real(r.mvt.x));
  put(yes_no(r.mvt.degenerate));
  put(format_real(r.geometry.M));
  put(format_real(r.geometry.m));
  put(format_real(r.envelope.lower));
  put(format_real(r.envelope.middle));
  put(format_real(r.envelope.upper));
  put(format_real(r.envelope.delta));
  put(format_real(r.classical_trap_bound));
  put(yes_no(r.simpson.in_class_F));
  put(yes_no(r.checks.sandwich_ok));
  return out;
}

std::string to_table(const Report& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  auto row = [&os](std::string_view label, const auto& value) {
    os << "  " << std::left << std::setw(24) << label << value << '\n';
  };
  os << "f(s) = " << r.function << " on [" << r.a << ", " << r.b << "]\n";
  os << "mean-value point\n";
  row("x", r.mvt.x);
  row("source", r.x_is_mvt ? "solved" : "user");
  row("residual", r.mvt.residual);
  row("degenerate", yes_no(r.mvt.degenerate));
  if (r.mvt.roots.size() > 1) row("roots found", r.mvt.roots.size());
  row("M", r.geometry.M);
  row("m", r.geometry.m);
  os << "trapezoid error envelope\n";
  row("lower", r.envelope.lower);
  row("middle", r.envelope.middle);
  row("upper", r.envelope.upper);
  row("delta", r.envelope.delta);
  os << "integral sandwich\n";
  row("lower_int", r.alt_form.lower_int);
  row("integral", r.alt_form.integral);
  row("upper_int", r.alt_form.upper_int);
  row("psi", r.psi);
  os << "comparison\n";
  row("classical trap bound", r.classical_trap_bound);
  row("simpson value", r.simpson.value);
  row("simpson discrepancy", r.simpson.discrepancy);
  row("midpoint class", yes_no(r.simpson.in_class_F));
  os << "checks\n";
  row("sandwich", yes_no(r.checks.sandwich_ok));
  row("intermediate sandwich", yes_no(r.checks.eq24_ok));
  row("gap identity", yes_no(r.checks.delta_identity_ok));
  return os.str();
}

// ---------------------------------------------------------------------------
// Corpus and sweep

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ArgumentError("corpus line " + std::to_string(line) +
                        ": expected a real number, got '" + s + "'");
  return v;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t bar = line.find('|', start);
      fields.push_back(trim(line.substr(start, bar == line.npos ? line.npos : bar - start)));
      if (bar == line.npos) break;
      start = bar + 1;
    }
    if (fields.size() != 4)
      throw ArgumentError("corpus line " + std::to_string(line_no) +
                          ": expected 'name | expression | a | b'");
    out.push_back(CorpusEntry{fields[0], fields[1],
                              parse_real(fields[2], line_no),
                              parse_real(fields[3], line_no)});
  }
  if (out.empty()) throw ArgumentError("corpus is empty");
  return out;
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

std::optional<std::vector<CorpusEntry>> builtin_corpus(std::string_view name) {
  if (name == "paper") {
    return std::vector<CorpusEntry>{
        {"recip_sq", "1/s^2", 1.0, 2.0},
        {"recip", "1/s", 1.0, 2.0},
        {"log", "ln(s)", 1.0, 2.718281828459045},
        {"power_2", "s^2", 1.0, 2.0},
        {"power_3", "s^3", 1.0, 2.0},
        {"power_0.5", "s^0.5", 1.0, 2.0},
        {"exp", "exp(s)", 1.0, 2.0},
    };
  }
  return std::nullopt;
}

SweepResult sweep(const std::vector<CorpusEntry>& corpus,
                  const AnalysisOptions& opts, unsigned jobs) {
  const std::size_t n = corpus.size();
  std::vector<Report> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        rows[i] = analyze(corpus[i].expr, corpus[i].a, corpus[i].b, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "corpus entry '" + corpus[i].name + "': " + e.what());
    }
  }

  SweepResult out;
  out.csv = std::string(kCsvHeader) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out.csv += to_csv_row(rows[i], corpus[i].name);
    out.csv += '\n';
    if (rows[i].violation()) out.all_ok = false;
  }
  return out;
}

}  // namespace trapbound
