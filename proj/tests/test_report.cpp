#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "trapbound/report.hpp"

using namespace trapbound;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("analyze 1/s^2") {
  const Report r = analyze("1/s^2", 1, 2);
  CHECK(r.x_is_mvt);
  CHECK(oracle::close(r.mvt.x, std::sqrt(2.0), 1e-8));
  CHECK(!r.mvt.degenerate);
  CHECK(oracle::close(r.envelope.middle, 0.125, 1e-10));
  CHECK(oracle::close(r.envelope.lower, -0.301777, 1e-6));
  CHECK(oracle::close(r.envelope.upper, 0.426777, 1e-6));
  CHECK(r.checks.sandwich_ok);
  CHECK(r.checks.eq24_ok);
  CHECK(r.checks.delta_identity_ok);
  CHECK(!r.violation());
  CHECK(oracle::close(r.classical_trap_bound, 0.5, 1e-9));  // f'' = 6/s^4
  CHECK(r.settings.grid == kDefaultMvtGrid);
}

TEST_CASE("analyze at a fixed x") {
  AnalysisOptions opts;
  opts.x = 1.9;
  const Report r = analyze("1/s^2", 1, 2, opts);
  CHECK(!r.x_is_mvt);
  CHECK(r.mvt.x == 1.9);
  CHECK(r.mvt.residual > 1e-3);
  // Failing the sandwich away from the mean-value point is not a violation.
  CHECK(!r.violation());

  opts.x = 2.0;
  CHECK_THROWS_AS(analyze("1/s^2", 1, 2, opts), ArgumentError);
}

TEST_CASE("analyze errors") {
  CHECK_THROWS_AS(analyze("1/s", 0, 1), DomainError);
  CHECK_THROWS_AS(analyze("s-10", 0, 1), PreconditionError);
  CHECK_THROWS_AS(analyze("2*+s", 0, 1), SyntaxError);
  CHECK_THROWS_AS(analyze("s", 1, 1), ArgumentError);
}

TEST_CASE("abs gives a NaN classical bound") {
  const Report r = analyze("abs(s)+1", -1, 2);
  CHECK(std::isnan(r.classical_trap_bound));
  const std::string js = to_json(r);
  CHECK(js.find("\"classical_trap_bound\": null") != std::string::npos);
  CHECK(std::isnan(report_from_json(js).classical_trap_bound));
}

TEST_CASE("violations") {
  Report r;
  r.checks = {true, true, true};
  CHECK(!r.violation());
  r.checks.sandwich_ok = false;
  CHECK(r.violation());
  CHECK(r.violations().size() == 1);
  r.mvt.degenerate = true;
  CHECK(!r.violation());
  r.mvt.degenerate = false;
  r.x_is_mvt = false;
  CHECK(!r.violation());
  r.checks.eq24_ok = false;
  r.checks.delta_identity_ok = false;
  CHECK(r.violations().size() == 2);
}

TEST_CASE("json schema") {
  const Report r = analyze("1/s^2", 1, 2);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j.at("function") == "1/s^2");
  CHECK(j.at("interval").at("a") == 1.0);
  for (const char* k : {"x", "residual", "degenerate", "roots", "source"})
    CHECK(j.at("mvt").contains(k));
  for (const char* k : {"M", "m"}) CHECK(j.at("geometry").contains(k));
  for (const char* k : {"lower", "middle", "upper", "delta"}) CHECK(j.at("envelope").contains(k));
  for (const char* k : {"lower_int", "upper_int", "integral"}) CHECK(j.at("alt_form").contains(k));
  CHECK(j.contains("psi"));
  CHECK(j.contains("classical_trap_bound"));
  for (const char* k : {"in_class_F", "value", "discrepancy"}) CHECK(j.at("simpson").contains(k));
  for (const char* k : {"sandwich_ok", "eq24_ok", "delta_identity_ok"})
    CHECK(j.at("checks").contains(k));
  CHECK(j.at("mvt").at("source") == "mvt");
}

TEST_CASE("json round trip") {
  for (const char* text : {"1/s^2", "exp(s)", "s^2", "ln(s)+1"}) {
    CAPTURE(text);
    const Report r = analyze(text, 1, 2);
    const std::string once = to_json(r);
    const Report back = report_from_json(once);
    CHECK(to_json(back) == once);
    CHECK(back.envelope.lower == r.envelope.lower);
    CHECK(back.mvt.x == r.mvt.x);
    CHECK(back.mvt.roots == r.mvt.roots);
    CHECK(back.simpson.in_class_F == r.simpson.in_class_F);
  }
  CHECK_THROWS_AS(report_from_json("{"), ArgumentError);
  CHECK_THROWS_AS(report_from_json("{\"function\": \"s\"}"), ArgumentError);
}

TEST_CASE("csv row") {
  CHECK(split(std::string(kCsvHeader), ',').size() == 15);
  const Report r = analyze("1/s^2", 1, 2);
  const std::string row = to_csv_row(r, "recip_sq");
  const auto fields = split(row, ',');
  REQUIRE(fields.size() == 15);
  CHECK(fields[0] == "recip_sq");
  CHECK(fields[1] == "1/s^2");
  CHECK(fields[2] == "1");
  CHECK(std::stod(fields[4]) == r.mvt.x);
  CHECK(std::stod(fields[9]) == r.envelope.middle);
  CHECK(fields[13] == "false");
  CHECK(fields[14] == "true");
  CHECK(format_real(0.1) == "0.10000000000000001");
  // Commas in a name are quoted.
  CHECK(to_csv_row(r, "a,b").rfind("\"a,b\",", 0) == 0);
}

TEST_CASE("table carries the same numbers") {
  const Report r = analyze("1/s^2", 1, 2);
  const std::string t = to_table(r);
  CHECK(t.find("1/s^2 on [1, 2]") != std::string::npos);
  CHECK(t.find("1.41421") != std::string::npos);
  CHECK(t.find("-0.301777") != std::string::npos);
  CHECK(t.find("0.125") != std::string::npos);
  CHECK(t.find("0.426777") != std::string::npos);
}

TEST_CASE("parse_corpus") {
  const auto c = parse_corpus("# header\n\nrecip | 1/s | 1 | 2\n  sq|s^2|0|1 # trailing\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].name == "recip");
  CHECK(c[0].expr == "1/s");
  CHECK(c[0].a == 1);
  CHECK(c[1].name == "sq");
  CHECK(c[1].b == 1);
  CHECK_THROWS_AS(parse_corpus(""), ArgumentError);
  CHECK_THROWS_AS(parse_corpus("# only comments\n"), ArgumentError);
  CHECK_THROWS_AS(parse_corpus("x | s | 1\n"), ArgumentError);
  CHECK_THROWS_AS(parse_corpus("x | s | one | 2\n"), ArgumentError);
  CHECK_THROWS_AS(load_corpus_file("/nonexistent/corpus.txt"), IoError);
}

TEST_CASE("builtin corpus") {
  const auto c = builtin_corpus("paper");
  REQUIRE(c.has_value());
  CHECK(c->size() >= 6);
  CHECK(!builtin_corpus("nope").has_value());
  const SweepResult s = sweep(*c, {}, 2);
  CHECK(s.all_ok);
  const auto lines = split(s.csv, '\n');
  CHECK(lines.front() == kCsvHeader);
  std::size_t rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ++rows;
    CHECK(split(lines[i], ',').back() == "true");
  }
  CHECK(rows == c->size());
}

TEST_CASE("sweep output does not depend on the thread count") {
  const auto c = *builtin_corpus("paper");
  const SweepResult one = sweep(c, {}, 1);
  const SweepResult eight = sweep(c, {}, 8);
  CHECK(one.csv == eight.csv);
  CHECK(one.all_ok == eight.all_ok);
}

TEST_CASE("sweep names the entry that failed") {
  const auto c = parse_corpus("good | s^2 | 0 | 1\nbad | s-10 | 0 | 1\n");
  try {
    sweep(c, {}, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
    CHECK(std::string(e.what()).find("'bad'") != std::string::npos);
  }
}
