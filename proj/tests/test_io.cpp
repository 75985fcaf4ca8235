#include <doctest.h>

#include <sstream>

#include "premise/io.hpp"

using namespace premise;

TEST_CASE("data files parse labels, comments, and duplicate tokens") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "+\thow many ducks many\n"
      "-\tducks eating\n");
  auto db = load_data(in);
  CHECK(db.size() == 2);
  CHECK(db.size(Part::Pos) == 1);
  CHECK(db.transaction(0).items.size() == 3);  // 'many' deduplicated
  CHECK(db.vocab().size() == 4);
}

TEST_CASE("data file round trip is canonical") {
  std::istringstream in("+\tb a\n-\tc a\n");
  auto db = load_data(in);
  std::ostringstream out;
  write_data(out, db);
  // tokens re-serialize in vocabulary (first-appearance) order: b < a < c
  CHECK(out.str() == "+\tb a\n-\ta c\n");
  // a second round trip is byte-identical
  std::istringstream in2(out.str());
  std::ostringstream out2;
  write_data(out2, load_data(in2));
  CHECK(out2.str() == out.str());
}

TEST_CASE("data file errors carry line numbers") {
  std::istringstream missing_tab("+ a b\n");
  CHECK_THROWS_AS(load_data(missing_tab), FormatError);
  std::istringstream bad_label("x\ta b\n");
  try {
    load_data(bad_label);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 1);
  }
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(load_data(empty), DomainError);
  std::istringstream single_label("+\ta\n+\tb\n");
  CHECK_THROWS_AS(load_data(single_label, {.require_both_labels = true}), DomainError);
  CHECK_NOTHROW(([&] {
    std::istringstream ok("+\ta\n+\tb\n");
    load_data(ok);
  })());
}

TEST_CASE("truth format parses clause groups") {
  std::istringstream in(
      "# premise-truth v1\n"
      "what & color|colour\n"
      "how & many\n");
  auto pats = load_truth(in);
  REQUIRE(pats.size() == 2);
  CHECK(pats[0].clauses == std::vector<std::vector<std::string>>{{"what"}, {"color", "colour"}});
  CHECK(pats[1].clauses == std::vector<std::vector<std::string>>{{"how"}, {"many"}});
  std::istringstream bad("a & & b\n");
  CHECK_THROWS_AS(load_truth(bad), FormatError);
}

TEST_CASE("pattern report round trips exactly") {
  Report report;
  report.run_digest = "00ff00ff00ff00ff";
  report.baseline_bits = 1234.5678901234;
  report.final_bits = 1100.000000123;
  report.rounds = 2;
  ReportEntry e1;
  e1.side = "+";
  e1.pattern.clauses = {{"how"}, {"many"}};
  e1.support_neg = 3;
  e1.support_pos = 141;
  e1.gain_bits = -512.3456789012345;
  e1.p_value = 5.4e-06;
  e1.round = 1;
  ReportEntry e2;
  e2.side = "-";
  e2.pattern.clauses = {{"color", "colour"}, {"what"}};
  e2.support_neg = 99;
  e2.support_pos = 1;
  e2.gain_bits = -42.0;
  e2.p_value = 0.0012345;
  e2.round = 2;
  report.entries = {e1, e2};

  std::ostringstream out;
  write_report(out, report);
  std::istringstream in(out.str());
  Report parsed = load_report(in);
  CHECK(parsed.run_digest == report.run_digest);
  CHECK(parsed.baseline_bits == report.baseline_bits);
  CHECK(parsed.final_bits == report.final_bits);
  CHECK(parsed.rounds == report.rounds);
  REQUIRE(parsed.entries.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(parsed.entries[i].side == report.entries[i].side);
    CHECK(parsed.entries[i].pattern.clauses == report.entries[i].pattern.clauses);
    CHECK(parsed.entries[i].support_neg == report.entries[i].support_neg);
    CHECK(parsed.entries[i].support_pos == report.entries[i].support_pos);
    CHECK(parsed.entries[i].gain_bits == report.entries[i].gain_bits);
    CHECK(parsed.entries[i].p_value == report.entries[i].p_value);
    CHECK(parsed.entries[i].round == report.entries[i].round);
  }

  // writing the parsed report again is byte-identical
  std::ostringstream out2;
  write_report(out2, parsed);
  CHECK(out2.str() == out.str());
}

TEST_CASE("format_double is a shortest exact rendering") {
  for (double v : {0.1, 1.0 / 3.0, 5.4e-06, -512.3456789012345, 0.0, 1e300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(42) == "42");
}
