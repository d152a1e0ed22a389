#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corrint/compare.hpp"
#include "corrint/paper_table.hpp"
#include "corrint/series_io.hpp"

using namespace corrint;

namespace {

IndicatorSeries series_of(std::vector<double> v, std::string label = "s") {
  IndicatorSeries s;
  s.mode_label = std::move(label);
  for (std::size_t idx = 0; idx < v.size(); ++idx) s.times.push_back(idx + 1);
  s.v_agg = std::move(v);
  return s;
}

}  // namespace

TEST_CASE("compare_modes of identical series is all zero") {
  const auto s = series_of({3.0, 4.0, 5.0});
  const auto cmp = compare_modes(s, s);
  for (const double d : cmp.delta) CHECK(d == 0.0);
  CHECK(cmp.delta_total == 0.0);
}

TEST_CASE("compare_modes picks up a constant shift") {
  const auto base = series_of({3.0, 4.0, 5.0});
  const auto ctrl = series_of({4.0, 5.0, 6.0});
  const auto cmp = compare_modes(base, ctrl);
  for (const double d : cmp.delta) CHECK(d == 1.0);
  CHECK(cmp.delta_total == 3.0);
}

TEST_CASE("compare_modes on the reference series reproduces the published effect") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  CHECK(std::abs(cmp.delta_total - 19.96) <= 0.05);
  CHECK(std::abs(cmp.base_total - 5069.93) <= 0.05);
  CHECK(std::abs(cmp.ctrl_total - 5089.90) <= 0.05);
}

TEST_CASE("compare_modes rejects diverging axes") {
  const auto a = series_of({1.0, 2.0});
  auto b = series_of({1.0, 2.0});
  b.times[1] = 7;
  try {
    compare_modes(a, b);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  const auto shorter = series_of({1.0});
  CHECK_THROWS_AS(compare_modes(a, shorter), Error);
}

TEST_CASE("delta is antisymmetric") {
  const auto [basic, strat] = paper_fixture_series();
  const auto fwd = compare_modes(basic, strat);
  const auto rev = compare_modes(strat, basic);
  REQUIRE(fwd.delta.size() == rev.delta.size());
  for (std::size_t idx = 0; idx < fwd.delta.size(); ++idx) {
    REQUIRE(fwd.delta[idx] == -rev.delta[idx]);
  }
}

TEST_CASE("totals are consistent") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  CHECK(cmp.delta_total ==
        doctest::Approx(cmp.ctrl_total - cmp.base_total).epsilon(1e-9));
}

TEST_CASE("verify_paper_table passes every check") {
  const auto report = verify_paper_table();
  CHECK(report.all_pass);
  REQUIRE(report.row_checks.size() == 57);
  REQUIRE(report.total_checks.size() == 4);
  for (const auto& c : report.row_checks) CHECK(c.pass);
  for (const auto& c : report.total_checks) CHECK(c.pass);
}

TEST_CASE("verify_paper_table spot rows") {
  const auto table = paper_table();
  REQUIRE(table.size() == 57);
  // row t=1: 86.3361 - 87.3361 = -1.0000
  CHECK(table[0].v_strat - table[0].v_basic == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(table[0].delta == -1.0);
  // row t=22: 150.9962 - 150.0201 = 0.9761
  CHECK(table[21].t == 22);
  CHECK(std::abs((table[21].v_strat - table[21].v_basic) - 0.9761) <= 2e-4);
}

TEST_CASE("verify_paper_table flags corrupted fixtures") {
  std::vector<PaperTableRow> rows(paper_table().begin(), paper_table().end());
  rows[10].delta += 0.01;
  const auto report = verify_paper_table(rows);
  CHECK_FALSE(report.all_pass);
  CHECK_FALSE(report.row_checks[10].pass);
}

TEST_CASE("csv report matches the published first row") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  const auto csv = render_report(cmp, ReportFormat::Csv);
  CHECK(csv.rfind("t,v_basic,v_strat,delta\n1,87.3361,86.3361,-1.0000\n", 0) == 0);
}

TEST_CASE("csv report round-trips the fixture at 4 dp") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  const auto csv = render_report(cmp, ReportFormat::Csv);

  // parse the rendered rows back and re-render: identical bytes
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  IndicatorSeries b2, c2;
  b2.mode_label = basic.mode_label;
  c2.mode_label = strat.mode_label;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    b2.times.push_back(std::stoul(field));
    c2.times.push_back(b2.times.back());
    std::getline(row, field, ',');
    b2.v_agg.push_back(std::stod(field));
    std::getline(row, field, ',');
    c2.v_agg.push_back(std::stod(field));
  }
  const auto csv2 = render_report(compare_modes(b2, c2), ReportFormat::Csv);
  CHECK(csv2 == csv);
}

TEST_CASE("json report carries rows and totals") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  const auto text = render_report(cmp, ReportFormat::Json);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("mode_basic") == "basic_mode");
  CHECK(doc.at("rows").size() == 57);
  CHECK(doc.at("rows")[0].at("v_basic") == 87.3361);
  CHECK(doc.at("totals").contains("delta"));
  // totals carry the recomputed differences, not the published delta column
  CHECK(std::abs(doc.at("totals").at("delta").get<double>() - 19.9633) <= 1e-9);
}

TEST_CASE("svg report is deterministic with coincident polylines for equal series") {
  const auto s = series_of({3.0, 4.0, 5.0}, "basic_mode");
  auto s2 = s;
  s2.mode_label = "strat_plan";
  const auto cmp = compare_modes(s, s2);
  const auto svg1 = render_report(cmp, ReportFormat::Svg);
  const auto svg2 = render_report(cmp, ReportFormat::Svg);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("viewBox=\"0 0 960 480\"") != std::string::npos);

  // both polylines carry the identical point list
  const std::string needle = "points=\"";
  const auto first = svg1.find(needle);
  REQUIRE(first != std::string::npos);
  const auto first_end = svg1.find('"', first + needle.size());
  const std::string pts1 = svg1.substr(first + needle.size(), first_end - first - needle.size());
  const auto second = svg1.find(needle, first_end);
  REQUIRE(second != std::string::npos);
  const auto second_end = svg1.find('"', second + needle.size());
  const std::string pts2 = svg1.substr(second + needle.size(), second_end - second - needle.size());
  CHECK(pts1 == pts2);
}

TEST_CASE("svg of the reference comparison stays stable across renders") {
  const auto [basic, strat] = paper_fixture_series();
  const auto cmp = compare_modes(basic, strat);
  CHECK(render_report(cmp, ReportFormat::Svg) == render_report(cmp, ReportFormat::Svg));
}

TEST_CASE("render_report rejects unknown formats and empty input") {
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
  ModeComparison empty;
  CHECK_THROWS_AS(render_report(empty, ReportFormat::Csv), Error);
}

TEST_CASE("series io round trip") {
  IndicatorSeries s;
  s.mode_label = "m";
  s.n = 2;
  s.times = {6, 7};
  s.g = {{1.5, 2.5}, {1.25, 2.0}};
  s.v_agg = {4.0, 3.25};

  std::ostringstream csv;
  write_series_csv(s, csv, std::vector<ParamMeta>{{"a", "a", ParamKind::Expense},
                                                  {"b", "b", ParamKind::Expense}});
  std::istringstream in(csv.str());
  const auto back = read_series_csv(in, "m");
  CHECK(back.times == s.times);
  CHECK(back.v_agg == s.v_agg);
  CHECK(back.g == s.g);

  std::ostringstream js;
  write_series_json(s, js, true);
  std::istringstream jin(js.str());
  const auto jback = read_series_json(jin);
  CHECK(jback.times == s.times);
  CHECK(jback.v_agg == s.v_agg);
  CHECK(jback.g == s.g);
  CHECK(jback.mode_label == "m");
}
