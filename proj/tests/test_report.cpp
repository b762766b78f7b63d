#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "teleqos/report.hpp"
#include "teleqos/units.hpp"

using namespace teleqos;

namespace {

const std::string kHeader =
    "control,nack,dmin_a_ms,dmin_s_ms,dmax_a_ms,dmax_s_ms,jit_a_ms,jit_s_ms,single_loss_flag";

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST(Report, EmptyValidationIsHeaderOnly) {
  std::ostringstream out;
  emit_report(out, std::span<const ValidationRow>{}, ReportFormat::Csv);
  EXPECT_EQ(out.str(), kHeader + "\n");
}

TEST(Report, RateSweepTableShape) {
  const ScenarioConfig base = baseline_scenario();
  std::vector<ValidationRow> rows;
  for (double r : {1.096, 2.0, 3.0, 4.0, 5.0, 5.5}) {
    rows.push_back(analytic_row(base, SweepVar::RateTotal, r, 1));
  }
  std::ostringstream out;
  emit_report(out, rows, ReportFormat::Csv);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 7u);
  EXPECT_EQ(l[0], kHeader);
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_EQ(columns(l[i]), 9u) << l[i];
  EXPECT_EQ(l[3].substr(0, 8), "3.000,1,");
  EXPECT_NE(l[3].find(",26.667,"), std::string::npos);
  EXPECT_EQ(l[6].back(), '0');  // 5.5 Mbps is past the single-loss range
  EXPECT_EQ(l[1].back(), '1');
}

TEST(Report, TextTableHasOneLinePerRow) {
  const ScenarioConfig base = baseline_scenario();
  std::vector<ValidationRow> rows{analytic_row(base, SweepVar::RateTotal, 2.0, 1),
                                  analytic_row(base, SweepVar::RateTotal, 2.0, 2)};
  std::ostringstream out;
  emit_report(out, rows, ReportFormat::Text);
  const auto l = lines(out.str());
  ASSERT_GE(l.size(), 4u);
  EXPECT_NE(l[0].find("control"), std::string::npos);
}

TEST(Report, ComplianceCsvEndsWithOverall) {
  const ScenarioConfig c = baseline_scenario();
  const ComplianceReport r = qos_check(c.network_params(), c.haptic_spec(), c.qos, c.mux, 1);
  std::ostringstream out;
  emit_report(out, r, ReportFormat::Csv);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 8u);
  EXPECT_EQ(l[0], "condition,verdict,value,limit,kind,detail");
  EXPECT_EQ(l[2].substr(0, 18), "haptic_delay,PASS,");
  EXPECT_EQ(l.back(), "overall,PASS,,,,");
}

TEST(Report, RunSummaryListsEveryFlow) {
  const Simulator sim(baseline_scenario());
  const RunResult res = sim.run(2.0, 0.5);
  std::ostringstream out;
  emit_run_summary(out, sim, res, ReportFormat::Csv);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "flow,kind,sent_total,delivered,dropped,loss_pct,dmin_ms,dmax_ms,jit_ms");
  EXPECT_EQ(l[2].substr(0, 14), "haptic,haptic,");
}

TEST(Report, RateSeriesCsv) {
  RateSeries s;
  s.time = {0.1, 0.2};
  s.rate = {1000.0, 2000.0};
  s.peak = 2000.0;
  s.mean = 1500.0;
  s.window = 0.1;
  std::ostringstream out;
  emit_rate_series(out, s, ReportFormat::Csv);
  EXPECT_EQ(out.str(), "time_s,rate_kbps\n0.100,8.000\n0.200,16.000\n");
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(parse_report_format("text"), ReportFormat::Text);
  EXPECT_THROW(parse_report_format("json"), std::invalid_argument);
}
