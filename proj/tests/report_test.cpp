#include <fairaudit/errors.hpp>
#include <fairaudit/report.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fairaudit {
namespace {

using nlohmann::json;

PopulationStats point(GroupConfusion a, GroupConfusion b) { return stats_from_counts(a, b); }

const json& measure(const json& doc, const std::string& name) {
  for (const auto& m : doc.at("measures")) {
    if (m.at("measure") == name) return m;
  }
  throw std::runtime_error("measure missing: " + name);
}

TEST(EmitReport, JsonVerdictsForRunningExample) {
  const auto a = diagnose(point({600, 1400, 1200, 2800}, {60, 140, 540, 1260}));
  auto doc = json::parse(emit_report(a.report, &a, OutputFormat::Json));
  EXPECT_EQ(doc.at("schema_version"), 1);
  EXPECT_EQ(doc.at("verdict"), "jointly_satisfied_on_chance_line");

  const auto b = diagnose(point({1400, 600, 1200, 2800}, {140, 60, 540, 1260}));
  doc = json::parse(emit_report(b.report, &b, OutputFormat::Json));
  EXPECT_EQ(doc.at("verdict"), "incompatible");
  EXPECT_EQ(measure(doc, "statistical_parity").at("gap").at("exact"), "7/75");
  EXPECT_EQ(doc.at("diagnosis").at("compatibility").at("parity_gap").at("exact"), "7/75");

  const auto c = diagnose(point({1400, 600, 400, 3600}, {140, 60, 460, 1340}));
  doc = json::parse(emit_report(c.report, &c, OutputFormat::Json));
  EXPECT_EQ(doc.at("verdict"), "equalized_odds_not_met");
  EXPECT_EQ(doc.at("diagnosis").at("failing_equalities"), json::array({"predictive_equality"}));
  EXPECT_FALSE(measure(doc, "predictive_equality").at("satisfied").get<bool>());
}

TEST(EmitReport, AuditVerdictWithoutDiagnosis) {
  const auto r = full_report(point({600, 1400, 1200, 2800}, {60, 140, 540, 1260}));
  EXPECT_EQ(json::parse(emit_report(r, nullptr, OutputFormat::Json)).at("verdict"), "satisfied");
  const auto text = emit_report(r, nullptr, OutputFormat::Text);
  EXPECT_NE(text.find("verdict: satisfied"), std::string::npos);
  EXPECT_THROW(emit_report(r, nullptr, OutputFormat::Svg), Error);
}

TEST(EmitReport, UndefinedRatesSerializeAsNull) {
  const auto r = full_report(point({0, 0, 2, 3}, {1, 1, 1, 1}));
  const auto doc = json::parse(emit_report(r, nullptr, OutputFormat::Json));
  EXPECT_TRUE(doc.at("stats").at("groups").at(0).at("tpr").is_null());
  const auto& eo = measure(doc, "equal_opportunity");
  EXPECT_TRUE(eo.at("gap").is_null());
  EXPECT_FALSE(eo.at("satisfied").get<bool>());
  EXPECT_TRUE(eo.contains("error"));
}

// Re-parse the JSON, rebuild stats from the embedded counts and recompute:
// every gap matches the serialized exact value.
TEST(EmitReport, JsonReparsesToIdenticalGaps) {
  const std::vector<std::array<GroupConfusion, 2>> cases{
      {GroupConfusion{1400, 600, 400, 3600}, GroupConfusion{140, 60, 460, 1340}},
      {GroupConfusion{3, 1, 4, 1}, GroupConfusion{5, 9, 2, 6}},
      {GroupConfusion{0, 0, 7, 2}, GroupConfusion{1, 8, 2, 8}},
  };
  for (const auto& [c0, c1] : cases) {
    const auto r = full_report(stats_from_counts(c0, c1));
    const auto doc = json::parse(emit_report(r, nullptr, OutputFormat::Json));
    std::array<GroupConfusion, 2> counts;
    for (std::size_t g = 0; g < 2; ++g) {
      const auto& jc = doc.at("stats").at("groups").at(g).at("counts");
      counts[g] = {jc.at("tp"), jc.at("fn"), jc.at("fp"), jc.at("tn")};
    }
    const auto again = full_report(stats_from_counts(counts[0], counts[1]),
                                   parse_rational(doc.at("tolerance").at("exact").get<std::string>()));
    for (const auto& g : again.measures) {
      const auto& jg = measure(doc, std::string(measure_name(g.measure)));
      if (g.gap) {
        EXPECT_EQ(parse_rational(jg.at("gap").at("exact").get<std::string>()), *g.gap);
        EXPECT_EQ(jg.at("gap").at("decimal").get<double>(), to_double(*g.gap));
      } else {
        EXPECT_TRUE(jg.at("gap").is_null());
      }
      EXPECT_EQ(jg.at("satisfied").get<bool>(), g.satisfied);
    }
  }
}

TEST(EmitTradeoff, JsonPoints) {
  const RocCurve roc({{0, 0}, {Rational(1, 10), Rational(7, 10)}, {1, 1}});
  const auto r = select_operating_points(roc, roc, Rational(1, 3), Rational(1, 10),
                                         EnforceParity{Rational(3, 10)});
  const auto doc = json::parse(emit_tradeoff(r, OutputFormat::Json));
  EXPECT_EQ(doc.at("scenario"), "case_ii");
  EXPECT_EQ(doc.at("points").at(1).at("fpr").at("exact"), "1/4");
  EXPECT_EQ(doc.at("points").at(1).at("tpr").at("exact"), "3/4");
  EXPECT_EQ(doc.at("verdict"), "violated");
  EXPECT_NE(emit_tradeoff(r, OutputFormat::Text).find("case_ii"), std::string::npos);
}

}  // namespace
}  // namespace fairaudit
