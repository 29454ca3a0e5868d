#include "fairaudit/report.hpp"

#include "fairaudit/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace fairaudit {
namespace {

using Json = nlohmann::ordered_json;

Json number(const Rational& v) {
  return Json{{"exact", to_fraction_string(v)}, {"decimal", to_double(v)}};
}

Json optional_number(const std::optional<Rational>& v) { return v ? number(*v) : Json(nullptr); }

Json counts_json(const GroupConfusion& c) {
  return Json{{"tp", c.tp}, {"fn", c.fn}, {"fp", c.fp}, {"tn", c.tn}};
}

Json stats_json(const PopulationStats& stats) {
  Json groups = Json::array();
  for (GroupLabel g : kGroups) {
    const GroupStats& s = stats[g];
    groups.push_back(Json{
        {"group", to_int(g)},
        {"n", s.n ? Json(*s.n) : Json(nullptr)},
        {"counts", s.counts ? counts_json(*s.counts) : Json(nullptr)},
        {"demographic_rate", optional_number(s.demographic_rate)},
        {"base_rate", number(s.base_rate)},
        {"posterior", number(s.posterior)},
        {"fpr", optional_number(s.fpr)},
        {"tpr", optional_number(s.tpr)},
        {"fnr", optional_number(s.fnr)},
    });
  }
  return Json{{"n_total", stats.n_total ? Json(*stats.n_total) : Json(nullptr)},
              {"groups", std::move(groups)}};
}

Json measures_json(const FairnessReport& report) {
  Json out = Json::array();
  for (const MeasureGap& g : report.measures) {
    Json m{{"measure", measure_name(g.measure)},
           {"gap", optional_number(g.gap)},
           {"satisfied", g.satisfied},
           {"applicable", g.applicable}};
    if (!g.error.empty()) m["error"] = g.error;
    out.push_back(std::move(m));
  }
  return out;
}

Json line_json(const PerformanceLine& line, int group) {
  return Json{{"group", group},
              {"base_rate", number(line.base_rate())},
              {"posterior", number(line.posterior())},
              {"degenerate", line.degenerate()},
              {"slope", line.degenerate() ? Json(nullptr) : number(line.slope())},
              {"intercept", line.degenerate() ? Json(nullptr) : number(line.intercept())}};
}

Json verdict_json(const CompatibilityVerdict& v) {
  return Json{{"kind", verdict_name(v.kind)},
              {"p0", number(v.p0)},
              {"p1", number(v.p1)},
              {"fpr_star", number(v.fpr_star)},
              {"tpr_star", number(v.tpr_star)},
              {"q0", number(v.q0)},
              {"q1", number(v.q1)},
              {"parity_gap", number(v.parity_gap)},
              {"on_chance_line", v.on_chance_line},
              {"explanation", v.explanation}};
}

Json diagnosis_json(const Diagnosis& d) {
  Json failing = Json::array();
  for (Measure m : d.failing_equalities) failing.push_back(measure_name(m));
  Json lines = Json::array();
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    lines.push_back(line_json(d.lines[i], static_cast<int>(i)));
  }
  return Json{{"equalized_odds_holds", d.equalized_odds_holds},
              {"failing_equalities", std::move(failing)},
              {"parity_gap", number(d.parity_gap)},
              {"q_star", number(d.q_star)},
              {"lines", std::move(lines)},
              {"compatibility", d.verdict ? verdict_json(*d.verdict) : Json(nullptr)},
              {"explanation", d.explanation}};
}

std::string verdict_string(const FairnessReport& report, const Diagnosis* diagnosis) {
  if (diagnosis) {
    return diagnosis->verdict ? std::string(verdict_name(diagnosis->verdict->kind))
                              : "equalized_odds_not_met";
  }
  return report.all_satisfied() ? "satisfied" : "violated";
}

Json report_body(const FairnessReport& report) {
  return Json{{"tolerance", number(report.tolerance)},
              {"all_satisfied", report.all_satisfied()},
              {"stats", stats_json(report.stats)},
              {"measures", measures_json(report)},
              {"fnr_gap", optional_number(report.fnr_gap)},
              {"parity_ratio", optional_number(report.parity_ratio)}};
}

std::string text_value(const std::optional<Rational>& v) {
  if (!v) return "undefined";
  return to_fraction_string(*v) + " (" + format_decimal(to_double(*v)) + ")";
}

void text_report(std::ostringstream& out, const FairnessReport& report) {
  const PopulationStats& stats = report.stats;
  out << "population";
  if (stats.n_total) out << "  N=" << *stats.n_total;
  out << "\n";
  for (GroupLabel g : kGroups) {
    const GroupStats& s = stats[g];
    out << "  S=" << to_int(g) << (g == GroupLabel::Protected ? " (protected)" : " (unprotected)");
    if (s.n) out << "  n=" << *s.n;
    out << "\n";
    out << "    pi   " << text_value(s.demographic_rate) << "\n";
    out << "    p    " << text_value(s.base_rate) << "\n";
    out << "    q    " << text_value(s.posterior) << "\n";
    out << "    FPR  " << text_value(s.fpr) << "\n";
    out << "    TPR  " << text_value(s.tpr) << "\n";
    out << "    FNR  " << text_value(s.fnr) << "\n";
  }
  out << "measures (gap = group 0 - group 1, tolerance "
      << format_decimal(to_double(report.tolerance)) << ")\n";
  for (const MeasureGap& g : report.measures) {
    out << "  " << measure_name(g.measure) << ": ";
    if (g.gap) {
      out << text_value(g.gap) << "  " << (g.satisfied ? "ok" : "VIOLATED");
    } else {
      out << "n/a  " << g.error << (g.applicable ? "" : " (not applicable)");
    }
    out << "\n";
  }
  if (report.parity_ratio) out << "  q1/q0 ratio (informational): " << text_value(report.parity_ratio) << "\n";
}

}  // namespace

std::string emit_report(const FairnessReport& report, const Diagnosis* diagnosis,
                        OutputFormat format) {
  const std::string verdict = verdict_string(report, diagnosis);
  if (format == OutputFormat::Json) {
    Json doc{{"schema_version", kReportSchemaVersion}, {"verdict", verdict}};
    doc.update(report_body(report));
    if (diagnosis) doc["diagnosis"] = diagnosis_json(*diagnosis);
    return doc.dump(2) + "\n";
  }
  if (format != OutputFormat::Text) throw Error("reports are emitted as text or json");

  std::ostringstream out;
  text_report(out, report);
  if (diagnosis) {
    out << "diagnosis\n";
    out << "  equalized odds: " << (diagnosis->equalized_odds_holds ? "holds" : "fails") << "\n";
    out << "  parity gap q0 - q1: " << text_value(diagnosis->parity_gap) << "\n";
    for (std::size_t i = 0; i < diagnosis->lines.size(); ++i) {
      const PerformanceLine& l = diagnosis->lines[i];
      out << "  L" << i << ": " << to_fraction_string(l.base_rate()) << "*TPR + "
          << to_fraction_string(l.fpr_coefficient()) << "*FPR = "
          << to_fraction_string(l.posterior()) << "\n";
    }
    out << "  " << diagnosis->explanation << "\n";
  }
  out << "verdict: " << verdict << "\n";
  return out.str();
}

std::string emit_tradeoff(const TradeoffResult& result, OutputFormat format) {
  const std::string verdict = result.report.all_satisfied() ? "satisfied" : "violated";
  if (format == OutputFormat::Json) {
    Json points = Json::array();
    for (const OperationPoint& p : result.points) {
      points.push_back(Json{{"group", to_int(p.group)},
                            {"fpr", number(p.point.fpr)},
                            {"tpr", number(p.point.tpr)},
                            {"posterior", number(p.posterior)},
                            {"threshold", p.threshold ? Json(*p.threshold) : Json(nullptr)},
                            {"random_classifier", p.random_classifier}});
    }
    Json doc{{"schema_version", kReportSchemaVersion},
             {"verdict", verdict},
             {"scenario", result.scenario},
             {"points", std::move(points)}};
    doc.update(report_body(result.report));
    return doc.dump(2) + "\n";
  }
  if (format != OutputFormat::Text) throw Error("trade-offs are emitted as text or json");

  std::ostringstream out;
  out << "scenario: " << result.scenario << "\n";
  for (const OperationPoint& p : result.points) {
    out << "  S=" << to_int(p.group) << " at (FPR, TPR) = (" << to_fraction_string(p.point.fpr)
        << ", " << to_fraction_string(p.point.tpr) << ")  q=" << text_value(p.posterior);
    if (p.threshold) out << "  threshold=" << format_decimal(*p.threshold);
    if (p.random_classifier) out << "  [random classifier]";
    out << "\n";
  }
  text_report(out, result.report);
  out << "verdict: " << verdict << "\n";
  return out.str();
}

}  // namespace fairaudit
