// fairaudit: audit binary classifiers for Statistical-Parity and
// Equalized-Odds across two sensitive groups.
//
// Exit codes: 0 all requested measures satisfied, 1 violation found,
// 2 input or usage error.

#include <fairaudit/fairaudit.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fa = fairaudit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct InputOptions {
  std::string input = "-";
  std::string counts;
  std::string delimiter = ",";
  std::string group_col = "group";
  std::string truth_col = "y";
  std::string pred_col;
  std::string score_col;
  std::string protected_label;
  std::string unprotected_label;
};

struct OutputOptions {
  std::string tolerance = "1e-9";
  std::string format = "text";
  std::string output;
};

fa::OutputFormat parse_format(const std::string& name) {
  if (name == "text") return fa::OutputFormat::Text;
  if (name == "json") return fa::OutputFormat::Json;
  if (name == "svg") return fa::OutputFormat::Svg;
  throw fa::Error("unknown format '" + name + "' (text, json or svg)");
}

char parse_delimiter(const std::string& d) {
  if (d == "tab" || d == "\\t" || d == "\t") return '\t';
  if (d.size() != 1) throw fa::Error("delimiter must be one character or 'tab'");
  return d.front();
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.input, "Delimited records file ('-' for stdin)");
  cmd->add_option("--delimiter", in.delimiter, "Field delimiter (one character or 'tab')");
  cmd->add_option("--group-col", in.group_col, "Sensitive-group column");
  cmd->add_option("--truth-col", in.truth_col, "Ground-truth column (0/1)");
  cmd->add_option("--protected-label", in.protected_label,
                  "Group value meaning protected (S=1)");
  cmd->add_option("--unprotected-label", in.unprotected_label,
                  "Group value meaning unprotected (S=0)");
}

void add_output_options(CLI::App* cmd, OutputOptions& out, bool svg) {
  cmd->add_option("--tolerance", out.tolerance, "Gap tolerance (decimal or fraction)");
  cmd->add_option("--format", out.format, svg ? "text, json or svg" : "text or json");
  cmd->add_option("-o,--output", out.output, "Write to file instead of stdout");
}

fa::AuditConfig make_config(const InputOptions& in, const OutputOptions& out) {
  fa::AuditConfig cfg;
  cfg.input_path = in.input;
  cfg.delimiter = parse_delimiter(in.delimiter);
  cfg.group_column = in.group_col;
  cfg.truth_column = in.truth_col;
  if (!in.pred_col.empty()) cfg.prediction_column = in.pred_col;
  if (!in.score_col.empty()) cfg.score_column = in.score_col;
  if (!in.protected_label.empty()) cfg.protected_label = in.protected_label;
  if (!in.unprotected_label.empty()) cfg.unprotected_label = in.unprotected_label;
  cfg.tolerance = fa::parse_rational(out.tolerance);
  cfg.format = parse_format(out.format);
  cfg.validate();
  return cfg;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw fa::Error("cannot open output file '" + path + "'");
  file << text;
}

std::vector<std::string> split_any(const std::string& s, const std::string& seps) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

// "tp,fn,fp,tn/tp,fn,fp,tn" for group 0 then group 1.
std::array<fa::GroupConfusion, 2> parse_counts(const std::string& text) {
  const auto groups = split_any(text, "/;");
  if (groups.size() != 2) throw fa::Error("--counts needs two groups: tp,fn,fp,tn/tp,fn,fp,tn");
  std::array<fa::GroupConfusion, 2> out{};
  for (std::size_t g = 0; g < 2; ++g) {
    const auto cells = split_any(groups[g], ", ");
    if (cells.size() != 4) throw fa::Error("each group in --counts needs tp,fn,fp,tn");
    std::array<std::uint64_t, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      try {
        std::size_t used = 0;
        if (cells[i].front() == '-') throw std::invalid_argument("negative");
        v[i] = std::stoull(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw fa::Error("bad count '" + cells[i] + "' in --counts");
      }
    }
    out[g] = {v[0], v[1], v[2], v[3]};
  }
  return out;
}

// "0,0 0.1,0.7 1,1" (';' also separates vertices).
fa::RocCurve parse_roc(const std::string& text) {
  std::vector<fa::PlanePoint> vertices;
  for (const auto& vertex : split_any(text, "; ")) {
    const auto xy = split_any(vertex, ",");
    if (xy.size() != 2) throw fa::Error("ROC vertex '" + vertex + "' is not fpr,tpr");
    vertices.push_back({fa::parse_rational(xy[0]), fa::parse_rational(xy[1])});
  }
  return fa::RocCurve(std::move(vertices));
}

fa::PopulationStats load_stats(const InputOptions& in, const fa::AuditConfig& cfg) {
  if (!in.counts.empty()) {
    const auto c = parse_counts(in.counts);
    return fa::stats_from_counts(c[0], c[1]);
  }
  const auto records = fa::read_records(cfg.input_path, cfg);
  const auto counts = fa::counts_from_records(records);
  return fa::stats_from_counts(counts[0], counts[1]);
}

std::string gap_annotation(const fa::FairnessReport& report) {
  std::string s;
  for (fa::Measure m : {fa::Measure::StatisticalParity, fa::Measure::PredictiveEquality,
                        fa::Measure::EqualOpportunity}) {
    const auto& g = report.at(m);
    if (!g.gap) continue;
    const char* tag = m == fa::Measure::StatisticalParity   ? "dq="
                      : m == fa::Measure::PredictiveEquality ? "dFPR="
                                                             : "dTPR=";
    s += (s.empty() ? "" : " ") + std::string(tag) + fa::format_fixed(fa::to_double(*g.gap), 3);
  }
  return s;
}

int run_audit(const InputOptions& in, const OutputOptions& out, bool with_diagnosis) {
  fa::AuditConfig cfg = make_config(in, out);
  const fa::PopulationStats stats = load_stats(in, cfg);

  if (!with_diagnosis) {
    if (cfg.format == fa::OutputFormat::Svg) throw fa::Error("audit supports text or json");
    const fa::FairnessReport report = fa::full_report(stats, cfg.tolerance);
    write_output(out.output, fa::emit_report(report, nullptr, cfg.format));
    return report.all_satisfied() ? kExitOk : kExitViolation;
  }

  const fa::Diagnosis d = fa::diagnose(stats, cfg.tolerance);
  if (cfg.format == fa::OutputFormat::Svg) {
    fa::PlotSpec spec;
    spec.title = "Performance lines at q* = " + fa::format_fixed(fa::to_double(d.q_star), 3);
    for (const auto& line : d.lines) spec.lines.push_back({line, {}});
    const std::string note = gap_annotation(d.report);
    for (fa::GroupLabel g : fa::kGroups) {
      spec.points.push_back({{*stats[g].fpr, *stats[g].tpr}, g, g == fa::GroupLabel::Protected ? note : ""});
    }
    write_output(out.output, fa::render_plane(spec));
  } else {
    write_output(out.output, fa::emit_report(d.report, &d, cfg.format));
  }
  return d.report.all_satisfied() ? kExitOk : kExitViolation;
}

struct LinesOptions {
  std::vector<std::string> base_rates;
  std::string q_star;
  std::string format = "text";
  std::string output;
};

int run_lines(const LinesOptions& opt) {
  const fa::Rational q = fa::parse_rational(opt.q_star);
  std::vector<fa::PerformanceLine> lines;
  for (const auto& p : opt.base_rates) lines.push_back(fa::performance_line(fa::parse_rational(p), q));
  const fa::OutputFormat format = parse_format(opt.format);

  if (format == fa::OutputFormat::Svg) {
    fa::PlotSpec spec;
    spec.title = "Performance lines at q* = " + fa::format_fixed(fa::to_double(q), 3);
    for (const auto& l : lines) spec.lines.push_back({l, {}});
    if (lines.size() >= 2 && lines[0].base_rate() != lines[1].base_rate()) {
      spec.points.push_back({fa::line_intersection(lines[0], lines[1]).point, std::nullopt, ""});
    }
    write_output(opt.output, fa::render_plane(spec));
    return kExitOk;
  }

  using Json = nlohmann::ordered_json;
  auto num = [](const fa::Rational& v) {
    return Json{{"exact", fa::to_fraction_string(v)}, {"decimal", fa::to_double(v)}};
  };
  Json jlines = Json::array();
  std::ostringstream text;
  for (const auto& l : lines) {
    Json jl{{"base_rate", num(l.base_rate())},
            {"posterior", num(l.posterior())},
            {"degenerate", l.degenerate()}};
    text << fa::to_fraction_string(l.base_rate()) << "*TPR + "
         << fa::to_fraction_string(l.fpr_coefficient()) << "*FPR = "
         << fa::to_fraction_string(l.posterior());
    if (l.degenerate()) {
      text << "  (vertical: FPR = " << fa::to_fraction_string(l.posterior()) << ")\n";
    } else {
      jl["slope"] = num(l.slope());
      jl["intercept"] = num(l.intercept());
      text << "  slope " << fa::to_fraction_string(l.slope()) << ", intercept "
           << fa::to_fraction_string(l.intercept()) << "\n";
    }
    jlines.push_back(std::move(jl));
  }
  Json jcross = Json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].base_rate() == lines[j].base_rate()) {
        text << "lines " << i << " and " << j << " are parallel\n";
        jcross.push_back(Json{{"lines", {i, j}}, {"parallel", true}});
        continue;
      }
      const auto x = fa::line_intersection(lines[i], lines[j]);
      text << "lines " << i << " and " << j << " cross at (" << fa::to_fraction_string(x.point.fpr)
           << ", " << fa::to_fraction_string(x.point.tpr) << ")"
           << (x.point.fpr == x.point.tpr ? " on the chance line" : "") << "\n";
      jcross.push_back(Json{{"lines", {i, j}},
                            {"parallel", false},
                            {"fpr", num(x.point.fpr)},
                            {"tpr", num(x.point.tpr)},
                            {"on_chance_line", x.point.fpr == x.point.tpr}});
    }
  }
  if (format == fa::OutputFormat::Json) {
    Json doc{{"schema_version", fa::kReportSchemaVersion},
             {"q_star", num(q)},
             {"lines", std::move(jlines)},
             {"intersections", std::move(jcross)}};
    write_output(opt.output, doc.dump(2) + "\n");
  } else {
    write_output(opt.output, text.str());
  }
  return kExitOk;
}

struct TradeoffOptions {
  InputOptions in;
  OutputOptions out;
  std::string roc;
  std::string roc0;
  std::string roc1;
  std::string p0;
  std::string p1;
  std::string pi1;
  std::string policy = "enforce-parity";
  std::string q_star;
  std::string fpr;
  std::string tpr;
  bool sweep = false;
  std::vector<double> thresholds;
};

int run_sweep(const TradeoffOptions& opt, const fa::AuditConfig& cfg) {
  const auto records = fa::read_scored_records(cfg.input_path, cfg);
  std::optional<std::vector<double>> cuts;
  if (!opt.thresholds.empty()) cuts = opt.thresholds;
  const auto rows = fa::threshold_sweep(records, cuts, cfg.tolerance);

  using Json = nlohmann::ordered_json;
  if (cfg.format == fa::OutputFormat::Json) {
    Json jrows = Json::array();
    for (const auto& row : rows) {
      Json groups = Json::array();
      for (fa::GroupLabel g : fa::kGroups) {
        const auto& s = row.report.stats[g];
        groups.push_back(Json{{"group", fa::to_int(g)},
                              {"fpr", fa::to_fraction_string(*s.fpr)},
                              {"tpr", fa::to_fraction_string(*s.tpr)},
                              {"posterior", fa::to_fraction_string(s.posterior)}});
      }
      Json gaps = Json::object();
      for (const auto& m : row.report.measures) {
        gaps[std::string(fa::measure_name(m.measure))] =
            m.gap ? Json(fa::to_fraction_string(*m.gap)) : Json(nullptr);
      }
      jrows.push_back(Json{{"threshold", row.threshold},
                           {"groups", std::move(groups)},
                           {"gaps", std::move(gaps)},
                           {"all_satisfied", row.report.all_satisfied()}});
    }
    write_output(opt.out.output,
                 Json{{"schema_version", fa::kReportSchemaVersion}, {"rows", std::move(jrows)}}
                         .dump(2) +
                     "\n");
  } else {
    std::ostringstream text;
    text << "threshold\tFPR0\tTPR0\tq0\tFPR1\tTPR1\tq1\tparity_gap\tfpr_gap\ttpr_gap\n";
    for (const auto& row : rows) {
      const auto& s0 = row.report.stats.groups[0];
      const auto& s1 = row.report.stats.groups[1];
      auto d = [](const fa::Rational& v) { return fa::format_fixed(fa::to_double(v), 4); };
      text << fa::format_decimal(row.threshold) << '\t' << d(*s0.fpr) << '\t' << d(*s0.tpr) << '\t'
           << d(s0.posterior) << '\t' << d(*s1.fpr) << '\t' << d(*s1.tpr) << '\t'
           << d(s1.posterior) << '\t' << d(*row.report.at(fa::Measure::StatisticalParity).gap)
           << '\t' << d(*row.report.at(fa::Measure::PredictiveEquality).gap) << '\t'
           << d(*row.report.at(fa::Measure::EqualOpportunity).gap) << '\n';
    }
    write_output(opt.out.output, text.str());
  }
  return kExitOk;
}

int run_tradeoff(TradeoffOptions opt) {
  if (opt.in.score_col.empty()) opt.in.score_col = "score";
  const fa::AuditConfig cfg = make_config(opt.in, opt.out);
  if (opt.sweep) return run_sweep(opt, cfg);

  std::optional<fa::RocCurve> roc0;
  std::optional<fa::RocCurve> roc1;
  fa::Rational p0;
  fa::Rational p1;
  std::optional<fa::Rational> pi1;
  const bool explicit_curves = !opt.roc.empty() || !opt.roc0.empty() || !opt.roc1.empty();
  if (explicit_curves) {
    const std::string& c0 = opt.roc0.empty() ? opt.roc : opt.roc0;
    const std::string& c1 = opt.roc1.empty() ? opt.roc : opt.roc1;
    if (c0.empty() || c1.empty()) throw fa::Error("give --roc or both --roc0 and --roc1");
    if (opt.p0.empty() || opt.p1.empty()) throw fa::Error("explicit curves need --p0 and --p1");
    roc0 = parse_roc(c0);
    roc1 = parse_roc(c1);
    p0 = fa::parse_rational(opt.p0);
    p1 = fa::parse_rational(opt.p1);
    if (!opt.pi1.empty()) pi1 = fa::parse_rational(opt.pi1);
  } else {
    const auto records = fa::read_scored_records(cfg.input_path, cfg);
    std::array<std::vector<fa::ScoredRecord>, 2> by_group;
    for (const auto& r : records) by_group[fa::index_of(r.group)].push_back(r);
    for (std::size_t s = 0; s < 2; ++s) {
      if (by_group[s].empty()) throw fa::EmptyGroup(static_cast<int>(s));
    }
    roc0 = fa::roc_from_scores(by_group[0]);
    roc1 = fa::roc_from_scores(by_group[1]);
    auto base_rate = [](const std::vector<fa::ScoredRecord>& g) {
      std::uint64_t pos = 0;
      for (const auto& r : g) pos += r.truth ? 1 : 0;
      return fa::Rational(pos, g.size());
    };
    p0 = base_rate(by_group[0]);
    p1 = base_rate(by_group[1]);
    pi1 = fa::Rational(by_group[1].size(), records.size());
  }

  fa::Policy policy;
  if (opt.policy == "enforce-parity" || opt.policy == "random") {
    if (opt.q_star.empty()) throw fa::Error("--policy " + opt.policy + " needs --q-star");
    const fa::Rational q = fa::parse_rational(opt.q_star);
    if (opt.policy == "random") {
      policy = fa::RandomClassifier{q};
    } else {
      policy = fa::EnforceParity{q};
    }
  } else if (opt.policy == "enforce-odds") {
    fa::EnforceOdds odds;
    if (!opt.fpr.empty() || !opt.tpr.empty()) {
      if (opt.fpr.empty() || opt.tpr.empty()) throw fa::Error("give both --fpr and --tpr");
      odds.shared = fa::PlanePoint{fa::parse_rational(opt.fpr), fa::parse_rational(opt.tpr)};
    } else if (!opt.q_star.empty()) {
      odds.q_star = fa::parse_rational(opt.q_star);
    } else {
      throw fa::Error("--policy enforce-odds needs --fpr/--tpr or --q-star");
    }
    policy = odds;
  } else {
    throw fa::Error("unknown policy '" + opt.policy + "' (enforce-parity, enforce-odds, random)");
  }

  const fa::TradeoffResult result =
      fa::select_operating_points(*roc0, *roc1, p0, p1, policy, cfg.tolerance, pi1);

  if (cfg.format == fa::OutputFormat::Svg) {
    fa::PlotSpec spec;
    spec.title = "Operating points (" + result.scenario + ")";
    spec.curves.push_back({*roc0, "ROC S=0"});
    if (roc1->vertices() != roc0->vertices()) spec.curves.push_back({*roc1, "ROC S=1"});
    spec.lines.push_back({fa::performance_line(p0, result.points[0].posterior), {}});
    spec.lines.push_back({fa::performance_line(p1, result.points[1].posterior), {}});
    const std::string note = gap_annotation(result.report);
    for (const auto& pt : result.points) {
      spec.points.push_back({pt.point, pt.group, pt.group == fa::GroupLabel::Protected ? note : ""});
    }
    write_output(opt.out.output, fa::render_plane(spec));
  } else {
    write_output(opt.out.output, fa::emit_tradeoff(result, cfg.format));
  }
  return result.report.all_satisfied() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit binary classifiers for Statistical-Parity and Equalized-Odds"};
  app.require_subcommand(1);

  InputOptions audit_in;
  OutputOptions audit_out;
  auto* audit = app.add_subcommand("audit", "Counts or records -> fairness report");
  add_input_options(audit, audit_in);
  audit->add_option("--pred-col", audit_in.pred_col, "Prediction column (0/1)")
      ->default_val("yhat");
  audit->add_option("--counts", audit_in.counts, "Counts tp,fn,fp,tn/tp,fn,fp,tn (S=0 then S=1)");
  add_output_options(audit, audit_out, false);

  InputOptions diag_in;
  OutputOptions diag_out;
  auto* diag = app.add_subcommand("diagnose", "Fairness report plus compatibility verdict");
  add_input_options(diag, diag_in);
  diag->add_option("--pred-col", diag_in.pred_col, "Prediction column (0/1)")->default_val("yhat");
  diag->add_option("--counts", diag_in.counts, "Counts tp,fn,fp,tn/tp,fn,fp,tn (S=0 then S=1)");
  add_output_options(diag, diag_out, true);

  LinesOptions lines_opt;
  auto* lines = app.add_subcommand("lines", "Performance lines for base-rates at a common q*");
  lines->add_option("--p", lines_opt.base_rates, "Base-rate (repeatable)")->required();
  lines->add_option("--q-star", lines_opt.q_star, "Common posterior q*")->required();
  lines->add_option("--format", lines_opt.format, "text, json or svg");
  lines->add_option("-o,--output", lines_opt.output, "Write to file instead of stdout");

  TradeoffOptions trade;
  auto* tradeoff = app.add_subcommand("tradeoff", "Place per-group operating points on ROC curves");
  add_input_options(tradeoff, trade.in);
  tradeoff->add_option("--score-col", trade.in.score_col, "Score column")->default_val("score");
  add_output_options(tradeoff, trade.out, true);
  tradeoff->add_option("--roc", trade.roc, "ROC vertices for both groups: 'fpr,tpr fpr,tpr ...'");
  tradeoff->add_option("--roc0", trade.roc0, "ROC vertices for S=0");
  tradeoff->add_option("--roc1", trade.roc1, "ROC vertices for S=1");
  tradeoff->add_option("--p0", trade.p0, "Base-rate of S=0 (with explicit curves)");
  tradeoff->add_option("--p1", trade.p1, "Base-rate of S=1 (with explicit curves)");
  tradeoff->add_option("--pi1", trade.pi1, "Population share of S=1 (with explicit curves)");
  tradeoff->add_option("--policy", trade.policy, "enforce-parity, enforce-odds or random");
  tradeoff->add_option("--q-star", trade.q_star, "Target posterior");
  tradeoff->add_option("--fpr", trade.fpr, "Shared FPR for enforce-odds");
  tradeoff->add_option("--tpr", trade.tpr, "Shared TPR for enforce-odds");
  tradeoff->add_flag("--sweep", trade.sweep, "Print a threshold sweep instead");
  tradeoff->add_option("--thresholds", trade.thresholds, "Sweep thresholds (default: all scores)")
      ->delimiter(',');

  std::string example_point;
  std::string example_output;
  std::string example_delimiter = ",";
  auto* example = app.add_subcommand("example", "Emit the running-example records");
  example->add_option("point", example_point, "Operating point A, B or C")->required();
  example->add_option("-o,--output", example_output, "Write to file instead of stdout");
  example->add_option("--delimiter", example_delimiter, "Field delimiter (one character or 'tab')");

  std::string plot_spec;
  std::string plot_output;
  auto* plot = app.add_subcommand("plot", "Render a plot spec (JSON) as SVG");
  plot->add_option("spec", plot_spec, "Plot spec JSON file ('-' for stdin)")->required();
  plot->add_option("-o,--output", plot_output, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (audit->parsed()) return run_audit(audit_in, audit_out, false);
    if (diag->parsed()) return run_audit(diag_in, diag_out, true);
    if (lines->parsed()) return run_lines(lines_opt);
    if (tradeoff->parsed()) {
      trade.in.pred_col.clear();
      return run_tradeoff(trade);
    }
    if (example->parsed()) {
      const auto ex = fa::generate_running_example(fa::parse_running_point(example_point));
      std::ostringstream text;
      fa::write_records(text, ex.records, parse_delimiter(example_delimiter));
      write_output(example_output, text.str());
      return kExitOk;
    }
    if (plot->parsed()) {
      std::stringstream buffer;
      if (plot_spec == "-") {
        buffer << std::cin.rdbuf();
      } else {
        std::ifstream file(plot_spec);
        if (!file) throw fa::Error("cannot open plot spec '" + plot_spec + "'");
        buffer << file.rdbuf();
      }
      write_output(plot_output, fa::render_plane(fa::plot_spec_from_json(buffer.str())));
      return kExitOk;
    }
  } catch (const fa::Error& e) {
    std::cerr << "fairaudit: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "fairaudit: internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
