#include "fairaudit/measures.hpp"

#include "fairaudit/errors.hpp"

#include <stdexcept>

namespace fairaudit {
namespace {

MeasureGap make_gap(Measure m, Rational gap, const Rational& tolerance) {
  MeasureGap out;
  out.measure = m;
  out.satisfied = abs(gap) <= tolerance;
  out.gap = std::move(gap);
  return out;
}

const Rational& require_rate(const Rate& rate, const char* name, int group) {
  if (!rate) throw UndefinedRate(name, group);
  return *rate;
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::StatisticalParity: return "statistical_parity";
    case Measure::PredictiveEquality: return "predictive_equality";
    case Measure::EqualOpportunity: return "equal_opportunity";
    case Measure::ErrorRateBalance: return "error_rate_balance";
    case Measure::Representativity: return "representativity";
  }
  return "unknown";
}

Rational default_tolerance() { return Rational(1, 1000000000); }

const MeasureGap& FairnessReport::at(Measure m) const {
  for (const auto& g : measures) {
    if (g.measure == m) return g;
  }
  throw std::out_of_range("measure not in report");
}

bool FairnessReport::all_satisfied() const {
  for (const auto& g : measures) {
    if (g.applicable && !g.satisfied) return false;
  }
  return true;
}

MeasureGap statistical_parity_gap(const PopulationStats& stats, const Rational& tolerance) {
  return make_gap(Measure::StatisticalParity, stats.groups[0].posterior - stats.groups[1].posterior,
                  tolerance);
}

MeasureGap predictive_equality_gap(const PopulationStats& stats, const Rational& tolerance) {
  const Rational& f0 = require_rate(stats.groups[0].fpr, "FPR", 0);
  const Rational& f1 = require_rate(stats.groups[1].fpr, "FPR", 1);
  return make_gap(Measure::PredictiveEquality, f0 - f1, tolerance);
}

MeasureGap equal_opportunity_gap(const PopulationStats& stats, const Rational& tolerance) {
  const Rational& t0 = require_rate(stats.groups[0].tpr, "TPR", 0);
  const Rational& t1 = require_rate(stats.groups[1].tpr, "TPR", 1);
  return make_gap(Measure::EqualOpportunity, t0 - t1, tolerance);
}

MeasureGap error_rate_balance_gap(const PopulationStats& stats, const Rational& tolerance) {
  const MeasureGap fpr = predictive_equality_gap(stats, tolerance);
  const Rational& n0 = require_rate(stats.groups[0].fnr, "FNR", 0);
  const Rational& n1 = require_rate(stats.groups[1].fnr, "FNR", 1);
  const Rational fnr_gap = n0 - n1;
  Rational gap = abs(fnr_gap) > abs(*fpr.gap) ? fnr_gap : *fpr.gap;
  MeasureGap out = make_gap(Measure::ErrorRateBalance, std::move(gap), tolerance);
  out.satisfied = fpr.satisfied && abs(fnr_gap) <= tolerance;
  return out;
}

MeasureGap representativity_check(const PopulationStats& stats, const Rational& tolerance) {
  const GroupStats& g0 = stats.groups[0];
  const GroupStats& g1 = stats.groups[1];
  if (!g0.demographic_rate || !g1.demographic_rate) {
    MeasureGap out;
    out.measure = Measure::Representativity;
    out.applicable = false;
    out.error = "population shares unknown";
    return out;
  }
  const Rational positives0 = g0.posterior * *g0.demographic_rate;
  const Rational positives1 = g1.posterior * *g1.demographic_rate;
  const Rational all_positives = positives0 + positives1;
  if (all_positives == 0) throw NoPositivePredictions();

  MeasureGap out = make_gap(Measure::Representativity,
                            *g1.demographic_rate - positives1 / all_positives, tolerance);
  // The protected share of positives equals the population share exactly
  // when the posteriors are equal.
  if ((*out.gap == 0) != (g0.posterior == g1.posterior)) {
    throw std::logic_error("representativity and statistical parity disagree");
  }
  return out;
}

FairnessReport full_report(const PopulationStats& stats, const Rational& tolerance) {
  FairnessReport report;
  report.tolerance = tolerance;
  report.stats = stats;

  using GapFn = MeasureGap (*)(const PopulationStats&, const Rational&);
  constexpr std::array<GapFn, 5> fns{statistical_parity_gap, predictive_equality_gap,
                                     equal_opportunity_gap, error_rate_balance_gap,
                                     representativity_check};
  for (std::size_t i = 0; i < kAllMeasures.size(); ++i) {
    try {
      report.measures.push_back(fns[i](stats, tolerance));
    } catch (const Error& e) {
      MeasureGap failed;
      failed.measure = kAllMeasures[i];
      failed.error = e.what();
      report.measures.push_back(std::move(failed));
    }
  }

  if (const auto& eo = report.at(Measure::EqualOpportunity); eo.gap) report.fnr_gap = -*eo.gap;
  if (stats.groups[0].posterior != 0) {
    report.parity_ratio = stats.groups[1].posterior / stats.groups[0].posterior;
  }
  return report;
}

}  // namespace fairaudit
