#pragma once

#include "fairaudit/confusion.hpp"
#include "fairaudit/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

enum class Measure {
  StatisticalParity,
  PredictiveEquality,
  EqualOpportunity,
  ErrorRateBalance,
  Representativity,
};

inline constexpr std::array<Measure, 5> kAllMeasures{
    Measure::StatisticalParity, Measure::PredictiveEquality, Measure::EqualOpportunity,
    Measure::ErrorRateBalance, Measure::Representativity};

// snake_case identifier used in reports.
std::string_view measure_name(Measure m);

// 1e-9, the default for count-derived audits.
Rational default_tolerance();

// Signed gap (group 0 value minus group 1 value). When the gap could not be
// computed, `gap` is empty, `satisfied` is false and `error` says why.
// A measure whose inputs are absent by construction (representativity
// without population shares) is marked not applicable and skipped by
// verdicts.
struct MeasureGap {
  Measure measure{};
  std::optional<Rational> gap;
  bool satisfied = false;
  bool applicable = true;
  std::string error;

  bool defined() const { return gap.has_value(); }
};

struct FairnessReport {
  std::vector<MeasureGap> measures;  // one per Measure, in kAllMeasures order
  Rational tolerance;
  PopulationStats stats;
  // FNR_0 - FNR_1, the negation of the equal-opportunity gap.
  std::optional<Rational> fnr_gap;
  // q_1 / q_0. Informational only; it never drives a verdict.
  std::optional<Rational> parity_ratio;

  const MeasureGap& at(Measure m) const;
  bool all_satisfied() const;
};

MeasureGap statistical_parity_gap(const PopulationStats& stats,
                                  const Rational& tolerance = default_tolerance());

// Throws UndefinedRate naming the group with no ground-truth negatives.
MeasureGap predictive_equality_gap(const PopulationStats& stats,
                                   const Rational& tolerance = default_tolerance());

// Throws UndefinedRate naming the group with no ground-truth positives.
MeasureGap equal_opportunity_gap(const PopulationStats& stats,
                                 const Rational& tolerance = default_tolerance());

// FPR and FNR equality together. The gap is whichever of the two component
// gaps has the larger magnitude, so |gap| <= tolerance exactly when both hold.
MeasureGap error_rate_balance_gap(const PopulationStats& stats,
                                  const Rational& tolerance = default_tolerance());

// pi_1 minus the protected group's share of all positive predictions.
// Throws NoPositivePredictions if q_0 = q_1 = 0. Without population shares
// the result is not applicable.
MeasureGap representativity_check(const PopulationStats& stats,
                                  const Rational& tolerance = default_tolerance());

// Never throws for per-measure failures; they are recorded in the gaps.
FairnessReport full_report(const PopulationStats& stats,
                           const Rational& tolerance = default_tolerance());

}  // namespace fairaudit
