#include "fairaudit/compatibility.hpp"

#include "fairaudit/confusion.hpp"
#include "fairaudit/errors.hpp"

namespace fairaudit {
namespace {

void require_unit(const Rational& v, const char* name) {
  if (!in_unit_interval(v)) {
    throw DomainError(std::string(name) + " = " + to_fraction_string(v) + " is outside [0,1]");
  }
}

std::string dec(const Rational& v) { return format_decimal(to_double(v)); }

}  // namespace

PerformanceLine::PerformanceLine(Rational base_rate, Rational posterior)
    : base_rate_(std::move(base_rate)), posterior_(std::move(posterior)) {
  require_unit(base_rate_, "base-rate");
  require_unit(posterior_, "q*");
}

Rational PerformanceLine::slope() const {
  if (degenerate()) throw DegenerateBaseRate();
  return 1 - 1 / base_rate_;
}

Rational PerformanceLine::intercept() const {
  if (degenerate()) throw DegenerateBaseRate();
  return posterior_ / base_rate_;
}

Rational PerformanceLine::residual(const PlanePoint& pt) const {
  return base_rate_ * pt.tpr + (1 - base_rate_) * pt.fpr - posterior_;
}

PerformanceLine performance_line(const Rational& base_rate, const Rational& q_star) {
  return PerformanceLine(base_rate, q_star);
}

Intersection line_intersection(const PerformanceLine& l0, const PerformanceLine& l1) {
  // a_s*TPR + b_s*FPR = q_s with a = p, b = 1 - p; the determinant
  // a0*b1 - a1*b0 reduces to p0 - p1.
  const Rational det = l0.base_rate() - l1.base_rate();
  if (det == 0) throw ParallelLines();

  Intersection out;
  if (l0.posterior() == l1.posterior()) {
    out.kind = IntersectionKind::CommonPosterior;
    out.point = {l0.posterior(), l0.posterior()};
  } else {
    out.kind = IntersectionKind::MismatchedPosteriors;
    const Rational tpr =
        (l0.posterior() * l1.fpr_coefficient() - l1.posterior() * l0.fpr_coefficient()) / det;
    const Rational fpr =
        (l0.tpr_coefficient() * l1.posterior() - l1.tpr_coefficient() * l0.posterior()) / det;
    out.point = {fpr, tpr};
  }
  if (!l0.contains(out.point) || !l1.contains(out.point)) {
    throw std::logic_error("intersection does not satisfy both line equations");
  }
  return out;
}

std::string_view verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::BaseRatesBalanced: return "base_rates_balanced";
    case VerdictKind::ChanceLineForced: return "chance_line_forced";
    case VerdictKind::JointlySatisfiedOnChanceLine: return "jointly_satisfied_on_chance_line";
    case VerdictKind::Incompatible: return "incompatible";
  }
  return "unknown";
}

CompatibilityVerdict theorem1_check(const Rational& p0, const Rational& p1,
                                    const Rational& fpr_star, const Rational& tpr_star,
                                    const Rational& tolerance) {
  CompatibilityVerdict v;
  v.p0 = p0;
  v.p1 = p1;
  v.fpr_star = fpr_star;
  v.tpr_star = tpr_star;
  v.q0 = posterior_from_rates(p0, tpr_star, fpr_star);
  v.q1 = posterior_from_rates(p1, tpr_star, fpr_star);
  v.parity_gap = v.q0 - v.q1;

  const bool balanced = abs(p0 - p1) <= tolerance;
  const bool chance = abs(tpr_star - fpr_star) <= tolerance;

  if (balanced) {
    v.kind = VerdictKind::BaseRatesBalanced;
    v.on_chance_line = chance;
    v.explanation = "base-rates are equal (p0=" + dec(p0) + ", p1=" + dec(p1) +
                    "), so equal FPR and TPR give equal posteriors";
    if (chance) v.explanation += "; the operating point is also on the chance line";
  } else if (chance) {
    v.on_chance_line = true;
    if (abs(v.parity_gap) <= tolerance) {
      v.kind = VerdictKind::JointlySatisfiedOnChanceLine;
      v.explanation = "base-rates differ but TPR* = FPR* = " + dec(fpr_star) +
                      ", so q0 = q1 = " + dec(v.q0) +
                      "; parity holds only because the classifier is no better than chance";
    } else {
      v.kind = VerdictKind::ChanceLineForced;
      v.explanation = "base-rates differ; parity would require TPR* = FPR* exactly, "
                      "the operating point is only near the chance line";
    }
  } else {
    v.kind = VerdictKind::Incompatible;
    v.explanation = "base-rates differ (p0=" + dec(p0) + ", p1=" + dec(p1) +
                    ") and TPR* != FPR*, so parity fails with q0 - q1 = (p0 - p1)(TPR* - FPR*) = " +
                    to_fraction_string(v.parity_gap);
  }
  return v;
}

Rational corollary1_posterior(const Rational& x_star) {
  require_unit(x_star, "x*");
  return x_star;
}

Diagnosis diagnose(const PopulationStats& stats, const Rational& tolerance) {
  Diagnosis d;
  d.report = full_report(stats, tolerance);

  const GroupStats& g0 = stats.groups[0];
  const GroupStats& g1 = stats.groups[1];
  for (int s = 0; s < 2; ++s) {
    if (!stats.groups[static_cast<std::size_t>(s)].fpr) throw UndefinedRate("FPR", s);
    if (!stats.groups[static_cast<std::size_t>(s)].tpr) throw UndefinedRate("TPR", s);
  }

  d.parity_gap = g0.posterior - g1.posterior;
  d.q_star = (g0.posterior + g1.posterior) / 2;
  d.lines.push_back(performance_line(g0.base_rate, d.q_star));
  d.lines.push_back(performance_line(g1.base_rate, d.q_star));

  const MeasureGap& pe = d.report.at(Measure::PredictiveEquality);
  const MeasureGap& eo = d.report.at(Measure::EqualOpportunity);
  if (!pe.satisfied) d.failing_equalities.push_back(Measure::PredictiveEquality);
  if (!eo.satisfied) d.failing_equalities.push_back(Measure::EqualOpportunity);
  d.equalized_odds_holds = d.failing_equalities.empty();

  const bool parity = d.report.at(Measure::StatisticalParity).satisfied;
  if (d.equalized_odds_holds) {
    // Gaps are within tolerance but may be nonzero; use the midpoint.
    const Rational fpr_star = (*g0.fpr + *g1.fpr) / 2;
    const Rational tpr_star = (*g0.tpr + *g1.tpr) / 2;
    CompatibilityVerdict v =
        theorem1_check(g0.base_rate, g1.base_rate, fpr_star, tpr_star, tolerance);
    if (v.kind == VerdictKind::JointlySatisfiedOnChanceLine && !parity) {
      v.kind = VerdictKind::ChanceLineForced;
      v.explanation = "operating point is near the chance line but the measured parity gap " +
                      to_fraction_string(d.parity_gap) + " exceeds the tolerance";
    }
    d.explanation = v.explanation;
    d.verdict = std::move(v);
  } else {
    d.explanation = "Equalized-Odds does not hold:";
    for (Measure m : d.failing_equalities) {
      d.explanation += std::string(" ") + std::string(measure_name(m)) + " gap " +
                       to_fraction_string(*d.report.at(m).gap) + ";";
    }
    d.explanation += parity ? " statistical parity holds" : " statistical parity also fails";
    d.explanation += " (q0 - q1 = " + to_fraction_string(d.parity_gap) + ")";
  }
  return d;
}

}  // namespace fairaudit
