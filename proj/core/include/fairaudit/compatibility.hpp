#pragma once

// When can Statistical-Parity and Equalized-Odds hold together?
//
// With shared rates FPR*, TPR* for both groups, q_s = p_s*TPR* + (1-p_s)*FPR*
// and so q_0 - q_1 = (p_0 - p_1)(TPR* - FPR*). Parity on top of Equalized-Odds
// therefore needs equal base-rates or an operating point on the chance line
// TPR = FPR. Dually, the performance lines p_s*TPR + (1-p_s)*FPR = q* of two
// groups with different base-rates always cross at (q*, q*).

#include "fairaudit/measures.hpp"
#include "fairaudit/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

struct PlanePoint {
  Rational fpr;
  Rational tpr;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

// The locus p*TPR + (1-p)*FPR = q in the FPR-TPR plane, stored implicitly.
class PerformanceLine {
 public:
  PerformanceLine(Rational base_rate, Rational posterior);

  const Rational& base_rate() const { return base_rate_; }
  const Rational& posterior() const { return posterior_; }

  Rational tpr_coefficient() const { return base_rate_; }
  Rational fpr_coefficient() const { return 1 - base_rate_; }

  // p = 0: the line is FPR = q and has no explicit form.
  bool degenerate() const { return base_rate_ == 0; }

  // 1 - 1/p. Throws DegenerateBaseRate when p = 0.
  Rational slope() const;
  // q / p. Throws DegenerateBaseRate when p = 0.
  Rational intercept() const;

  // p*TPR + (1-p)*FPR - q; zero exactly on the line.
  Rational residual(const PlanePoint& pt) const;
  bool contains(const PlanePoint& pt) const { return residual(pt) == 0; }

 private:
  Rational base_rate_;
  Rational posterior_;
};

enum class IntersectionKind {
  CommonPosterior,       // equal targets: the crossing is (q*, q*)
  MismatchedPosteriors,  // targets differ: general two-line solution
};

struct Intersection {
  IntersectionKind kind{};
  PlanePoint point;
};

// Throws DomainError unless p in [0,1] and q in [0,1].
PerformanceLine performance_line(const Rational& base_rate, const Rational& q_star);

// Throws ParallelLines when the base-rates are equal.
Intersection line_intersection(const PerformanceLine& l0, const PerformanceLine& l1);

enum class VerdictKind {
  BaseRatesBalanced,
  ChanceLineForced,
  JointlySatisfiedOnChanceLine,
  Incompatible,
};

std::string_view verdict_name(VerdictKind kind);

struct CompatibilityVerdict {
  VerdictKind kind{};
  Rational p0;
  Rational p1;
  Rational fpr_star;
  Rational tpr_star;
  Rational q0;
  Rational q1;
  // q0 - q1 under the shared rates, i.e. (p0 - p1)(TPR* - FPR*).
  Rational parity_gap;
  // Both disjuncts hold: equal base-rates and TPR* = FPR* (within tolerance).
  bool on_chance_line = false;
  std::string explanation;
};

// Models a classifier that already satisfies Equalized-Odds with shared
// rates (fpr_star, tpr_star). Throws DomainError outside [0,1].
CompatibilityVerdict theorem1_check(const Rational& p0, const Rational& p1,
                                    const Rational& fpr_star, const Rational& tpr_star,
                                    const Rational& tolerance = default_tolerance());

// Operating on the chance line at x* yields q_0 = q_1 = x*.
Rational corollary1_posterior(const Rational& x_star);

struct Diagnosis {
  FairnessReport report;
  bool equalized_odds_holds = false;
  // Present only when Equalized-Odds holds at the tolerance.
  std::optional<CompatibilityVerdict> verdict;
  // Equalities that fail (predictive_equality and/or equal_opportunity).
  std::vector<Measure> failing_equalities;
  Rational parity_gap;  // measured q0 - q1
  Rational q_star;      // mean of the measured posteriors
  std::vector<PerformanceLine> lines;  // group 0 then group 1, at q_star
  std::string explanation;
};

// Throws UndefinedRate when FPR or TPR is undefined for a group.
Diagnosis diagnose(const PopulationStats& stats,
                   const Rational& tolerance = default_tolerance());

}  // namespace fairaudit
