#pragma once

// ROC curves per group and operating-point selection in the FPR-TPR plane.

#include "fairaudit/compatibility.hpp"
#include "fairaudit/confusion.hpp"
#include "fairaudit/measures.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fairaudit {

struct ScoredRecord {
  GroupLabel group{};
  bool truth = false;
  double score = 0.0;
};

// Monotone piecewise-linear curve from (0,0) to (1,1).
class RocCurve {
 public:
  // Throws DomainError unless the vertices start at (0,0), end at (1,1), stay
  // in the unit square and are non-decreasing in both coordinates.
  // `thresholds` is either empty or one entry per vertex.
  explicit RocCurve(std::vector<PlanePoint> vertices,
                    std::vector<std::optional<double>> thresholds = {});

  const std::vector<PlanePoint>& vertices() const { return vertices_; }
  // Score threshold realizing each vertex (predict positive when
  // score >= threshold); empty for the reject-all vertex and hand-made curves.
  std::optional<double> threshold_at(std::size_t vertex) const;
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<PlanePoint> vertices_;
  std::vector<std::optional<double>> thresholds_;
};

// Descending-score staircase. Records sharing a score flip together and
// produce a diagonal segment. Throws UndefinedRate if a class is absent.
RocCurve roc_from_scores(std::span<const ScoredRecord> records);

struct OperationPoint {
  GroupLabel group{};
  PlanePoint point;
  std::optional<double> threshold;
  Rational posterior;
  bool random_classifier = false;
};

// Both groups at (q*, q*). Every measure is equalized there but the
// classifier is no better than chance.
std::array<OperationPoint, 2> chance_line_point(const Rational& q_star);

// First point along `roc` whose posterior reaches q_star (smallest FPR on a
// flat run). Throws DomainError for p outside (0,1), Unreachable when
// q_star is outside the curve's posterior span.
OperationPoint parity_point_on_roc(const RocCurve& roc, GroupLabel group,
                                   const Rational& base_rate, const Rational& q_star);

std::array<OperationPoint, 2> parity_points_on_roc(const RocCurve& roc0, const RocCurve& roc1,
                                                   const Rational& p0, const Rational& p1,
                                                   const Rational& q_star);

struct SharedPointGaps {
  Rational q0;
  Rational q1;
  Rational parity_gap;  // (p0 - p1)(tpr - fpr)
};

// Both groups run at the same (fpr, tpr). Throws DomainError outside [0,1].
SharedPointGaps shared_point_gaps(const Rational& fpr, const Rational& tpr,
                                  const Rational& p0, const Rational& p1);

struct SweepRow {
  double threshold = 0.0;
  std::array<GroupConfusion, 2> counts;
  FairnessReport report;
};

// One row per threshold; predictions are positive when score >= threshold.
// Without explicit thresholds, every distinct score is used, descending.
std::vector<SweepRow> threshold_sweep(std::span<const ScoredRecord> records,
                                      std::optional<std::vector<double>> thresholds = std::nullopt,
                                      const Rational& tolerance = default_tolerance());

struct EnforceParity {
  Rational q_star;
};

// Shared operating point. Without an explicit point, group 0's parity
// point at `q_star` is used for both groups.
struct EnforceOdds {
  std::optional<PlanePoint> shared;
  Rational q_star;
};

struct RandomClassifier {
  Rational q_star;
};

using Policy = std::variant<EnforceParity, EnforceOdds, RandomClassifier>;

struct TradeoffResult {
  std::array<OperationPoint, 2> points;
  FairnessReport report;
  std::string scenario;  // case_i .. case_iv
};

TradeoffResult select_operating_points(const RocCurve& roc0, const RocCurve& roc1,
                                       const Rational& p0, const Rational& p1,
                                       const Policy& policy,
                                       const Rational& tolerance = default_tolerance(),
                                       std::optional<Rational> pi1 = std::nullopt);

}  // namespace fairaudit
