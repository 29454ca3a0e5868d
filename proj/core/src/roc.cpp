#include "fairaudit/roc.hpp"

#include "fairaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairaudit {
namespace {

void require_unit(const Rational& v, const char* name) {
  if (!in_unit_interval(v)) {
    throw DomainError(std::string(name) + " = " + to_fraction_string(v) + " is outside [0,1]");
  }
}

void require_open_unit(const Rational& v, const char* name) {
  if (v <= 0 || v >= 1) {
    throw DomainError(std::string(name) + " = " + to_fraction_string(v) + " is outside (0,1)");
  }
}

Rational posterior_at(const PlanePoint& pt, const Rational& p) {
  return p * pt.tpr + (1 - p) * pt.fpr;
}

std::vector<ScoredRecord> sorted_by_score_desc(std::span<const ScoredRecord> records) {
  std::vector<ScoredRecord> sorted(records.begin(), records.end());
  for (const auto& r : sorted) {
    if (!std::isfinite(r.score)) throw DomainError("score is not finite");
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredRecord& a, const ScoredRecord& b) { return a.score > b.score; });
  return sorted;
}

}  // namespace

RocCurve::RocCurve(std::vector<PlanePoint> vertices, std::vector<std::optional<double>> thresholds)
    : vertices_(std::move(vertices)), thresholds_(std::move(thresholds)) {
  if (vertices_.size() < 2) throw DomainError("ROC curve needs at least two vertices");
  if (!thresholds_.empty() && thresholds_.size() != vertices_.size()) {
    throw DomainError("ROC threshold annotations must match the vertex count");
  }
  if (vertices_.front() != PlanePoint{0, 0}) throw DomainError("ROC curve must start at (0,0)");
  if (vertices_.back() != PlanePoint{1, 1}) throw DomainError("ROC curve must end at (1,1)");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    require_unit(vertices_[i].fpr, "ROC FPR");
    require_unit(vertices_[i].tpr, "ROC TPR");
    if (i > 0 && (vertices_[i].fpr < vertices_[i - 1].fpr ||
                  vertices_[i].tpr < vertices_[i - 1].tpr)) {
      throw DomainError("ROC curve is not monotone at vertex " + std::to_string(i));
    }
  }
}

std::optional<double> RocCurve::threshold_at(std::size_t vertex) const {
  if (thresholds_.empty()) return std::nullopt;
  return thresholds_.at(vertex);
}

RocCurve roc_from_scores(std::span<const ScoredRecord> records) {
  const std::vector<ScoredRecord> sorted = sorted_by_score_desc(records);
  const int group = records.empty() ? 0 : to_int(records.front().group);
  const auto positives = static_cast<std::uint64_t>(
      std::count_if(sorted.begin(), sorted.end(), [](const ScoredRecord& r) { return r.truth; }));
  const std::uint64_t negatives = sorted.size() - positives;
  if (positives == 0) throw UndefinedRate("TPR", group);
  if (negatives == 0) throw UndefinedRate("FPR", group);

  std::vector<PlanePoint> vertices{{0, 0}};
  std::vector<std::optional<double>> thresholds{std::nullopt};
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double score = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == score; ++i) {
      ++(sorted[i].truth ? tp : fp);
    }
    PlanePoint next{Rational(fp, negatives), Rational(tp, positives)};
    if (next == vertices.back()) continue;
    vertices.push_back(std::move(next));
    thresholds.push_back(score);
  }
  return RocCurve(std::move(vertices), std::move(thresholds));
}

std::array<OperationPoint, 2> chance_line_point(const Rational& q_star) {
  require_unit(q_star, "q*");
  std::array<OperationPoint, 2> out;
  for (GroupLabel g : kGroups) {
    OperationPoint& op = out[index_of(g)];
    op.group = g;
    op.point = {q_star, q_star};
    op.posterior = q_star;
    op.random_classifier = true;
  }
  return out;
}

OperationPoint parity_point_on_roc(const RocCurve& roc, GroupLabel group,
                                   const Rational& base_rate, const Rational& q_star) {
  require_open_unit(base_rate, "base-rate");
  const auto& v = roc.vertices();

  std::vector<Rational> q;
  q.reserve(v.size());
  for (const auto& pt : v) {
    q.push_back(posterior_at(pt, base_rate));
    if (q.size() > 1 && q.back() < q[q.size() - 2]) {
      throw std::logic_error("posterior decreases along a monotone ROC curve");
    }
  }
  if (q_star < q.front() || q_star > q.back()) {
    throw Unreachable(to_fraction_string(q_star), to_int(group));
  }

  OperationPoint op;
  op.group = group;
  op.posterior = q_star;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (q[i] == q_star) {
      op.point = v[i];
      op.threshold = roc.threshold_at(i);
      return op;
    }
    if (i + 1 < v.size() && q[i] < q_star && q_star < q[i + 1]) {
      // Between two thresholds; realizable by randomizing between them.
      const Rational t = (q_star - q[i]) / (q[i + 1] - q[i]);
      op.point = {v[i].fpr + t * (v[i + 1].fpr - v[i].fpr),
                  v[i].tpr + t * (v[i + 1].tpr - v[i].tpr)};
      return op;
    }
  }
  throw Unreachable(to_fraction_string(q_star), to_int(group));
}

std::array<OperationPoint, 2> parity_points_on_roc(const RocCurve& roc0, const RocCurve& roc1,
                                                   const Rational& p0, const Rational& p1,
                                                   const Rational& q_star) {
  return {parity_point_on_roc(roc0, GroupLabel::Unprotected, p0, q_star),
          parity_point_on_roc(roc1, GroupLabel::Protected, p1, q_star)};
}

SharedPointGaps shared_point_gaps(const Rational& fpr, const Rational& tpr, const Rational& p0,
                                  const Rational& p1) {
  SharedPointGaps out;
  out.q0 = posterior_from_rates(p0, tpr, fpr);
  out.q1 = posterior_from_rates(p1, tpr, fpr);
  out.parity_gap = out.q0 - out.q1;
  if (out.parity_gap != (p0 - p1) * (tpr - fpr)) {
    throw std::logic_error("parity gap does not factor as (p0 - p1)(tpr - fpr)");
  }
  return out;
}

std::vector<SweepRow> threshold_sweep(std::span<const ScoredRecord> records,
                                      std::optional<std::vector<double>> thresholds,
                                      const Rational& tolerance) {
  const std::vector<ScoredRecord> sorted = sorted_by_score_desc(records);

  std::array<GroupConfusion, 2> totals{};
  for (const auto& r : sorted) {
    GroupConfusion& c = totals[index_of(r.group)];
    ++(r.truth ? c.fn : c.tn);
  }
  for (int s = 0; s < 2; ++s) {
    if (totals[static_cast<std::size_t>(s)].positives() == 0) throw UndefinedRate("TPR", s);
    if (totals[static_cast<std::size_t>(s)].negatives() == 0) throw UndefinedRate("FPR", s);
  }

  std::vector<double> cuts;
  if (thresholds) {
    cuts = *thresholds;
    for (double t : cuts) {
      if (std::isnan(t)) throw DomainError("threshold is NaN");
    }
  } else {
    for (const auto& r : sorted) {
      if (cuts.empty() || cuts.back() != r.score) cuts.push_back(r.score);
    }
  }

  // Prefix counts: after k records (highest scores first) are predicted positive.
  std::vector<std::array<GroupConfusion, 2>> prefix(sorted.size() + 1);
  prefix[0] = totals;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    prefix[i + 1] = prefix[i];
    GroupConfusion& c = prefix[i + 1][index_of(sorted[i].group)];
    if (sorted[i].truth) {
      --c.fn;
      ++c.tp;
    } else {
      --c.tn;
      ++c.fp;
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(cuts.size());
  for (double t : cuts) {
    const auto flipped = static_cast<std::size_t>(
        std::partition_point(sorted.begin(), sorted.end(),
                             [t](const ScoredRecord& r) { return r.score >= t; }) -
        sorted.begin());
    SweepRow row;
    row.threshold = t;
    row.counts = prefix[flipped];
    row.report = full_report(stats_from_counts(row.counts[0], row.counts[1]), tolerance);
    rows.push_back(std::move(row));
  }
  return rows;
}

TradeoffResult select_operating_points(const RocCurve& roc0, const RocCurve& roc1,
                                       const Rational& p0, const Rational& p1,
                                       const Policy& policy, const Rational& tolerance,
                                       std::optional<Rational> pi1) {
  require_open_unit(p0, "p0");
  require_open_unit(p1, "p1");

  TradeoffResult result;
  if (const auto* parity = std::get_if<EnforceParity>(&policy)) {
    result.points = parity_points_on_roc(roc0, roc1, p0, p1, parity->q_star);
    result.scenario = "case_ii";
  } else if (const auto* odds = std::get_if<EnforceOdds>(&policy)) {
    PlanePoint shared;
    std::optional<double> threshold;
    if (odds->shared) {
      shared = *odds->shared;
      require_unit(shared.fpr, "FPR");
      require_unit(shared.tpr, "TPR");
      result.scenario = shared.fpr == shared.tpr ? "case_i" : "case_iv";
    } else {
      const OperationPoint anchor =
          parity_point_on_roc(roc0, GroupLabel::Unprotected, p0, odds->q_star);
      shared = anchor.point;
      threshold = anchor.threshold;
      result.scenario = shared.fpr == shared.tpr ? "case_i" : "case_iii";
    }
    const SharedPointGaps gaps = shared_point_gaps(shared.fpr, shared.tpr, p0, p1);
    result.points[0] = {GroupLabel::Unprotected, shared, threshold, gaps.q0, false};
    result.points[1] = {GroupLabel::Protected, shared, std::nullopt, gaps.q1, false};
  } else {
    const auto& random = std::get<RandomClassifier>(policy);
    result.points = chance_line_point(random.q_star);
    result.scenario = "case_i";
  }

  const PopulationStats stats =
      stats_from_rates({p0, result.points[0].point.fpr, result.points[0].point.tpr},
                       {p1, result.points[1].point.fpr, result.points[1].point.tpr}, pi1);
  result.report = full_report(stats, tolerance);
  return result;
}

}  // namespace fairaudit
