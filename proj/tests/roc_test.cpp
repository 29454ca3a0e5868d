#include <fairaudit/errors.hpp>
#include <fairaudit/roc.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <cmath>
#include <random>

namespace fairaudit {
namespace {

std::vector<ScoredRecord> group_records(GroupLabel g, std::vector<double> pos,
                                        std::vector<double> neg) {
  std::vector<ScoredRecord> out;
  for (double s : pos) out.push_back({g, true, s});
  for (double s : neg) out.push_back({g, false, s});
  return out;
}

std::vector<PlanePoint> pts(std::initializer_list<std::pair<Rational, Rational>> xs) {
  std::vector<PlanePoint> out;
  for (const auto& [f, t] : xs) out.push_back({f, t});
  return out;
}

RocCurve fig4_like() {
  return RocCurve(pts({{0, 0}, {Rational(1, 10), Rational(7, 10)}, {1, 1}}));
}

TEST(RocFromScores, PerfectlySeparable) {
  const auto r = group_records(GroupLabel::Unprotected, {0.9}, {0.2});
  const auto roc = roc_from_scores(r);
  EXPECT_EQ(roc.vertices(), pts({{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_FALSE(roc.threshold_at(0));
  EXPECT_EQ(*roc.threshold_at(1), 0.9);
}

TEST(RocFromScores, FourRecordStaircase) {
  const auto r = group_records(GroupLabel::Unprotected, {0.9, 0.4}, {0.6, 0.2});
  const auto roc = roc_from_scores(r);
  const Rational h(1, 2);
  EXPECT_EQ(roc.vertices(), pts({{0, 0}, {0, h}, {h, h}, {h, 1}, {1, 1}}));
}

TEST(RocFromScores, TiesMoveTogether) {
  const auto r = group_records(GroupLabel::Protected, {0.5, 0.5}, {0.5, 0.5, 0.5});
  EXPECT_EQ(roc_from_scores(r).vertices(), pts({{0, 0}, {1, 1}}));
}

TEST(RocFromScores, NeedsBothClasses) {
  EXPECT_THROW(roc_from_scores(group_records(GroupLabel::Protected, {0.5}, {})), UndefinedRate);
  EXPECT_THROW(roc_from_scores(group_records(GroupLabel::Protected, {}, {0.1})), UndefinedRate);
  EXPECT_THROW(roc_from_scores(group_records(GroupLabel::Protected, {NAN}, {0.1})), DomainError);
}

// Staircase vertices equal the brute-force set of per-threshold points, and
// the posterior is non-decreasing along the curve for every base-rate.
TEST(RocFromScores, MatchesThresholdEnumeration) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coarse(0, 12);  // forces ties
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoredRecord> recs;
    std::vector<std::pair<bool, double>> plain;
    const int n = 2 + trial % 40;
    for (int i = 0; i < n; ++i) {
      const bool truth = i == 0 ? true : i == 1 ? false : coin(rng);
      const double score = coarse(rng) / 12.0;
      recs.push_back({GroupLabel::Unprotected, truth, score});
      plain.emplace_back(truth, score);
    }
    const auto roc = roc_from_scores(recs);
    const auto expected = oracle::roc_by_enumeration(plain);
    ASSERT_EQ(roc.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(to_double(roc.vertices()[i].fpr), expected[i].first);
      EXPECT_EQ(to_double(roc.vertices()[i].tpr), expected[i].second);
    }
    for (int k = 1; k < 10; ++k) {
      const Rational p(k, 10);
      for (std::size_t i = 1; i < roc.size(); ++i) {
        const auto& a = roc.vertices()[i - 1];
        const auto& b = roc.vertices()[i];
        EXPECT_LE(p * a.tpr + (1 - p) * a.fpr, p * b.tpr + (1 - p) * b.fpr);
      }
    }
  }
}

TEST(RocCurve, RejectsInvalidVertices) {
  EXPECT_THROW(RocCurve(pts({{0, 0}})), DomainError);
  EXPECT_THROW(RocCurve(pts({{0, Rational(1, 10)}, {1, 1}})), DomainError);
  EXPECT_THROW(RocCurve(pts({{0, 0}, {Rational(1, 2), 1}})), DomainError);
  EXPECT_THROW(RocCurve(pts({{0, 0}, {Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), 1}, {1, 1}})),
               DomainError);
  EXPECT_THROW(RocCurve(pts({{0, 0}, {1, 1}}), {std::nullopt}), DomainError);
}

TEST(ChanceLinePoint, BothGroupsOnDiagonal) {
  for (const Rational q : {Rational(3, 10), Rational(7, 10), Rational(0)}) {
    const auto ops = chance_line_point(q);
    for (const auto& op : ops) {
      EXPECT_EQ(op.point, (PlanePoint{q, q}));
      EXPECT_EQ(op.posterior, q);
      EXPECT_TRUE(op.random_classifier);
    }
    EXPECT_EQ(ops[1].group, GroupLabel::Protected);
  }
}

TEST(ParityPointsOnRoc, CaseTwoExample) {
  const auto roc = fig4_like();
  const auto ops = parity_points_on_roc(roc, roc, Rational(1, 3), Rational(1, 10), Rational(3, 10));
  EXPECT_EQ(ops[0].point, (PlanePoint{Rational(1, 10), Rational(7, 10)}));
  EXPECT_EQ(ops[1].point, (PlanePoint{Rational(1, 4), Rational(3, 4)}));
  EXPECT_EQ(Rational(1, 3) * ops[0].point.tpr + Rational(2, 3) * ops[0].point.fpr, Rational(3, 10));
  EXPECT_EQ(Rational(1, 10) * ops[1].point.tpr + Rational(9, 10) * ops[1].point.fpr,
            Rational(3, 10));

  const auto zero = parity_points_on_roc(roc, roc, Rational(1, 3), Rational(1, 10), 0);
  EXPECT_EQ(zero[0].point, (PlanePoint{0, 0}));
  EXPECT_EQ(zero[1].point, (PlanePoint{0, 0}));
}

TEST(ParityPointsOnRoc, AgreesWithBisection) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> fs{0, u(rng), u(rng), u(rng), 1};
    std::vector<double> ts{0, u(rng), u(rng), u(rng), 1};
    std::sort(fs.begin(), fs.end());
    std::sort(ts.begin(), ts.end());
    std::vector<PlanePoint> v;
    std::vector<std::pair<double, double>> plain;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      v.push_back({rational_from_double(fs[i]), rational_from_double(ts[i])});
      plain.emplace_back(fs[i], ts[i]);
    }
    const RocCurve roc(v);
    const double p = 0.01 + 0.98 * u(rng);
    const double q = u(rng);
    const auto op = parity_point_on_roc(roc, GroupLabel::Protected, rational_from_double(p),
                                        rational_from_double(q));
    const auto [bf, bt] = oracle::parity_point_by_bisection(plain, p, q);
    const double f = to_double(op.point.fpr);
    const double t = to_double(op.point.tpr);
    EXPECT_LE(std::abs(p * t + (1 - p) * f - q), 1e-10);
    EXPECT_NEAR(f, bf, 1e-9);
    EXPECT_NEAR(t, bt, 1e-9);
  }
}

TEST(ParityPointOnRoc, RepeatedVertexPicksFirst) {
  const RocCurve roc(pts({{0, 0}, {Rational(1, 5), Rational(3, 5)}, {Rational(1, 5), Rational(3, 5)}, {1, 1}}),
                     {std::nullopt, 0.8, 0.7, 0.1});
  const Rational p(1, 2);
  const Rational q = p * Rational(3, 5) + (1 - p) * Rational(1, 5);
  const auto op = parity_point_on_roc(roc, GroupLabel::Unprotected, p, q);
  EXPECT_EQ(*op.threshold, 0.8);
}

TEST(ParityPointOnRoc, Errors) {
  const auto roc = fig4_like();
  EXPECT_THROW(parity_point_on_roc(roc, GroupLabel::Protected, Rational(1, 10), Rational(11, 10)),
               Unreachable);
  EXPECT_THROW(parity_point_on_roc(roc, GroupLabel::Protected, 0, Rational(1, 10)), DomainError);
  EXPECT_THROW(parity_point_on_roc(roc, GroupLabel::Protected, 1, Rational(1, 10)), DomainError);
}

TEST(SharedPointGaps, Examples) {
  const auto b = shared_point_gaps(Rational(3, 10), Rational(7, 10), Rational(1, 3), Rational(1, 10));
  EXPECT_EQ(b.q0, Rational(13, 30));
  EXPECT_EQ(b.q1, Rational(34, 100));
  EXPECT_EQ(b.parity_gap, Rational(7, 75));
  const auto a = shared_point_gaps(Rational(3, 10), Rational(3, 10), Rational(1, 3), Rational(1, 10));
  EXPECT_EQ(a.q0, Rational(3, 10));
  EXPECT_EQ(a.q1, Rational(3, 10));
  EXPECT_EQ(shared_point_gaps(Rational(2, 7), Rational(2, 7), Rational(9, 10), Rational(1, 5)).parity_gap, 0);
  EXPECT_THROW(shared_point_gaps(Rational(2), 0, 0, 0), DomainError);
}

std::vector<ScoredRecord> two_group_sample() {
  auto r = group_records(GroupLabel::Unprotected, {0.9, 0.4}, {0.6, 0.2});
  auto r1 = group_records(GroupLabel::Protected, {0.9, 0.4}, {0.6, 0.2});
  r.insert(r.end(), r1.begin(), r1.end());
  return r;
}

TEST(ThresholdSweep, SharedThreshold) {
  const auto rows = threshold_sweep(two_group_sample(), std::vector<double>{0.5, 10.0, -10.0});
  ASSERT_EQ(rows.size(), 3u);
  const auto& g0 = rows[0].report.stats.groups[0];
  EXPECT_EQ(*g0.fpr, Rational(1, 2));
  EXPECT_EQ(*g0.tpr, Rational(1, 2));
  for (const auto& g : rows[1].report.stats.groups) {
    EXPECT_EQ(*g.fpr, 0);
    EXPECT_EQ(*g.tpr, 0);
    EXPECT_EQ(g.posterior, 0);
  }
  for (const auto& g : rows[2].report.stats.groups) {
    EXPECT_EQ(*g.fpr, 1);
    EXPECT_EQ(*g.tpr, 1);
    EXPECT_EQ(g.posterior, 1);
  }
}

TEST(ThresholdSweep, DefaultThresholdsAndIdentity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.3);
  std::vector<ScoredRecord> recs;
  for (int i = 0; i < 300; ++i) {
    const auto g = static_cast<GroupLabel>(i % 2);
    const bool truth = i < 4 ? (i / 2) == 0 : coin(rng);
    recs.push_back({g, truth, std::round(u(rng) * 50) / 50 + (truth ? 0.1 : 0.0)});
  }
  const auto rows = threshold_sweep(recs);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].threshold, rows[i - 1].threshold);
  for (const auto& row : rows) {
    EXPECT_EQ(row.counts[0].total() + row.counts[1].total(), recs.size());
    for (const auto& g : row.report.stats.groups) {
      EXPECT_EQ(g.base_rate * *g.tpr + (1 - g.base_rate) * *g.fpr, g.posterior);
    }
    // Direct count at this threshold.
    std::uint64_t fp0 = 0;
    for (const auto& r : recs) fp0 += (r.group == GroupLabel::Unprotected && !r.truth && r.score >= row.threshold);
    EXPECT_EQ(row.counts[0].fp, fp0);
  }
  EXPECT_THROW(threshold_sweep(group_records(GroupLabel::Unprotected, {0.3}, {0.1})), UndefinedRate);
}

TEST(SelectOperatingPoints, PolicyMenu) {
  const auto roc = fig4_like();
  const Rational a(1, 3), b(1, 10);

  const auto parity = select_operating_points(roc, roc, a, b, EnforceParity{Rational(3, 10)});
  EXPECT_EQ(parity.scenario, "case_ii");
  EXPECT_TRUE(parity.report.at(Measure::StatisticalParity).satisfied);
  EXPECT_EQ(*parity.report.at(Measure::PredictiveEquality).gap, Rational(1, 10) - Rational(1, 4));
  EXPECT_EQ(*parity.report.at(Measure::EqualOpportunity).gap, Rational(7, 10) - Rational(3, 4));

  const auto odds = select_operating_points(roc, roc, a, b, EnforceOdds{std::nullopt, Rational(3, 10)});
  EXPECT_EQ(odds.scenario, "case_iii");
  EXPECT_EQ(odds.points[1].point, (PlanePoint{Rational(1, 10), Rational(7, 10)}));
  EXPECT_EQ(*odds.report.at(Measure::StatisticalParity).gap, (a - b) * Rational(6, 10));
  EXPECT_FALSE(odds.report.at(Measure::StatisticalParity).satisfied);
  EXPECT_TRUE(odds.report.at(Measure::PredictiveEquality).satisfied);

  const auto shared = select_operating_points(
      roc, roc, a, b, EnforceOdds{PlanePoint{Rational(3, 10), Rational(7, 10)}, 0}, default_tolerance(),
      Rational(1, 4));
  EXPECT_EQ(shared.scenario, "case_iv");
  EXPECT_EQ(*shared.report.at(Measure::StatisticalParity).gap, Rational(7, 75));

  const auto random = select_operating_points(roc, roc, a, b, RandomClassifier{Rational(3, 10)},
                                              default_tolerance(), Rational(1, 4));
  EXPECT_EQ(random.scenario, "case_i");
  for (const auto& g : random.report.measures) {
    ASSERT_TRUE(g.gap);
    EXPECT_EQ(*g.gap, 0);
  }
  EXPECT_THROW(select_operating_points(roc, roc, 0, b, RandomClassifier{0}), DomainError);
}

}  // namespace
}  // namespace fairaudit
