#include <fairaudit/errors.hpp>
#include <fairaudit/records_io.hpp>
#include <fairaudit/running_example.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace fairaudit {
namespace {

AuditConfig prediction_config() {
  AuditConfig cfg;
  cfg.prediction_column = "yhat";
  return cfg;
}

TEST(ReadRecords, SingleRow) {
  std::istringstream in("group,y,yhat\n1,1,0\n");
  const auto r = read_records(in, prediction_config());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (Record{1, 1, 0}));
}

TEST(ReadRecords, ColumnOrderQuotesAndBlankLines) {
  std::istringstream in("yhat,\"note, with comma\",group,y\r\n\n0,\"a,b\",0,1\r\n1,x,1,0\n");
  const auto r = read_records(in, prediction_config());
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (Record{0, 1, 0}));
  EXPECT_EQ(r[1], (Record{1, 0, 1}));
}

TEST(ReadRecords, TabDelimiter) {
  AuditConfig cfg = prediction_config();
  cfg.delimiter = '\t';
  std::istringstream in("group\ty\tyhat\n0\t0\t1\n");
  EXPECT_EQ(read_records(in, cfg).at(0), (Record{0, 0, 1}));
}

TEST(ReadRecords, UnmappedGroupLabelIsMalformed) {
  std::istringstream in("group,y,yhat\nM,1,1\nF,1,0\n");
  try {
    read_records(in, prediction_config());
    FAIL() << "expected MalformedRecord";
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), "group");
    EXPECT_EQ(e.value(), "M");
  }
}

TEST(ReadRecords, LabelMapping) {
  AuditConfig cfg = prediction_config();
  cfg.protected_label = "F";
  std::istringstream in("group,y,yhat\nM,1,1\nF,1,0\nX,0,0\n");
  const auto r = read_records(in, cfg);
  EXPECT_EQ(r[0].group, 0);
  EXPECT_EQ(r[1].group, 1);
  EXPECT_EQ(r[2].group, 0);

  cfg.unprotected_label = "M";
  std::istringstream strict("group,y,yhat\nM,1,1\nX,0,0\n");
  EXPECT_THROW(read_records(strict, cfg), MalformedRecord);
}

TEST(ReadRecords, MissingColumnAndBadValues) {
  std::istringstream no_col("group,y,pred\n0,1,1\n");
  try {
    read_records(no_col, prediction_config());
    FAIL() << "expected MissingColumn";
  } catch (const MissingColumn& e) {
    EXPECT_EQ(e.column(), "yhat");
  }
  std::istringstream bad_truth("group,y,yhat\n0,2,1\n");
  EXPECT_THROW(read_records(bad_truth, prediction_config()), MalformedRecord);
  std::istringstream short_row("group,y,yhat\n0,1\n");
  EXPECT_THROW(read_records(short_row, prediction_config()), MalformedRecord);
  std::istringstream empty("");
  EXPECT_THROW(read_records(empty, prediction_config()), Error);
  EXPECT_THROW(read_records(std::string("/nonexistent/file.csv"), prediction_config()), Error);
}

TEST(ReadScoredRecords, ParsesScores) {
  AuditConfig cfg;
  cfg.score_column = "score";
  std::istringstream in("group,y,score\n0,1,0.9\n1,0,-1e-3\n");
  const auto r = read_scored_records(in, cfg);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].score, 0.9);
  EXPECT_TRUE(r[0].truth);
  EXPECT_EQ(r[1].group, GroupLabel::Protected);
  EXPECT_EQ(r[1].score, -1e-3);
  std::istringstream bad("group,y,score\n0,1,abc\n");
  EXPECT_THROW(read_scored_records(bad, cfg), MalformedRecord);
  std::istringstream inf("group,y,score\n0,1,inf\n");
  EXPECT_THROW(read_scored_records(inf, cfg), MalformedRecord);
}

TEST(AuditConfig, Validation) {
  AuditConfig cfg;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.prediction_column = "yhat";
  EXPECT_NO_THROW(cfg.validate());
  cfg.score_column = "score";
  EXPECT_THROW(cfg.validate(), Error);
  cfg.score_column.reset();
  cfg.tolerance = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(RunningExample, CountsForEachPoint) {
  using C = GroupConfusion;
  EXPECT_EQ(generate_running_example(RunningPoint::A).counts,
            (std::array<C, 2>{C{600, 1400, 1200, 2800}, C{60, 140, 540, 1260}}));
  EXPECT_EQ(generate_running_example(RunningPoint::B).counts,
            (std::array<C, 2>{C{1400, 600, 1200, 2800}, C{140, 60, 540, 1260}}));
  EXPECT_EQ(generate_running_example(RunningPoint::C).counts,
            (std::array<C, 2>{C{1400, 600, 400, 3600}, C{140, 60, 460, 1340}}));
  EXPECT_EQ(parse_running_point("b"), RunningPoint::B);
  EXPECT_THROW(parse_running_point("D"), Error);
}

// generate -> write -> read -> count reproduces the counts and the
// published derived values for every point.
TEST(RunningExample, RoundTrip) {
  for (RunningPoint p : {RunningPoint::A, RunningPoint::B, RunningPoint::C}) {
    const auto ex = generate_running_example(p);
    EXPECT_EQ(ex.records.size(), 8000u);
    std::stringstream file;
    write_records(file, ex.records);
    const auto records = read_records(file, prediction_config());
    const auto counts = counts_from_records(records);
    EXPECT_EQ(counts, ex.counts);
    const auto stats = stats_from_counts(counts[0], counts[1]);
    for (std::size_t g = 0; g < 2; ++g) {
      const auto& got = stats.groups[g];
      const auto& want = ex.expected.groups[g];
      EXPECT_EQ(got.demographic_rate, want.demographic_rate);
      EXPECT_EQ(got.base_rate, want.base_rate);
      EXPECT_EQ(got.posterior, want.posterior);
      EXPECT_EQ(got.fpr, want.fpr);
      EXPECT_EQ(got.tpr, want.tpr);
      EXPECT_EQ(got.fnr, want.fnr);
    }
  }
}

}  // namespace
}  // namespace fairaudit
