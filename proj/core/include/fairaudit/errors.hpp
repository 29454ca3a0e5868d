#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fairaudit {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rate or probability argument outside its admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyGroup : public Error {
 public:
  explicit EmptyGroup(int group)
      : Error("group S=" + std::to_string(group) + " has no records"), group_(group) {}
  int group() const noexcept { return group_; }

 private:
  int group_;
};

// A rate whose denominator is zero for the named group (no ground-truth
// negatives for FPR, no ground-truth positives for TPR/FNR).
class UndefinedRate : public Error {
 public:
  UndefinedRate(std::string rate, int group)
      : Error(rate + " is undefined for group S=" + std::to_string(group)),
        rate_(std::move(rate)),
        group_(group) {}
  const std::string& rate() const noexcept { return rate_; }
  int group() const noexcept { return group_; }

 private:
  std::string rate_;
  int group_;
};

class NoPositivePredictions : public Error {
 public:
  NoPositivePredictions() : Error("no positive predictions in either group") {}
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t row, std::string column, std::string value)
      : Error("malformed record at row " + std::to_string(row) + ", column '" + column +
              "': '" + value + "'"),
        row_(row),
        column_(std::move(column)),
        value_(std::move(value)) {}
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }
  const std::string& value() const noexcept { return value_; }

 private:
  std::size_t row_;
  std::string column_;
  std::string value_;
};

class MissingColumn : public Error {
 public:
  explicit MissingColumn(std::string column)
      : Error("missing column '" + column + "'"), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class ParallelLines : public Error {
 public:
  ParallelLines() : Error("performance lines are parallel (equal base-rates)") {}
};

// Explicit slope-intercept form requested for a line with base-rate 0.
class DegenerateBaseRate : public Error {
 public:
  DegenerateBaseRate()
      : Error("base-rate 0: line has no slope-intercept form (it is FPR = q)") {}
};

class Unreachable : public Error {
 public:
  Unreachable(std::string q_star, int group)
      : Error("posterior " + q_star + " is not reachable on the ROC curve of group S=" +
              std::to_string(group)),
        group_(group) {}
  int group() const noexcept { return group_; }

 private:
  int group_;
};

}  // namespace fairaudit
