#pragma once

// Header-based delimited-text ingestion of audit records.

#include "fairaudit/confusion.hpp"
#include "fairaudit/measures.hpp"
#include "fairaudit/roc.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

enum class OutputFormat { Text, Json, Svg };

struct AuditConfig {
  std::string input_path;  // "-" reads standard input
  char delimiter = ',';
  std::string group_column = "group";
  std::string truth_column = "y";
  std::optional<std::string> prediction_column;
  std::optional<std::string> score_column;
  // Group labels in the file. Without a mapping only "0" and "1" are
  // accepted. With only a protected label, every other value is group 0.
  std::optional<std::string> protected_label;
  std::optional<std::string> unprotected_label;
  Rational tolerance = default_tolerance();
  OutputFormat format = OutputFormat::Text;

  // Throws Error unless exactly one of prediction/score column is set and
  // tolerance > 0.
  void validate() const;
};

// MalformedRecord rows are 1-based file line numbers (the header is line 1).
std::vector<Record> read_records(std::istream& in, const AuditConfig& config);
std::vector<Record> read_records(const std::string& path, const AuditConfig& config);

std::vector<ScoredRecord> read_scored_records(std::istream& in, const AuditConfig& config);
std::vector<ScoredRecord> read_scored_records(const std::string& path,
                                              const AuditConfig& config);

// Writes a `group,y,yhat` file readable with the default configuration.
void write_records(std::ostream& out, std::span<const Record> records, char delimiter = ',');

}  // namespace fairaudit
