#include "fairaudit/records_io.hpp"

#include "fairaudit/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>

namespace fairaudit {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one line; double-quoted fields may contain the delimiter and "" escapes.
std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(trim(std::move(current)));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(std::move(current)));
  return fields;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw MissingColumn(name);
}

struct Columns {
  std::size_t group;
  std::size_t truth;
  std::size_t value;  // prediction or score
  std::string value_name;
};

// Calls `row_fn(line_number, fields)` for every non-blank data row.
template <typename RowFn>
void for_each_row(std::istream& in, const AuditConfig& config, const std::string& value_column,
                  RowFn row_fn) {
  std::string line;
  std::size_t line_number = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    header = split_fields(line, config.delimiter);
    break;
  }
  if (header.empty()) throw Error("input has no header row");
  if (!header.front().empty() && header.front().rfind("\xEF\xBB\xBF", 0) == 0) {
    header.front().erase(0, 3);
  }

  const Columns cols{column_index(header, config.group_column),
                     column_index(header, config.truth_column),
                     column_index(header, value_column), value_column};
  const std::size_t needed = std::max({cols.group, cols.truth, cols.value}) + 1;

  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line, config.delimiter);
    if (fields.size() < needed) {
      throw MalformedRecord(line_number, header[std::min(fields.size(), needed - 1)], "");
    }
    row_fn(line_number, fields, cols);
  }
}

int parse_group(const std::string& value, std::size_t row, const AuditConfig& config) {
  if (config.protected_label || config.unprotected_label) {
    if (config.protected_label && value == *config.protected_label) return 1;
    if (config.unprotected_label && value == *config.unprotected_label) return 0;
    if (config.protected_label && !config.unprotected_label) return 0;
    throw MalformedRecord(row, config.group_column, value);
  }
  if (value == "0") return 0;
  if (value == "1") return 1;
  throw MalformedRecord(row, config.group_column, value);
}

int parse_binary(const std::string& value, std::size_t row, const std::string& column) {
  if (value == "0") return 0;
  if (value == "1") return 1;
  throw MalformedRecord(row, column, value);
}

double parse_score(const std::string& value, std::size_t row, const std::string& column) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (!value.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw MalformedRecord(row, column, value);
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error("cannot open input file '" + path + "'");
  return file;
}

}  // namespace

void AuditConfig::validate() const {
  if (prediction_column.has_value() == score_column.has_value()) {
    throw Error("configure exactly one of the prediction and score columns");
  }
  if (tolerance <= 0) throw Error("tolerance must be positive");
  if (protected_label && unprotected_label && *protected_label == *unprotected_label) {
    throw Error("protected and unprotected labels must differ");
  }
}

std::vector<Record> read_records(std::istream& in, const AuditConfig& config) {
  if (!config.prediction_column) throw Error("no prediction column configured");
  std::vector<Record> records;
  for_each_row(in, config, *config.prediction_column,
               [&](std::size_t row, const std::vector<std::string>& f, const Columns& c) {
                 records.push_back({parse_group(f[c.group], row, config),
                                    parse_binary(f[c.truth], row, config.truth_column),
                                    parse_binary(f[c.value], row, c.value_name)});
               });
  return records;
}

std::vector<Record> read_records(const std::string& path, const AuditConfig& config) {
  if (path == "-") return read_records(std::cin, config);
  std::ifstream file = open_input(path);
  return read_records(file, config);
}

std::vector<ScoredRecord> read_scored_records(std::istream& in, const AuditConfig& config) {
  if (!config.score_column) throw Error("no score column configured");
  std::vector<ScoredRecord> records;
  for_each_row(in, config, *config.score_column,
               [&](std::size_t row, const std::vector<std::string>& f, const Columns& c) {
                 const int group = parse_group(f[c.group], row, config);
                 records.push_back({static_cast<GroupLabel>(group),
                                    parse_binary(f[c.truth], row, config.truth_column) == 1,
                                    parse_score(f[c.value], row, c.value_name)});
               });
  return records;
}

std::vector<ScoredRecord> read_scored_records(const std::string& path,
                                              const AuditConfig& config) {
  if (path == "-") return read_scored_records(std::cin, config);
  std::ifstream file = open_input(path);
  return read_scored_records(file, config);
}

void write_records(std::ostream& out, std::span<const Record> records, char delimiter) {
  out << "group" << delimiter << "y" << delimiter << "yhat" << '\n';
  for (const Record& r : records) {
    out << r.group << delimiter << r.truth << delimiter << r.prediction << '\n';
  }
}

}  // namespace fairaudit
