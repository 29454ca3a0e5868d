#pragma once

// Report serialization. JSON reports carry `schema_version: 1`; every
// number is written both as an exact fraction string and as a decimal.

#include "fairaudit/compatibility.hpp"
#include "fairaudit/measures.hpp"
#include "fairaudit/records_io.hpp"
#include "fairaudit/roc.hpp"

#include <string>

namespace fairaudit {

inline constexpr int kReportSchemaVersion = 1;

// Text or JSON. With a diagnosis, `verdict` is the compatibility verdict
// (or `equalized_odds_not_met`); without one it is `satisfied`/`violated`.
std::string emit_report(const FairnessReport& report, const Diagnosis* diagnosis,
                        OutputFormat format);

std::string emit_tradeoff(const TradeoffResult& result, OutputFormat format);

}  // namespace fairaudit
