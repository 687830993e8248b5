#pragma once

#include <string>
#include <vector>

#include "gptest/pipeline.hpp"

namespace gptest {

/// Three decimals with the leading zero dropped below 1: 0.04966946 -> ".050", 1.2315 -> "1.232".
[[nodiscard]] std::string format_p(double p);

/// Renders reports (already in any order; they are sorted here) with a config header.
/// Every p-value is printed to three decimals in CSV/Markdown; JSON keeps full precision.
[[nodiscard]] std::string emit_report(std::vector<StationReport> reports, ReportFormat format, const RunConfig& cfg);

/// Inverse of the JSON emitter.
[[nodiscard]] std::vector<StationReport> parse_report_json(const std::string& text);

}  // namespace gptest
