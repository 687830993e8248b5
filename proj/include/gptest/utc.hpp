#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gptest {

/// "Thursday January 21st 2021 16:03:20" (GMT). Fractional seconds are truncated.
[[nodiscard]] std::string format_utc(std::int64_t seconds);

/// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z]" (or with a space separator) to seconds UTC.
/// ParseError on malformed input.
[[nodiscard]] double parse_iso8601(std::string_view text);

}  // namespace gptest
