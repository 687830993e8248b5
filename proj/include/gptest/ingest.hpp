#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gptest/series.hpp"

namespace gptest {

struct IngestOptions {
    std::size_t n_max = 30000;
    std::optional<double> fill_value;  // extra missing marker besides empty/NaN
};

/// Reads `utc_seconds,displacement_m` rows (header optional, empty field or NaN = missing).
/// ParseError carries the 1-based line number.
[[nodiscard]] RawRecord read_csv_record(std::istream& in, std::string station_id,
                                        std::optional<double> fill_value = std::nullopt);

/// read_csv_record on a file; station id is the file stem. IoError if it cannot be opened.
[[nodiscard]] RawRecord read_csv_file(const std::filesystem::path& path, std::optional<double> fill_value = std::nullopt);
/// Station id is the file stem. Parses, keeps the first n_max stored samples, then cleans.
[[nodiscard]] TimeSeries ingest_file(const std::filesystem::path& path, const IngestOptions& options = {});

/// truncate_to_first followed by clean.
[[nodiscard]] TimeSeries ingest_record(const RawRecord& raw, std::size_t n_max = 30000);

void write_csv(std::ostream& out, const RawRecord& raw);
void write_csv(std::ostream& out, const TimeSeries& series);

}  // namespace gptest
