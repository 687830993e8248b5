#include "gptest/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>

namespace gptest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool is_nan_token(std::string_view s) {
    return s.size() == 3 && (s[0] == 'N' || s[0] == 'n') && (s[1] == 'A' || s[1] == 'a') && (s[2] == 'N' || s[2] == 'n');
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

RawRecord read_csv_record(std::istream& in, std::string station_id, std::optional<double> fill_value) {
    RawRecord raw;
    raw.station_id = std::move(station_id);
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = trim(line);
        if (line_no == 1 && row.size() >= 3 && row.substr(0, 3) == "\xEF\xBB\xBF") row.remove_prefix(3);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos) parse_fail(line_no, "expected two comma-separated columns");
        const std::string_view time_field = trim(row.substr(0, comma));
        const std::string_view value_field = trim(row.substr(comma + 1));
        if (value_field.find(',') != std::string_view::npos) parse_fail(line_no, "expected exactly two columns");

        const auto ts = parse_double(time_field);
        if (!ts) {
            if (first_content) {  // header
                first_content = false;
                continue;
            }
            parse_fail(line_no, "timestamp '" + std::string(time_field) + "' is not a number");
        }
        first_content = false;

        double value = std::numeric_limits<double>::quiet_NaN();
        if (!value_field.empty() && !is_nan_token(value_field)) {
            const auto v = parse_double(value_field);
            if (!v) parse_fail(line_no, "value '" + std::string(value_field) + "' is not a number");
            value = *v;
            if (fill_value && value == *fill_value) value = std::numeric_limits<double>::quiet_NaN();
        }
        raw.timestamps.push_back(*ts);
        raw.values.push_back(value);
    }
    return raw;
}

TimeSeries ingest_record(const RawRecord& raw, std::size_t n_max) {
    return clean(truncate_to_first(raw, n_max), raw.values.size());
}

RawRecord read_csv_file(const std::filesystem::path& path, std::optional<double> fill_value) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    return read_csv_record(in, path.stem().string(), fill_value);
}

TimeSeries ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
    return ingest_record(read_csv_file(path, options.fill_value), options.n_max);
}

namespace {

void write_row(std::ostream& out, double ts, double v) {
    out << std::setprecision(15) << ts << ',';
    if (std::isnan(v)) {
        out << "NaN";
    } else {
        out << std::setprecision(17) << v;
    }
    out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const RawRecord& raw) {
    out << "utc_seconds,displacement_m\n";
    for (std::size_t i = 0; i < raw.values.size(); ++i) write_row(out, raw.timestamps[i], raw.values[i]);
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    out << "utc_seconds,displacement_m\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        write_row(out, series.timestamps()[i], series.values()(static_cast<Eigen::Index>(i)));
    }
}

}  // namespace gptest
