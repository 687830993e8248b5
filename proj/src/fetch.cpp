#include "gptest/fetch.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <string_view>
#include <vector>

#include <httplib.h>

#include "gptest/utc.hpp"

namespace gptest {

namespace {

void replace_all(std::string& s, std::string_view from, const std::string& to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
}

std::vector<std::string> split_row(std::string_view row) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : row) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(cell);
    for (auto& s : out) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
    }
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_time_cell(const std::string& cell, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec == std::errc{} && ptr == cell.data() + cell.size()) {
        return v;
    }
    try {
        return parse_iso8601(cell);
    } catch (const Error&) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad time '" + cell + "'");
    }
}

}  // namespace

HttpResponse HttplibClient::get(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::HttpError, "malformed URL '" + url + "'");
    }
    if (url.compare(0, scheme_end, "http") != 0) {
        throw Error(ErrorCode::HttpError, "only plain http is supported: '" + url + "'");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client cli(origin);
    cli.set_connection_timeout(timeout_seconds_);
    cli.set_read_timeout(timeout_seconds_);
    cli.set_follow_location(true);
    auto res = cli.Get(path);
    if (!res) {
        throw Error(ErrorCode::HttpError, "request to '" + url + "' failed: " + httplib::to_string(res.error()));
    }
    return HttpResponse{res->status, res->body};
}

std::string station_url(const std::string& station_id, const std::string& base_url, const FetchOptions& options) {
    std::string base = base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    std::string url = options.url_template;
    replace_all(url, "{base}", base);
    replace_all(url, "{station}", station_id);
    replace_all(url, "{variable}", options.variable);
    return url;
}

RawRecord parse_station_csv(const std::string& body, const std::string& station_id, const FetchOptions& options) {
    std::istringstream in(body);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \r\t") != std::string::npos) header = split_row(line);
    }
    if (header.empty()) {
        throw Error(ErrorCode::MissingVariable, "empty response for station '" + station_id + "'");
    }
    std::optional<std::size_t> time_col;
    std::optional<std::size_t> value_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!value_col && header[i].rfind(options.variable, 0) == 0) value_col = i;
        const std::string h = lower(header[i]);
        if (!time_col && (h.rfind("time", 0) == 0 || h.rfind("xyztime", 0) == 0 || h.rfind("utc_seconds", 0) == 0)) {
            time_col = i;
        }
    }
    if (!value_col) {
        throw Error(ErrorCode::MissingVariable,
                    "response for station '" + station_id + "' has no '" + options.variable + "' column");
    }
    if (!time_col) {
        throw Error(ErrorCode::ParseError, "response for station '" + station_id + "' has no time column");
    }

    RawRecord raw;
    raw.station_id = station_id;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
        const auto cells = split_row(line);
        if (cells.size() <= std::max(*time_col, *value_col)) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": too few columns");
        }
        const double ts = parse_time_cell(cells[*time_col], line_no);
        const std::string& cell = cells[*value_col];
        double value = std::numeric_limits<double>::quiet_NaN();
        if (!cell.empty() && lower(cell) != "nan") {
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad value '" + cell + "'");
            }
            if (options.fill_value && value == *options.fill_value) value = std::numeric_limits<double>::quiet_NaN();
        }
        raw.timestamps.push_back(ts);
        raw.values.push_back(value);
    }
    return raw;
}

RawRecord fetch_station(const std::string& station_id, const std::string& base_url, HttpClient& client,
                        const FetchOptions& options) {
    const HttpResponse res = client.get(station_url(station_id, base_url, options));
    if (res.status == 404) {
        throw Error(ErrorCode::UnknownStation, "station '" + station_id + "' not found");
    }
    if (res.status < 200 || res.status >= 300) {
        throw Error(ErrorCode::HttpError, "HTTP status " + std::to_string(res.status) + " for station '" + station_id + "'");
    }
    return parse_station_csv(res.body, station_id, options);
}

}  // namespace gptest
