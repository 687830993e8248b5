#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gptest/series.hpp"

namespace gptest {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Transport used by fetch_station. Production code uses HttplibClient; tests inject canned responses.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    /// Throws HttpError when the request cannot be completed at all.
    virtual HttpResponse get(const std::string& url) = 0;
};

/// Plain-HTTP client on cpp-httplib. `https://` URLs fail with HttpError.
class HttplibClient final : public HttpClient {
public:
    explicit HttplibClient(int timeout_seconds = 60) : timeout_seconds_(timeout_seconds) {}
    HttpResponse get(const std::string& url) override;

private:
    int timeout_seconds_;
};

struct FetchOptions {
    std::string variable = "xyzZDisplacement";
    /// {base}, {station} and {variable} are substituted. The default matches a THREDDS
    /// NetCDF-subset endpoint that returns CSV.
    std::string url_template = "{base}/{station}p1_rt.nc?var={variable}&accept=csv";
    std::optional<double> fill_value;
};

[[nodiscard]] std::string station_url(const std::string& station_id, const std::string& base_url,
                                      const FetchOptions& options = {});

/// GETs the station's displacement stream as CSV. The header must name a time column
/// (`time...`, numeric seconds or ISO-8601) and a column starting with the variable name.
///
/// 404 -> UnknownStation, other non-2xx -> HttpError, variable column absent -> MissingVariable,
/// malformed rows -> ParseError.
[[nodiscard]] RawRecord fetch_station(const std::string& station_id, const std::string& base_url,
                                      HttpClient& client, const FetchOptions& options = {});

/// Parses the CSV body of a fetch response.
[[nodiscard]] RawRecord parse_station_csv(const std::string& body, const std::string& station_id,
                                          const FetchOptions& options = {});

}  // namespace gptest
