#include "gptest/utc.hpp"

#include <array>
#include <charconv>
#include <chrono>

#include "gptest/error.hpp"

namespace gptest {

namespace {

constexpr std::array<std::string_view, 7> kWeekdays{"Sunday",   "Monday", "Tuesday", "Wednesday",
                                                   "Thursday", "Friday", "Saturday"};
constexpr std::array<std::string_view, 12> kMonths{"January", "February", "March",     "April",   "May",      "June",
                                                  "July",    "August",   "September", "October", "November", "December"};

std::string_view ordinal_suffix(unsigned day) {
    if (day % 100 >= 11 && day % 100 <= 13) return "th";
    switch (day % 10) {
        case 1: return "st";
        case 2: return "nd";
        case 3: return "rd";
        default: return "th";
    }
}

std::string two_digits(long v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

int parse_int(std::string_view text, std::size_t pos, std::size_t len) {
    int value = 0;
    if (pos + len > text.size()) {
        throw Error(ErrorCode::ParseError, "malformed timestamp '" + std::string(text) + "'");
    }
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len) {
        throw Error(ErrorCode::ParseError, "malformed timestamp '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string format_utc(std::int64_t seconds) {
    using namespace std::chrono;
    const sys_seconds tp{std::chrono::seconds{seconds}};
    const auto day_point = floor<days>(tp);
    const year_month_day ymd{day_point};
    const weekday wd{day_point};
    const hh_mm_ss hms{tp - day_point};

    const unsigned day = static_cast<unsigned>(ymd.day());
    std::string out;
    out += kWeekdays[wd.c_encoding()];
    out += ' ';
    out += kMonths[static_cast<unsigned>(ymd.month()) - 1];
    out += ' ';
    out += std::to_string(day);
    out += ordinal_suffix(day);
    out += ' ';
    out += std::to_string(static_cast<int>(ymd.year()));
    out += ' ';
    out += two_digits(hms.hours().count()) + ":" + two_digits(hms.minutes().count()) + ":" +
           two_digits(hms.seconds().count());
    return out;
}

double parse_iso8601(std::string_view text) {
    using namespace std::chrono;
    if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
        text[13] != ':' || text[16] != ':') {
        throw Error(ErrorCode::ParseError, "malformed timestamp '" + std::string(text) + "'");
    }
    const year_month_day ymd{year{parse_int(text, 0, 4)}, month{static_cast<unsigned>(parse_int(text, 5, 2))},
                             day{static_cast<unsigned>(parse_int(text, 8, 2))}};
    if (!ymd.ok()) {
        throw Error(ErrorCode::ParseError, "invalid date in '" + std::string(text) + "'");
    }
    const int hh = parse_int(text, 11, 2);
    const int mm = parse_int(text, 14, 2);
    const int ss = parse_int(text, 17, 2);
    double frac = 0.0;
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        double scale = 0.1;
        for (++pos; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos, scale /= 10.0) {
            frac += scale * (text[pos] - '0');
        }
    }
    if (pos < text.size() && text[pos] == 'Z') ++pos;
    if (pos != text.size()) {
        throw Error(ErrorCode::ParseError, "unsupported timestamp suffix in '" + std::string(text) + "'");
    }
    const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
    return static_cast<double>(days_since_epoch) * 86400.0 + hh * 3600.0 + mm * 60.0 + ss + frac;
}

}  // namespace gptest
