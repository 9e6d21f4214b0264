#pragma once

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <string>
#include <string_view>

#include "vulture/errors.hpp"

namespace vulture {

/// Parses an RFC 3339 / strict-ISO timestamp ("2013-05-17T16:41:42Z" or with
/// a numeric offset) into UTC epoch seconds.
inline std::int64_t parse_rfc3339(std::string_view s)
{
    std::tm tm {};
    int year, mon, day, hour, min, sec;
    int oh = 0, om = 0;
    char sign = 'Z';
    std::string str(s);

    int n = std::sscanf(str.c_str(), "%d-%d-%dT%d:%d:%d%c%d:%d",
        &year, &mon, &day, &hour, &min, &sec, &sign, &oh, &om);
    if (n < 6)
        throw error("unparseable timestamp: " + str);
    tm.tm_year = year - 1900;
    tm.tm_mon = mon - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = min;
    tm.tm_sec = sec;
    std::int64_t t = timegm(&tm);
    if (n >= 8 && (sign == '+' || sign == '-')) {
        std::int64_t off = oh * 3600 + om * 60;
        t += (sign == '+') ? -off : off;
    }
    return t;
}

/// Epoch seconds to "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_rfc3339(std::int64_t t)
{
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm {};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
        tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace vulture
