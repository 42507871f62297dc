#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace mobnet {

using TimePoint = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

inline constexpr std::chrono::hours kFlowWindow{8};

/// Half-open interval [start, end).
struct Interval {
    TimePoint start;
    TimePoint end;

    bool contains(TimePoint t) const noexcept { return start <= t && t < end; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Builds [start, end), throwing ArgumentError unless start < end.
Interval make_interval(TimePoint start, TimePoint end);

/// Parses an RFC 3339 date-time ("2020-03-01T08:00:00Z", "...+01:00",
/// optional fractional seconds) and returns it in UTC. Throws ParseError.
TimePoint parse_rfc3339(std::string_view text);

/// Parses an ISO 8601 calendar date "YYYY-MM-DD". Throws ParseError.
Date parse_date(std::string_view text);

std::string format_rfc3339(TimePoint t);
std::string format_date(Date d);

/// Floors to the enclosing 00:00/08:00/16:00 UTC window start.
TimePoint floor_to_flow_window(TimePoint t);

inline Date day_of(TimePoint t) { return std::chrono::floor<std::chrono::days>(t); }

/// Monday of the ISO week containing d.
Date iso_week_start(Date d);

} // namespace mobnet
