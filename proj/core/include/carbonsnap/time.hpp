#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "carbonsnap/decimal.hpp"

namespace carbonsnap {

// UTC instant at millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// Parses ISO-8601 UTC: `YYYY-MM-DDTHH:MM[:SS[.fff]]` followed by `Z` or
// `+00:00`. A date alone (`YYYY-MM-DD`) means midnight UTC. Any other offset,
// or no zone designator at all, is rejected as local time.
Timestamp parse_timestamp(std::string_view text);

// `YYYY-MM-DDTHH:MM:SSZ`, with `.fff` added only when milliseconds are non-zero.
std::string format_timestamp(Timestamp t);

// `YYYY-MM-DDTHH:MMZ`, the form the national intensity API uses in URLs.
std::string format_timestamp_minutes(Timestamp t);

// Exact hours in a duration.
Decimal hours(std::chrono::milliseconds d);
// Exact days in a duration.
Decimal days(std::chrono::milliseconds d);

/// Half-open evaluation window [start, end).
class SnapshotPeriod {
public:
    // Throws ValidationError unless end > start.
    SnapshotPeriod(Timestamp start, Timestamp end);

    Timestamp start() const noexcept { return start_; }
    Timestamp end() const noexcept { return end_; }
    std::chrono::milliseconds duration() const noexcept { return end_ - start_; }
    Decimal duration_hours() const { return hours(duration()); }
    Decimal duration_days() const { return days(duration()); }

    bool contains(const SnapshotPeriod& other) const noexcept {
        return start_ <= other.start_ && other.end_ <= end_;
    }

    friend bool operator==(const SnapshotPeriod&, const SnapshotPeriod&) = default;

private:
    Timestamp start_;
    Timestamp end_;
};

std::string to_string(const SnapshotPeriod& period);

}  // namespace carbonsnap
