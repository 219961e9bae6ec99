#include "carbonsnap/time.hpp"

#include <cctype>
#include <cstdio>

#include "carbonsnap/error.hpp"

namespace carbonsnap {

namespace {

[[noreturn]] void bad_timestamp(std::string_view text, const char* why) {
    throw ParseError("<timestamp>", 0, 0,
                     "invalid UTC timestamp '" + std::string(text) + "': " + why);
}

int take_digits(std::string_view text, std::string_view& rest, std::size_t count) {
    if (rest.size() < count) bad_timestamp(text, "truncated");
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        char c = rest[i];
        if (!std::isdigit(static_cast<unsigned char>(c))) bad_timestamp(text, "expected digit");
        value = value * 10 + (c - '0');
    }
    rest.remove_prefix(count);
    return value;
}

void expect(std::string_view text, std::string_view& rest, char c) {
    if (rest.empty() || rest.front() != c) bad_timestamp(text, "unexpected character");
    rest.remove_prefix(1);
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
    std::string_view rest = text;
    const int y = take_digits(text, rest, 4);
    expect(text, rest, '-');
    const int mo = take_digits(text, rest, 2);
    expect(text, rest, '-');
    const int d = take_digits(text, rest, 2);
    namespace chr = std::chrono;
    const chr::year_month_day date{chr::year{y}, chr::month{static_cast<unsigned>(mo)},
                                   chr::day{static_cast<unsigned>(d)}};
    if (!date.ok()) bad_timestamp(text, "no such calendar date");

    int hh = 0;
    int mm = 0;
    int ss = 0;
    int ms = 0;
    if (rest.empty()) return Timestamp{chr::sys_days{date}};

    if (rest.front() != 'T' && rest.front() != 't' && rest.front() != ' ')
        bad_timestamp(text, "expected 'T'");
    rest.remove_prefix(1);
    hh = take_digits(text, rest, 2);
    expect(text, rest, ':');
    mm = take_digits(text, rest, 2);
    if (!rest.empty() && rest.front() == ':') {
        rest.remove_prefix(1);
        ss = take_digits(text, rest, 2);
        if (!rest.empty() && rest.front() == '.') {
            rest.remove_prefix(1);
            std::size_t n = 0;
            int scale = 100;
            while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) {
                if (n < 3) {
                    ms += (rest[n] - '0') * scale;
                    scale /= 10;
                } else if (rest[n] != '0') {
                    bad_timestamp(text, "sub-millisecond precision");
                }
                ++n;
            }
            if (n == 0) bad_timestamp(text, "empty fraction");
            rest.remove_prefix(n);
        }
    }
    if (hh > 23 || mm > 59 || ss > 59) bad_timestamp(text, "time of day out of range");

    if (rest == "Z" || rest == "z" || rest == "+00:00" || rest == "+0000") {
        // UTC
    } else if (rest.empty()) {
        bad_timestamp(text, "missing zone designator (local time is not accepted)");
    } else {
        bad_timestamp(text, "only UTC ('Z' or '+00:00') is accepted");
    }

    return Timestamp{chr::sys_days{date}} + chr::hours{hh} + chr::minutes{mm} + chr::seconds{ss} +
           chr::milliseconds{ms};
}

std::string format_timestamp(Timestamp t) {
    namespace chr = std::chrono;
    const auto day_point = chr::floor<chr::days>(t);
    const chr::year_month_day date{day_point};
    const chr::hh_mm_ss<chr::milliseconds> tod{t - day_point};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    std::string out = buf;
    if (auto ms = tod.subseconds().count(); ms != 0) {
        std::snprintf(buf, sizeof buf, ".%03d", static_cast<int>(ms));
        out += buf;
    }
    return out + "Z";
}

std::string format_timestamp_minutes(Timestamp t) {
    namespace chr = std::chrono;
    const auto day_point = chr::floor<chr::days>(t);
    const chr::year_month_day date{day_point};
    const chr::hh_mm_ss<chr::milliseconds> tod{t - day_point};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02dZ", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()));
    return buf;
}

Decimal hours(std::chrono::milliseconds d) { return Decimal::ratio(d.count(), 3'600'000); }

Decimal days(std::chrono::milliseconds d) { return Decimal::ratio(d.count(), 86'400'000); }

SnapshotPeriod::SnapshotPeriod(Timestamp start, Timestamp end) : start_(start), end_(end) {
    if (!(end_ > start_))
        throw ValidationError("snapshot period must end after it starts: " + format_timestamp(start) +
                              " .. " + format_timestamp(end));
}

std::string to_string(const SnapshotPeriod& period) {
    return format_timestamp(period.start()) + "/" + format_timestamp(period.end());
}

}  // namespace carbonsnap
