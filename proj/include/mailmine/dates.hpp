#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mailmine {

// Timestamps are UTC seconds since the Unix epoch, second resolution.
using UnixTime = int64_t;

struct CivilDate {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31
};

int64_t days_from_civil(int y, int m, int d);
CivilDate civil_from_days(int64_t z);

bool is_valid_civil(int y, int m, int d);

// Accepts RFC-2822 date strings ("Wed, 2 May 2001 15:30:00 -0700", zone
// names UT/GMT/EST/.../Z allowed) and ISO-8601 ("2001-05-02",
// "2001-05-02T15:30:00Z", offset forms). Anything else is rejected.
std::optional<UnixTime> parse_datetime(std::string_view text);

std::string format_iso8601(UnixTime t);

// "2001-05-02"
std::string utc_day(UnixTime t);
// "2001-05"
std::string utc_month(UnixTime t);
// ISO-8601 week, "2001-W18"
std::string utc_iso_week(UnixTime t);

// Successor bucket key in the same scheme, for zero-filling gaps.
std::string next_month(const std::string& month_key);
std::string next_iso_week(const std::string& week_key);

} // namespace mailmine
