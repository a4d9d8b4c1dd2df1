#pragma once

#include <cstdint>
#include <string>

namespace poolscope {

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::int64_t kSecondsPerHour = 3600;

// UTC day index of a unix timestamp (floor, works for ts < 0 too).
inline std::int64_t utc_day(std::int64_t ts) {
    std::int64_t d = ts / kSecondsPerDay;
    if (ts % kSecondsPerDay < 0) --d;
    return d;
}

inline std::int64_t day_start_ts(std::int64_t day) { return day * kSecondsPerDay; }

// days-since-epoch -> "YYYY-MM-DD" (proleptic Gregorian).
std::string utc_date_string(std::int64_t day);

}  // namespace poolscope
