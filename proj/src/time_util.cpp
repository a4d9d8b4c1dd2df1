#include "poolscope/time_util.hpp"

#include <cstdio>

namespace poolscope {

std::string utc_date_string(std::int64_t day) {
    // civil-from-days, Gregorian, epoch 1970-01-01
    std::int64_t z = day + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t year = m <= 2 ? y + 1 : y;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02d", static_cast<long long>(year),
                  static_cast<int>(m), static_cast<int>(d));
    return buf;
}

}  // namespace poolscope
