#include "poolscope/wide_math.hpp"

namespace poolscope {

bigint parse_bigint(const std::string& text) {
    if (text.empty()) throw Error(Errc::malformed_record, "empty amount");
    for (char c : text) {
        if (c < '0' || c > '9')
            throw Error(Errc::malformed_record, "amount is not a nonnegative integer: " + text);
    }
    return bigint(text);
}

}  // namespace poolscope
