#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "poolscope/errors.hpp"

namespace poolscope {

// Token amounts in base units. Arbitrary precision so that products of
// 256-bit reserves never wrap; all divisions below are explicit floors.
using bigint = boost::multiprecision::cpp_int;

// Exact arithmetic for the real-valued equations; used by the rational
// pool mode and by test oracles.
using rational = boost::multiprecision::cpp_rational;

// floor(sqrt(x)) for x >= 0.
inline bigint isqrt(const bigint& x) {
    if (x < 0) throw Error(Errc::internal_error, "isqrt of negative value");
    return boost::multiprecision::sqrt(x);
}

// Exact square root of a nonnegative rational. The rational pool mode is
// for exactness checks, so a non-square product is an error rather than an
// approximation.
inline rational sqrt_exact(const rational& x) {
    if (x < 0) throw Error(Errc::non_square, "sqrt of negative rational");
    const bigint num = boost::multiprecision::numerator(x);
    const bigint den = boost::multiprecision::denominator(x);
    const bigint sn = isqrt(num);
    const bigint sd = isqrt(den);
    if (sn * sn != num || sd * sd != den)
        throw Error(Errc::non_square, "rational mode requires a perfect-square product");
    return rational(sn, sd);
}

inline double to_double(const bigint& x) { return x.convert_to<double>(); }
inline double to_double(const rational& x) { return x.convert_to<double>(); }

// Parse a nonnegative decimal integer. Used for amount fields in event logs.
bigint parse_bigint(const std::string& text);

}  // namespace poolscope
