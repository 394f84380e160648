#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace drshift {

// Exact arithmetic everywhere a distance or a count is asserted bit-exactly.
// Floating point only appears in derived report values (logs, ratios).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 1/2^i as an exact rational.
inline Rational dyadic(long i) {
    if (i < 0) throw std::invalid_argument("dyadic: negative exponent");
    BigInt d = BigInt(1) << static_cast<unsigned>(i);
    return Rational(1, d);
}

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Natural log of a positive big integer. Counts in this project stay far
// below the double range, so a direct conversion is exact enough.
inline double log_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log_big: nonpositive count");
    return std::log(n.convert_to<double>());
}

inline std::string to_string(const Rational& q) {
    return numerator(q).str() + (denominator(q) == 1 ? "" : "/" + denominator(q).str());
}

} // namespace drshift
