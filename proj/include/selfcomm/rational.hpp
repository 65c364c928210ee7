#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace selfcomm {

// Exact rationals everywhere thresholds are compared: constructed instances sit
// exactly on alpha*|S| boundaries, so floating point is not an option.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt floor_big(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);  // always > 0
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline BigInt ceil_big(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

inline long long floor_to_int(const Rational& r) { return static_cast<long long>(floor_big(r)); }
inline long long ceil_to_int(const Rational& r) { return static_cast<long long>(ceil_big(r)); }

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Accepts "3", "-2", "3/4", "0.75", "1.5e-2" is NOT supported (no exponents).
Rational parse_rational(const std::string& s);

// "3" for integers, "3/4" otherwise.
std::string format_rational(const Rational& r);

// Decimal rendering: exact when the denominator is 2^a*5^b (<= 30 digits),
// otherwise a 17-significant-digit approximation via double.
std::string format_rational_decimal(const Rational& r);

}  // namespace selfcomm
