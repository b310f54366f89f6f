#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace refsimplex {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

/// gcd of all entries; 0 for an empty or all-zero range.
template <typename Range>
Integer gcd_of(const Range& values)
{
    Integer g = 0;
    for (const auto& v : values) g = gcd(g, Integer(v));
    return g;
}

/// Floor division, rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

/// Nonnegative remainder in [0, |b|).
inline Integer mod_floor(const Integer& a, const Integer& b)
{
    Integer r = a % b;
    if (r < 0) r += abs(b);
    return r;
}

inline Integer floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

inline Integer ceil(const Rational& x) { return -floor_div(-numerator(x), denominator(x)); }

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& x)
{
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline bool fits_int64(const Integer& x)
{
    return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& x)
{
    if (!fits_int64(x)) throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return x.convert_to<std::int64_t>();
}

inline IntVector to_integers(std::initializer_list<long long> values)
{
    IntVector out;
    out.reserve(values.size());
    for (auto v : values) out.emplace_back(v);
    return out;
}

} // namespace refsimplex
