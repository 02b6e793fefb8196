#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace skg {

// Exact weights: denominators are bounded by 2*|L| so int64 never overflows
// at the scales this tool targets.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Fixed-point decimal rendering, default 6 fractional digits, trailing
// zeros trimmed (but at least one digit kept). "3/8" -> "0.375".
inline std::string to_decimal(const Rat& r, int digits = 6) {
    long long num = r.numerator();
    long long den = r.denominator();
    std::string sign;
    if (num < 0) { sign = "-"; num = -num; }
    long long whole = num / den;
    long long rem = num % den;
    std::string frac;
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        frac += static_cast<char>('0' + rem / den);
        rem %= den;
    }
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    if (frac.empty()) frac = "0";
    return sign + std::to_string(whole) + "." + frac;
}

} // namespace skg
