#pragma once

// Exact rational scalars. Everything geometric in this library runs on
// arbitrary-precision rationals; floating point appears only in the SVG
// renderer. Values are always in lowest terms with a positive denominator
// (canonical form is maintained by the backing type).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// n/d in canonical form. The sign lives in the numerator.
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw std::domain_error("make_rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(n, d);
}

inline Rat make_rat(long n, long d) { return make_rat(Int(n), Int(d)); }

/// 2^e for any integer e (negative exponents give exact dyadic fractions).
inline Rat pow2(long e) {
    Int p = Int(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e >= 0 ? Rat(p) : make_rat(Int(1), p);
}

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e--) r *= base;
    return r;
}

/// The unique integer m with 0 <= y - m < 1.
inline Int floor_int(const Rat& y) {
    Int q = numerator(y) / denominator(y);  // truncates toward zero
    if (numerator(y) < 0 && q * denominator(y) != numerator(y)) --q;
    return q;
}

inline Int ceil_int(const Rat& y) { return -floor_int(-y); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

/// Serialized form used across all JSON interfaces: "num/den", reduced,
/// denominator positive. Integers still carry the "/1".
inline std::string rat_str(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Accepts "num/den" or a bare integer "num".
inline Rat parse_rat(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int n{std::string(s.substr(0, slash))};
        Int d{std::string(s.substr(slash + 1))};
        return make_rat(n, d);
    } catch (const std::runtime_error&) {
        throw std::domain_error("parse_rat: bad rational '" + std::string(s) + "'");
    }
}

inline double rat_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace carpet
