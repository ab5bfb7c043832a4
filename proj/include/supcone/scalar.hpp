#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include "supcone/errors.hpp"

namespace supcone {

// Exact backend scalar. All algebraic-identity suites run on this type so
// that equality checks are genuine equalities, not tolerance comparisons.
using Rat = boost::multiprecision::cpp_rational;

template <class S>
inline constexpr bool is_exact_backend = !std::is_floating_point_v<S>;

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }
inline double to_double(double d) { return d; }

// Parses "p", "p/q" or a plain integer string into an exact rational.
inline Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ParseError("malformed rational: " + s);
    }
}

inline std::string rational_to_string(const Rat& q) {
    std::string num = numerator(q).str();
    if (denominator(q) == 1) return num;
    return num + "/" + denominator(q).str();
}

// Scalar construction from a rational seed value; the float backend takes
// the nearest double. Keeps model generation identical across backends.
template <class S>
inline S scalar_from_rational(const Rat& q) {
    if constexpr (std::is_floating_point_v<S>) {
        return static_cast<S>(to_double(q));
    } else {
        return q;
    }
}

template <class S>
inline std::string scalar_to_string(const S& v) {
    if constexpr (std::is_floating_point_v<S>) {
        return std::to_string(v);
    } else {
        return rational_to_string(v);
    }
}

// Equality used by property checks: exact for rationals, absolute
// tolerance for the float backend.
template <class S>
inline bool scalar_close(const S& a, const S& b, double tol) {
    if constexpr (std::is_floating_point_v<S>) {
        return std::abs(a - b) <= tol;
    } else {
        (void)tol;
        return a == b;
    }
}

template <class S>
inline S scalar_abs(const S& v) {
    using std::abs;
    return v < 0 ? S(-v) : v;
}

} // namespace supcone
