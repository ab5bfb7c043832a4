#pragma once

#include <compare>
#include <string>

#include "supcone/errors.hpp"
#include "supcone/scalar.hpp"

namespace supcone {

// One coordinate of the sup-completion: a finite value or +infinity.
// There is no -infinity; negative parts of cone elements stay finite.
template <class S>
struct Ext {
    S v{};
    bool inf = false;

    Ext() = default;
    Ext(const S& value) : v(value) {}            // NOLINT(google-explicit-constructor)
    static Ext infinity() { Ext e; e.inf = true; return e; }

    bool is_finite() const { return !inf; }

    // Finite payload; calling this on +inf is a logic error upstream.
    const S& finite() const {
        if (inf) throw DomainError("finite() on +inf");
        return v;
    }

    friend bool operator==(const Ext& a, const Ext& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.v == b.v;
    }
    friend bool operator<(const Ext& a, const Ext& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const Ext& a, const Ext& b) { return a < b || a == b; }
    friend bool operator>(const Ext& a, const Ext& b) { return b < a; }
    friend bool operator>=(const Ext& a, const Ext& b) { return b <= a; }
};

template <class S>
inline Ext<S> ext_min(const Ext<S>& a, const Ext<S>& b) { return a < b ? a : b; }

template <class S>
inline Ext<S> ext_max(const Ext<S>& a, const Ext<S>& b) { return a < b ? b : a; }

template <class S>
inline Ext<S> ext_add(const Ext<S>& a, const Ext<S>& b) {
    if (a.inf || b.inf) return Ext<S>::infinity();
    return Ext<S>(a.v + b.v);
}

// Subtraction requires a finite subtrahend: only X is invertible in X^s.
template <class S>
inline Ext<S> ext_sub(const Ext<S>& a, const S& b) {
    if (a.inf) return Ext<S>::infinity();
    return Ext<S>(a.v - b);
}

// Cone scalar multiplication. 0 * x = 0 even for infinite x; this is a
// documented convention, see the README.
template <class S>
inline Ext<S> ext_scale(const S& lambda, const Ext<S>& a) {
    if (lambda < 0) {
        if (a.inf) throw DomainError("negative scalar on an infinite coordinate");
        return Ext<S>(lambda * a.v);
    }
    if (lambda == 0) return Ext<S>(S(0));
    if (a.inf) return Ext<S>::infinity();
    return Ext<S>(lambda * a.v);
}

// Product on the positive cone: inf * 0 = 0, inf * positive = inf.
// Forced by the sup-over-finite-minorants definition of the product.
template <class S>
inline Ext<S> ext_mul(const Ext<S>& a, const Ext<S>& b) {
    if ((a.inf && !b.inf && b.v == 0) || (b.inf && !a.inf && a.v == 0)) return Ext<S>(S(0));
    if (a.inf || b.inf) return Ext<S>::infinity();
    return Ext<S>(a.v * b.v);
}

template <class S>
inline std::string ext_to_string(const Ext<S>& a) {
    return a.inf ? std::string("inf") : scalar_to_string(a.v);
}

} // namespace supcone
