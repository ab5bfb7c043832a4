#pragma once

#include <utility>

#include "supcone/band.hpp"
#include "supcone/vec.hpp"

namespace supcone {

// Extension of the band projection P_B to X^s: keep coordinates on B,
// zero off B.
template <class S>
inline ExtVec<S> project(const Band& b, const ExtVec<S>& x) {
    require_same_dim(b.dim(), x.size(), "project");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = b.contains(i) ? x[i] : Ext<S>(S(0));
    return r;
}

template <class S>
inline LatVec<S> project(const Band& b, const LatVec<S>& x) {
    require_same_dim(b.dim(), x.size(), "project");
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = b.contains(i) ? x[i] : S(0);
    return r;
}

// inf_B: the greatest element of B^s (+inf on B, 0 off B).
template <class S>
inline ExtVec<S> infinity_of(const Band& b) {
    ExtVec<S> r(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
        r[i] = b.contains(i) ? Ext<S>::infinity() : Ext<S>(S(0));
    return r;
}

// Band generated by x >= 0: the support mask.
template <class S>
inline Band band_of(const ExtVec<S>& x) {
    Band b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        b.set(i, x[i].inf || x[i].v != 0);
    return b;
}

template <class S>
inline Band band_of(const LatVec<S>& x) {
    Band b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) b.set(i, x[i] != 0);
    return b;
}

// Unique decomposition x = inf_B + u with u orthogonal to B: B is the
// set of infinite coordinates, u the finite values off it.
template <class S>
inline std::pair<Band, LatVec<S>> split_parts(const ExtVec<S>& x) {
    if (!is_nonneg(x)) throw DomainError("split_parts: x must be >= 0");
    Band b(x.size());
    LatVec<S> u(x.size(), S(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].inf)
            b.set(i);
        else
            u[i] = x[i].v;
    }
    return {std::move(b), std::move(u)};
}

template <class S>
inline ExtVec<S> infinite_part(const ExtVec<S>& x) {
    return infinity_of<S>(split_parts(x).first);
}

template <class S>
inline LatVec<S> finite_part(const ExtVec<S>& x) {
    return split_parts(x).second;
}

// x.inf_B = inf_{P_B x}: +inf exactly on atoms of B where x > 0.
template <class S>
inline ExtVec<S> mul_infinity_band(const ExtVec<S>& x, const Band& b) {
    if (!is_nonneg(x)) throw DomainError("mul_infinity_band: x must be >= 0");
    return multiply(x, infinity_of<S>(b));
}

// Meet over k of the bands {x > k*u}. Stabilizes no later than
// k* = 1 + ceil(max finite coordinate of x / min positive coordinate
// of u); beyond k* the mask is constant. u defaults to e.
template <class S>
inline Band infinite_band_by_truncation(const ExtVec<S>& x, const LatVec<S>* u_opt = nullptr) {
    if (!is_nonneg(x)) throw DomainError("infinite_band_by_truncation: x must be >= 0");
    LatVec<S> u = u_opt ? *u_opt : LatVec<S>(x.size(), S(1));
    require_same_dim(x.size(), u.size(), "infinite_band_by_truncation");
    if (!is_nonneg(u)) throw DomainError("infinite_band_by_truncation: u must be >= 0");

    // Stabilization bound, provable in-model.
    long kstar = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].inf || u[i] == 0) continue;
        const double ratio = to_double(x[i].v) / to_double(u[i]);
        if (ratio > 0) {
            const long need = static_cast<long>(std::ceil(ratio)) + 1;
            if (need > kstar) kstar = need;
        }
    }

    Band acc(x.size(), true);
    Band prev = acc;
    for (long k = 1; k <= kstar + 1; ++k) {
        Band mk(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            mk.set(i, x[i] > Ext<S>(S(k) * u[i]));
        acc = acc & mk;
        if (k > kstar && !(acc == prev))
            throw Error("infinite_band_by_truncation: mask failed to stabilize");
        prev = acc;
    }
    return acc;
}

} // namespace supcone
