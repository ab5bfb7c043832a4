#pragma once

#include <cmath>
#include <vector>

#include "supcone/errors.hpp"
#include "supcone/ext.hpp"
#include "supcone/space.hpp"

namespace supcone {

// LatVec: element of X (all coordinates finite).
// ExtVec: element of X^s (coordinates in R u {+inf}, finite negative part).
template <class S>
using LatVec = std::vector<S>;

template <class S>
using ExtVec = std::vector<Ext<S>>;

template <class S>
inline ExtVec<S> to_ext(const LatVec<S>& x) {
    ExtVec<S> r;
    r.reserve(x.size());
    for (const auto& v : x) r.emplace_back(v);
    return r;
}

template <class S>
inline bool all_finite(const ExtVec<S>& x) {
    for (const auto& c : x)
        if (c.inf) return false;
    return true;
}

// Conversion back to X; only valid when every coordinate is finite.
template <class S>
inline LatVec<S> to_lat(const ExtVec<S>& x) {
    LatVec<S> r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(c.finite());
    return r;
}

template <class S>
inline bool is_nonneg(const ExtVec<S>& x) {
    for (const auto& c : x)
        if (!c.inf && c.v < 0) return false;
    return true;
}

template <class S>
inline bool is_nonneg(const LatVec<S>& x) {
    for (const auto& v : x)
        if (v < 0) return false;
    return true;
}

template <class S>
inline bool leq(const ExtVec<S>& x, const ExtVec<S>& y) {
    require_same_dim(x.size(), y.size(), "leq");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] <= y[i])) return false;
    return true;
}

template <class S>
inline bool leq(const LatVec<S>& x, const LatVec<S>& y) {
    require_same_dim(x.size(), y.size(), "leq");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] <= y[i])) return false;
    return true;
}

template <class S>
inline ExtVec<S> meet(const ExtVec<S>& x, const ExtVec<S>& y) {
    require_same_dim(x.size(), y.size(), "meet");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_min(x[i], y[i]);
    return r;
}

template <class S>
inline ExtVec<S> join(const ExtVec<S>& x, const ExtVec<S>& y) {
    require_same_dim(x.size(), y.size(), "join");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_max(x[i], y[i]);
    return r;
}

template <class S>
inline LatVec<S> meet(const LatVec<S>& x, const LatVec<S>& y) {
    require_same_dim(x.size(), y.size(), "meet");
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] < y[i] ? x[i] : y[i];
    return r;
}

template <class S>
inline LatVec<S> join(const LatVec<S>& x, const LatVec<S>& y) {
    require_same_dim(x.size(), y.size(), "join");
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] < y[i] ? y[i] : x[i];
    return r;
}

template <class S>
inline ExtVec<S> add(const ExtVec<S>& x, const ExtVec<S>& y) {
    require_same_dim(x.size(), y.size(), "add");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_add(x[i], y[i]);
    return r;
}

template <class S>
inline LatVec<S> add(const LatVec<S>& x, const LatVec<S>& y) {
    require_same_dim(x.size(), y.size(), "add");
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

// x - a with finite subtrahend only; the cone is not a group.
template <class S>
inline ExtVec<S> sub(const ExtVec<S>& x, const LatVec<S>& a) {
    require_same_dim(x.size(), a.size(), "sub");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_sub(x[i], a[i]);
    return r;
}

template <class S>
inline LatVec<S> sub(const LatVec<S>& x, const LatVec<S>& a) {
    require_same_dim(x.size(), a.size(), "sub");
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - a[i];
    return r;
}

template <class S>
inline ExtVec<S> scale(const S& lambda, const ExtVec<S>& x) {
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_scale(lambda, x[i]);
    return r;
}

template <class S>
inline LatVec<S> scale(const S& lambda, const LatVec<S>& x) {
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = lambda * x[i];
    return r;
}

template <class S>
inline ExtVec<S> pos_part(const ExtVec<S>& x) {
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i].inf ? Ext<S>::infinity() : Ext<S>(x[i].v < 0 ? S(0) : x[i].v);
    return r;
}

// Always lands in X: infinite coordinates contribute 0.
template <class S>
inline LatVec<S> neg_part(const ExtVec<S>& x) {
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = (x[i].inf || x[i].v >= 0) ? S(0) : S(-x[i].v);
    return r;
}

template <class S>
inline ExtVec<S> abs_vec(const ExtVec<S>& x) {
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i].inf ? Ext<S>::infinity() : Ext<S>(scalar_abs(x[i].v));
    return r;
}

template <class S>
inline LatVec<S> abs_vec(const LatVec<S>& x) {
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = scalar_abs(x[i]);
    return r;
}

template <class S>
inline LatVec<S> zero_vec(std::size_t n) { return LatVec<S>(n, S(0)); }

template <class S>
inline bool is_zero(const ExtVec<S>& x) {
    for (const auto& c : x)
        if (c.inf || c.v != 0) return false;
    return true;
}

template <class S>
inline bool is_zero(const LatVec<S>& x) {
    for (const auto& v : x)
        if (v != 0) return false;
    return true;
}

// Riesz decomposition for x <= y + z: returns (y1, z1) with y1 <= y,
// z1 <= z and y1 + z1 = x. Coordinatewise greedy choice y1 = x /\ y,
// clamped from below by x - z so that z1 <= z also holds for negative z.
template <class S>
inline std::pair<ExtVec<S>, ExtVec<S>> riesz_decompose(const ExtVec<S>& x,
                                                       const ExtVec<S>& y,
                                                       const ExtVec<S>& z) {
    require_same_dim(x.size(), y.size(), "riesz_decompose");
    require_same_dim(x.size(), z.size(), "riesz_decompose");
    if (!leq(x, add(y, z))) throw ContractError("riesz_decompose: x <= y + z required");
    ExtVec<S> y1(x.size()), z1(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto &xi = x[i], &yi = y[i], &zi = z[i];
        if (xi.inf) {
            if (yi.inf) {
                y1[i] = Ext<S>::infinity();
                z1[i] = zi.inf ? Ext<S>(S(0)) : Ext<S>(zi.v < 0 ? zi.v : S(0));
            } else {
                // z must be infinite here (precondition).
                y1[i] = yi;
                z1[i] = Ext<S>::infinity();
            }
        } else {
            S base = yi.inf ? xi.v : (xi.v < yi.v ? xi.v : yi.v);
            if (!zi.inf && base < xi.v - zi.v) base = xi.v - zi.v;
            y1[i] = Ext<S>(base);
            z1[i] = Ext<S>(xi.v - base);
        }
    }
    return {std::move(y1), std::move(z1)};
}

// Product on the positive cone X^s_+, coordinatewise with inf * 0 = 0.
template <class S>
inline ExtVec<S> multiply(const ExtVec<S>& x, const ExtVec<S>& y) {
    require_same_dim(x.size(), y.size(), "multiply");
    if (!is_nonneg(x) || !is_nonneg(y)) throw DomainError("multiply: operands must be >= 0");
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ext_mul(x[i], y[i]);
    return r;
}

// x /\ k*e; finite whenever x >= 0 (and in general when x has no -inf,
// which is structural).
template <class S>
inline LatVec<S> truncate(const ExtVec<S>& x, const S& k) {
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i].inf ? k : (x[i].v < k ? x[i].v : k);
    return r;
}

// exp(-x) for x >= 0 with exp(-inf) = 0. Float backend only.
template <class S>
inline LatVec<S> exp_neg(const ExtVec<S>& x) {
    if constexpr (!std::is_floating_point_v<S>) {
        throw BackendError("exp_neg requires the float backend");
    } else {
        if (!is_nonneg(x)) throw DomainError("exp_neg: x must be >= 0");
        LatVec<S> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            r[i] = x[i].inf ? S(0) : std::exp(-x[i].v);
        return r;
    }
}

template <class S>
inline LatVec<S> exp_vec(const LatVec<S>& x) {
    if constexpr (!std::is_floating_point_v<S>) {
        throw BackendError("exp_vec requires the float backend");
    } else {
        LatVec<S> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::exp(x[i]);
        return r;
    }
}

// |x|^r; exact for r in {1, 2}, float backend for arbitrary r > 0.
template <class S>
inline ExtVec<S> abs_pow(const ExtVec<S>& x, int r) {
    if (r != 1 && r != 2) throw DomainError("abs_pow: exact exponents are 1 and 2");
    ExtVec<S> a = abs_vec(x);
    if (r == 1) return a;
    return multiply(a, a);
}

template <class S>
inline ExtVec<S> abs_pow_real(const ExtVec<S>& x, double r) {
    if constexpr (!std::is_floating_point_v<S>) {
        throw BackendError("abs_pow_real requires the float backend");
    } else {
        if (r <= 0) throw DomainError("abs_pow_real: r must be positive");
        ExtVec<S> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = x[i].inf ? Ext<S>::infinity() : Ext<S>(std::pow(std::abs(x[i].v), r));
        return out;
    }
}

} // namespace supcone
