#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "supcone/bands.hpp"

namespace supcone {

// Symbolic tail of a sequence: the term at tail offset j (0-based) is
//   Zero       -> 0
//   Constant   -> v
//   Periodic   -> vs[j mod p]
//   Geometric  -> v * r^j   (v >= 0, 0 < r < 1)
// The finite descriptions make limits, limsup/liminf, oscillations and
// series sums exactly computable.
template <class S>
struct TailRule {
    enum class Kind { Zero, Constant, Periodic, Geometric };
    Kind kind = Kind::Zero;
    std::vector<LatVec<S>> vs;
    S ratio{};

    static TailRule zero() { return TailRule{}; }
    static TailRule constant(LatVec<S> v) {
        TailRule t;
        t.kind = Kind::Constant;
        t.vs.push_back(std::move(v));
        return t;
    }
    static TailRule periodic(std::vector<LatVec<S>> values) {
        if (values.empty()) throw DomainError("periodic tail needs at least one term");
        TailRule t;
        t.kind = Kind::Periodic;
        t.vs = std::move(values);
        return t;
    }
    static TailRule geometric(LatVec<S> v, S r) {
        if (!(r > 0) || !(r < 1)) throw DomainError("geometric ratio must lie in (0,1)");
        if (!is_nonneg(v)) throw DomainError("geometric tail vector must be >= 0");
        TailRule t;
        t.kind = Kind::Geometric;
        t.vs.push_back(std::move(v));
        t.ratio = std::move(r);
        return t;
    }

    std::size_t period() const { return kind == Kind::Periodic ? vs.size() : 1; }
};

template <class S>
struct VecSeq {
    std::size_t dim = 0;
    std::vector<LatVec<S>> prefix;
    TailRule<S> tail;

    VecSeq() = default;
    VecSeq(std::size_t n, std::vector<LatVec<S>> pre, TailRule<S> t)
        : dim(n), prefix(std::move(pre)), tail(std::move(t)) {
        for (const auto& v : prefix) require_same_dim(v.size(), dim, "VecSeq prefix");
        for (const auto& v : tail.vs) require_same_dim(v.size(), dim, "VecSeq tail");
    }

    // 1-based term access.
    LatVec<S> term(std::size_t n) const {
        if (n == 0) throw DomainError("VecSeq terms are 1-based");
        if (n <= prefix.size()) return prefix[n - 1];
        const std::size_t j = n - prefix.size() - 1;
        switch (tail.kind) {
            case TailRule<S>::Kind::Zero: return LatVec<S>(dim, S(0));
            case TailRule<S>::Kind::Constant: return tail.vs[0];
            case TailRule<S>::Kind::Periodic: return tail.vs[j % tail.vs.size()];
            case TailRule<S>::Kind::Geometric: {
                LatVec<S> r = tail.vs[0];
                S f(1);
                for (std::size_t k = 0; k < j; ++k) f *= tail.ratio;
                return scale(f, r);
            }
        }
        throw Error("unreachable");
    }

    bool all_nonneg() const {
        for (const auto& v : prefix)
            if (!is_nonneg(v)) return false;
        for (const auto& v : tail.vs)
            if (!is_nonneg(v)) return false;
        return true;
    }
};

// Sequence of band projections; the tail is Constant or Periodic.
struct ProjSeq {
    std::size_t dim = 0;
    std::vector<Band> prefix;
    std::vector<Band> tail; // size 1 <=> constant
    bool tail_periodic = false;

    ProjSeq() = default;
    ProjSeq(std::size_t n, std::vector<Band> pre, std::vector<Band> tl, bool periodic)
        : dim(n), prefix(std::move(pre)), tail(std::move(tl)), tail_periodic(periodic) {
        if (tail.empty()) throw DomainError("ProjSeq needs a tail band");
        for (const auto& b : prefix) require_same_dim(b.dim(), dim, "ProjSeq prefix");
        for (const auto& b : tail) require_same_dim(b.dim(), dim, "ProjSeq tail");
    }

    Band term(std::size_t n) const {
        if (n == 0) throw DomainError("ProjSeq terms are 1-based");
        if (n <= prefix.size()) return prefix[n - 1];
        const std::size_t j = n - prefix.size() - 1;
        return tail[j % tail.size()];
    }
};

// ---------------------------------------------------------------------
// Order limits. In a finite atomic model, order convergence of a
// sequence is coordinatewise convergence.

template <class S>
inline std::optional<LatVec<S>> order_limit(const VecSeq<S>& xs) {
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            return LatVec<S>(xs.dim, S(0));
        case TailRule<S>::Kind::Constant:
            return xs.tail.vs[0];
        case TailRule<S>::Kind::Periodic:
            for (std::size_t k = 1; k < xs.tail.vs.size(); ++k)
                if (!(xs.tail.vs[k] == xs.tail.vs[0])) return std::nullopt;
            return xs.tail.vs[0];
    }
    throw Error("unreachable");
}

// Atoms on which the coordinate sequence converges.
template <class S>
inline Band convergence_band(const VecSeq<S>& xs) {
    Band b(xs.dim, true);
    if (xs.tail.kind == TailRule<S>::Kind::Periodic) {
        for (std::size_t i = 0; i < xs.dim; ++i)
            for (std::size_t k = 1; k < xs.tail.vs.size(); ++k)
                if (!(xs.tail.vs[k][i] == xs.tail.vs[0][i])) b.set(i, false);
    }
    return b;
}

// uo-convergence to target, evaluated from its definition: the limit of
// |x_n - target| /\ e must be zero. Independent of order_limit.
template <class S>
inline bool uo_limit(const VecSeq<S>& xs, const LatVec<S>& target) {
    require_same_dim(xs.dim, target.size(), "uo_limit");
    const LatVec<S> e(xs.dim, S(1));
    auto damped = [&](const LatVec<S>& v) { return meet(abs_vec(sub(v, target)), e); };
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            // terms -> 0, so |x_n - t| /\ e -> |t| /\ e
            return is_zero(damped(LatVec<S>(xs.dim, S(0))));
        case TailRule<S>::Kind::Constant:
            return is_zero(damped(xs.tail.vs[0]));
        case TailRule<S>::Kind::Periodic: {
            // the damped sequence is periodic: it converges to 0 iff
            // every period value is damped to 0
            for (const auto& v : xs.tail.vs)
                if (!is_zero(damped(v))) return false;
            return true;
        }
    }
    throw Error("unreachable");
}

template <class S>
inline ExtVec<S> limsup_seq(const VecSeq<S>& xs) {
    LatVec<S> r(xs.dim, S(0));
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            break;
        case TailRule<S>::Kind::Constant:
            r = xs.tail.vs[0];
            break;
        case TailRule<S>::Kind::Periodic:
            r = xs.tail.vs[0];
            for (std::size_t k = 1; k < xs.tail.vs.size(); ++k) r = join(r, xs.tail.vs[k]);
            break;
    }
    return to_ext(r);
}

template <class S>
inline LatVec<S> liminf_seq(const VecSeq<S>& xs) {
    LatVec<S> r(xs.dim, S(0));
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            break;
        case TailRule<S>::Kind::Constant:
            r = xs.tail.vs[0];
            break;
        case TailRule<S>::Kind::Periodic:
            r = xs.tail.vs[0];
            for (std::size_t k = 1; k < xs.tail.vs.size(); ++k) r = meet(r, xs.tail.vs[k]);
            break;
    }
    return r;
}

// ---------------------------------------------------------------------
// Series with nonnegative terms, valued in X^s.

// Divergence band of the tail alone (a finite prefix never creates an
// infinite part).
template <class S>
inline Band series_divergence_band(const TailRule<S>& tail, std::size_t dim) {
    Band b(dim);
    switch (tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            break;
        case TailRule<S>::Kind::Constant:
        case TailRule<S>::Kind::Periodic:
            for (const auto& v : tail.vs)
                for (std::size_t i = 0; i < dim; ++i)
                    if (v[i] != 0) b.set(i);
            break;
    }
    return b;
}

template <class S>
inline ExtVec<S> series_sum(const VecSeq<S>& xs) {
    if (!xs.all_nonneg()) throw DomainError("series_sum: terms must be >= 0");
    LatVec<S> finite(xs.dim, S(0));
    for (const auto& v : xs.prefix) finite = add(finite, v);
    if (xs.tail.kind == TailRule<S>::Kind::Geometric) {
        // sum_{j>=0} v r^j = v / (1 - r)
        finite = add(finite, scale(S(S(1) / (S(1) - xs.tail.ratio)), xs.tail.vs[0]));
    }
    const Band div = series_divergence_band(xs.tail, xs.dim);
    ExtVec<S> r = to_ext(finite);
    for (std::size_t i = 0; i < xs.dim; ++i)
        if (div.contains(i)) r[i] = Ext<S>::infinity();
    return r;
}

// ---------------------------------------------------------------------
// Projection-sequence limsup/liminf. Prefix is ignored: only masks that
// recur infinitely often matter.

inline Band limsup_proj(const ProjSeq& ps) {
    Band b(ps.dim);
    for (const auto& m : ps.tail) b = b | m;
    return b;
}

inline Band liminf_proj(const ProjSeq& ps) {
    Band b(ps.dim, true);
    for (const auto& m : ps.tail) b = b & m;
    return b;
}

// ---------------------------------------------------------------------
// Tail oscillation sup_{p,q >= n} |x_p - x_q| in closed form, and the
// Cauchy predicate derived from it.

namespace detail {

// Coordinatewise closure [inf, sup] of the set of tail values.
template <class S>
inline std::pair<LatVec<S>, LatVec<S>> tail_value_range(const TailRule<S>& tail, std::size_t dim) {
    LatVec<S> lo(dim, S(0)), hi(dim, S(0));
    switch (tail.kind) {
        case TailRule<S>::Kind::Zero:
            break;
        case TailRule<S>::Kind::Constant:
            lo = hi = tail.vs[0];
            break;
        case TailRule<S>::Kind::Periodic:
            lo = hi = tail.vs[0];
            for (std::size_t k = 1; k < tail.vs.size(); ++k) {
                lo = meet(lo, tail.vs[k]);
                hi = join(hi, tail.vs[k]);
            }
            break;
        case TailRule<S>::Kind::Geometric:
            // values v r^j, j >= 0: supremum v, infimum 0 (in closure)
            hi = tail.vs[0];
            break;
    }
    return {std::move(lo), std::move(hi)};
}

} // namespace detail

template <class S>
inline VecSeq<S> tail_oscillation(const VecSeq<S>& xs) {
    const std::size_t np = xs.prefix.size();
    auto [tlo, thi] = detail::tail_value_range(xs.tail, xs.dim);

    std::vector<LatVec<S>> osc_prefix(np);
    // running max/min over prefix terms n..N, folded with the tail range
    LatVec<S> lo = tlo, hi = thi;
    for (std::size_t n = np; n-- > 0;) {
        lo = meet(lo, xs.prefix[n]);
        hi = join(hi, xs.prefix[n]);
        osc_prefix[n] = sub(hi, lo);
    }

    TailRule<S> osc_tail;
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Constant:
            osc_tail = TailRule<S>::zero();
            break;
        case TailRule<S>::Kind::Periodic: {
            LatVec<S> c = sub(thi, tlo);
            osc_tail = is_zero(c) ? TailRule<S>::zero() : TailRule<S>::constant(std::move(c));
            break;
        }
        case TailRule<S>::Kind::Geometric:
            // sup_{p,q >= j} |v r^p - v r^q| = v r^j
            osc_tail = TailRule<S>::geometric(xs.tail.vs[0], xs.tail.ratio);
            break;
    }
    return VecSeq<S>(xs.dim, std::move(osc_prefix), std::move(osc_tail));
}

template <class S>
inline bool uo_cauchy(const VecSeq<S>& xs) {
    const auto lim = order_limit(tail_oscillation(xs));
    return lim.has_value() && is_zero(*lim);
}

// ---------------------------------------------------------------------
// Linear images of sequences: valid for any linear map (conditional
// expectations, band projections, sums), which all four tail rules are
// closed under.

template <class S>
inline VecSeq<S> map_seq(const VecSeq<S>& xs, const std::function<LatVec<S>(const LatVec<S>&)>& f) {
    std::vector<LatVec<S>> pre;
    pre.reserve(xs.prefix.size());
    for (const auto& v : xs.prefix) pre.push_back(f(v));
    TailRule<S> tail = xs.tail;
    for (auto& v : tail.vs) v = f(v);
    std::size_t d = xs.dim;
    if (!tail.vs.empty()) d = tail.vs[0].size();
    else if (!pre.empty()) d = pre[0].size();
    return VecSeq<S>(d, std::move(pre), std::move(tail));
}

// lim_n (y /\ R_n) where R_n is the n-th remainder of the series
// sum x_n: equals y on the divergence band (R_n stays +inf there) and 0
// elsewhere (R_n decreases to 0). Must agree with project(B, y) for B
// the infinite band of the series.
template <class S>
inline LatVec<S> band_residual_limit(const VecSeq<S>& xs, const LatVec<S>& y) {
    require_same_dim(xs.dim, y.size(), "band_residual_limit");
    if (!xs.all_nonneg()) throw DomainError("band_residual_limit: sequence must be >= 0");
    if (!is_nonneg(y)) throw DomainError("band_residual_limit: y must be >= 0");

    const Band div = series_divergence_band(xs.tail, xs.dim);
    LatVec<S> limit(xs.dim, S(0));
    for (std::size_t i = 0; i < xs.dim; ++i)
        if (div.contains(i)) limit[i] = y[i];

    const Band b = split_parts(series_sum(xs)).first;
    if (!(limit == project(b, y)))
        throw Error("band_residual_limit: residual limit disagrees with the projected value");
    return limit;
}

} // namespace supcone
