#pragma once

#include "supcone/condexp.hpp"
#include "supcone/seq.hpp"

namespace supcone {

// Dyadic epsilon grid for the definitional TP-convergence predicate.
// On finite models the predicate is monotone in epsilon, so the grid
// plus the damped form below is decisive.
inline constexpr int kTpGridDepth = 12;

namespace detail {

// Eventual masks of {|x_n - target| > eps} along the tail. For
// Geometric tails the mask settles once v r^j is small; the boundary
// coordinate |t_i| == eps resolves by the sign of t_i.
template <class S>
inline std::vector<Band> tp_eventual_masks(const VecSeq<S>& xs, const LatVec<S>& target,
                                           const S& eps) {
    auto mask_of = [&](const LatVec<S>& v) {
        Band b(xs.dim);
        for (std::size_t i = 0; i < xs.dim; ++i)
            b.set(i, scalar_abs(S(v[i] - target[i])) > eps);
        return b;
    };
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
            return {mask_of(LatVec<S>(xs.dim, S(0)))};
        case TailRule<S>::Kind::Constant:
            return {mask_of(xs.tail.vs[0])};
        case TailRule<S>::Kind::Periodic: {
            std::vector<Band> ms;
            for (const auto& v : xs.tail.vs) ms.push_back(mask_of(v));
            return ms;
        }
        case TailRule<S>::Kind::Geometric: {
            const auto& v = xs.tail.vs[0];
            Band b(xs.dim);
            for (std::size_t i = 0; i < xs.dim; ++i) {
                const S a = scalar_abs(target[i]);
                if (a > eps)
                    b.set(i);
                else if (a == eps && target[i] < 0 && v[i] > 0)
                    b.set(i); // |v r^j + eps| stays above eps
            }
            return {b};
        }
    }
    throw Error("unreachable");
}

// Order limit of T(|x_n - target| /\ u) when it exists; nullopt when
// the damped sequence oscillates.
template <class S>
inline std::optional<LatVec<S>> tp_damped_limit(const CondExp<S>& t, const VecSeq<S>& xs,
                                                const LatVec<S>& target, const LatVec<S>& u) {
    auto damped = [&](const LatVec<S>& v) { return supcone::apply(t, meet(abs_vec(sub(v, target)), u)); };
    switch (xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
        case TailRule<S>::Kind::Geometric:
            return damped(LatVec<S>(xs.dim, S(0)));
        case TailRule<S>::Kind::Constant:
            return damped(xs.tail.vs[0]);
        case TailRule<S>::Kind::Periodic: {
            LatVec<S> first = damped(xs.tail.vs[0]);
            for (std::size_t k = 1; k < xs.tail.vs.size(); ++k)
                if (!(damped(xs.tail.vs[k]) == first)) return std::nullopt;
            return first;
        }
    }
    throw Error("unreachable");
}

} // namespace detail

// Definitional predicate: T P_{(|x_n - target| - eps e)^+} e -> 0 for
// every grid epsilon. P_{(y)^+} e is the indicator of {y > 0}, so each
// term is T applied to the indicator of {|x_n - target| > eps}; by
// strict positivity the limit is 0 iff the eventual masks are empty.
template <class S>
inline bool tp_converges_definitional(const CondExp<S>& t, const VecSeq<S>& xs,
                                      const LatVec<S>& target) {
    require_same_dim(t.dim(), xs.dim, "tp_converges");
    S eps(1);
    for (int g = 0; g <= kTpGridDepth; ++g) {
        for (const auto& m : detail::tp_eventual_masks(xs, target, eps))
            if (!m.empty()) return false;
        eps /= 2;
    }
    return true;
}

// Damped form (Lemma LA (iii)): T(|x_n - target| /\ e) -> 0.
template <class S>
inline bool tp_converges_damped(const CondExp<S>& t, const VecSeq<S>& xs,
                                const LatVec<S>& target) {
    require_same_dim(t.dim(), xs.dim, "tp_converges");
    const auto lim = detail::tp_damped_limit(t, xs, target, LatVec<S>(xs.dim, S(1)));
    return lim.has_value() && is_zero(*lim);
}

// Lemma LA (ii) instance for a single u >= 0.
template <class S>
inline bool tp_converges_damped_by(const CondExp<S>& t, const VecSeq<S>& xs,
                                   const LatVec<S>& target, const LatVec<S>& u) {
    const auto lim = detail::tp_damped_limit(t, xs, target, u);
    return lim.has_value() && is_zero(*lim);
}

// T-conditional-probability convergence: both routes are evaluated and
// must agree; the conjunction is returned.
template <class S>
inline bool tp_converges(const CondExp<S>& t, const VecSeq<S>& xs, const LatVec<S>& target) {
    return tp_converges_definitional(t, xs, target) && tp_converges_damped(t, xs, target);
}

} // namespace supcone
