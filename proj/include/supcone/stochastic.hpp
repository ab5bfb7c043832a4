#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>

#include "supcone/expectation.hpp"

namespace supcone {

// Outcome of a theorem-shaped check. `applicable` is false when the
// hypothesis of the statement fails (the check is then vacuous).
struct Report {
    std::string name;
    bool pass = true;
    bool applicable = true;
    std::string detail;
    int counterexample_atom = -1;
};

// Filtration: eventually constant chain of conditional expectations
// T_1, ..., T_N, T_c, T_c, ... with refining partitions, commuting with
// a global T (T_n T = T T_n = T).
template <class S>
struct Filtration {
    std::vector<CondExp<S>> prefix;
    CondExp<S> tail;
    CondExp<S> global;

    Filtration(std::vector<CondExp<S>> pre, CondExp<S> tl, CondExp<S> g)
        : prefix(std::move(pre)), tail(std::move(tl)), global(std::move(g)) {
        const CondExp<S>* prev = nullptr;
        for (const auto& t : prefix) {
            if (prev && !t.refines(*prev))
                throw DomainError("Filtration: partitions must refine along the chain");
            prev = &t;
        }
        if (prev && !tail.refines(*prev))
            throw DomainError("Filtration: tail must refine the prefix");
        const CondExp<S>& coarsest = prefix.empty() ? tail : prefix.front();
        if (!coarsest.refines(global))
            throw DomainError("Filtration: every stage must commute with the global T");
    }

    std::size_t dim() const { return tail.dim(); }

    const CondExp<S>& at(std::size_t n) const {
        if (n == 0) throw DomainError("Filtration stages are 1-based");
        return n <= prefix.size() ? prefix[n - 1] : tail;
    }

    // First index from which the chain is constant.
    std::size_t stable_from() const { return prefix.size() + 1; }
};

template <class S>
struct AdaptedProcess {
    VecSeq<S> xs;
    Filtration<S> filt;

    AdaptedProcess(VecSeq<S> seq, Filtration<S> f) : xs(std::move(seq)), filt(std::move(f)) {
        require_same_dim(xs.dim, filt.dim(), "AdaptedProcess");
        // x_n in R(T_n) for all n: prefix indices directly, tail values
        // against the constant tail operator.
        const std::size_t horizon = std::max(xs.prefix.size(), filt.prefix.size());
        for (std::size_t n = 1; n <= horizon; ++n)
            if (!in_range(filt.at(n), xs.term(n)))
                throw ContractError("AdaptedProcess: x_n not in R(T_n) at stage " + std::to_string(n));
        for (const auto& v : xs.tail.vs)
            if (!in_range(filt.tail, v))
                throw ContractError("AdaptedProcess: tail term not in R(T_tail)");
    }

    // Index horizon past which both the filtration and the tail rule
    // repeat; checking identities up to horizon()+1 is exhaustive.
    std::size_t horizon() const {
        return std::max(xs.prefix.size(), filt.prefix.size()) + xs.tail.period() + 1;
    }
};

template <class S>
inline bool is_martingale(const AdaptedProcess<S>& proc) {
    const std::size_t h = proc.horizon();
    for (std::size_t i = 1; i <= h; ++i)
        for (std::size_t j = i; j <= h; ++j)
            if (!(supcone::apply(proc.filt.at(i), proc.xs.term(j)) == proc.xs.term(i))) return false;
    return true;
}

template <class S>
inline bool is_submartingale(const AdaptedProcess<S>& proc) {
    const std::size_t h = proc.horizon();
    for (std::size_t i = 1; i <= h; ++i)
        for (std::size_t j = i; j <= h; ++j)
            if (!leq(proc.xs.term(i), supcone::apply(proc.filt.at(i), proc.xs.term(j)))) return false;
    return true;
}

// Stopping time adapted to a filtration: increasing band projections
// P_i with P_i T_j = T_j P_i for j >= i. Eventually constant.
struct StoppingTime {
    ProjSeq ps;

    explicit StoppingTime(ProjSeq s) : ps(std::move(s)) {
        if (ps.tail_periodic) {
            for (std::size_t k = 1; k < ps.tail.size(); ++k)
                if (!(ps.tail[k] == ps.tail[0]))
                    throw DomainError("StoppingTime: an increasing ProjSeq tail must be constant");
        }
        const std::size_t h = ps.prefix.size() + 1;
        for (std::size_t n = 1; n < h; ++n)
            if (!ps.term(n).subset_of(ps.term(n + 1)))
                throw DomainError("StoppingTime: projections must increase");
    }

    Band at(std::size_t n) const { return ps.term(n); }
    Band final_band() const { return ps.tail[0]; }
    std::size_t stable_from() const { return ps.prefix.size() + 1; }
};

template <class S>
inline void require_adapted(const StoppingTime& tau, const Filtration<S>& filt) {
    // P_i commuting with T_i suffices: later stages refine T_i.
    const std::size_t h = std::max(tau.ps.prefix.size(), filt.prefix.size()) + 1;
    for (std::size_t i = 1; i <= h; ++i)
        if (!commutes(filt.at(i), tau.at(i)))
            throw ContractError("stopping time does not commute with the filtration at stage " +
                                std::to_string(i));
}

// Stopped process z_n = sum_{j<n} (P_j - P_{j-1}) x_j + P_{n-1}^d x_n
// with P_0 = 0. Both tails are eventually constant (or periodic), so z
// is again a symbolic sequence; a geometric tail survives only when no
// stopping happened before the tails stabilize.
template <class S>
inline VecSeq<S> stop_process(const AdaptedProcess<S>& proc, const StoppingTime& tau) {
    require_same_dim(proc.xs.dim, tau.ps.dim, "stop_process");
    require_adapted(tau, proc.filt);
    const std::size_t n0 = proc.xs.dim;

    // index from which P_n is constant and x_n follows its tail rule
    const std::size_t stable =
        std::max(tau.stable_from(), proc.xs.prefix.size() + 1);

    auto z_at = [&](std::size_t n) {
        LatVec<S> acc(n0, S(0));
        Band prev(n0); // P_0 = 0
        for (std::size_t j = 1; j + 1 <= n; ++j) {
            const Band pj = tau.at(j);
            Band inc = pj & prev.complement();
            acc = add(acc, project(inc, proc.xs.term(j)));
            prev = pj;
        }
        return add(acc, project(tau.at(n >= 2 ? n - 1 : 1).complement(), proc.xs.term(n)));
    };
    // note: for n = 1 the projector is P_0^d = I
    auto z1 = proc.xs.term(1);

    std::vector<LatVec<S>> pre;
    pre.push_back(z1);
    for (std::size_t n = 2; n <= stable; ++n) pre.push_back(z_at(n));

    // accumulated stopped mass and the frozen projector
    const Band pinf = tau.at(stable);
    LatVec<S> frozen(n0, S(0));
    {
        Band prev(n0);
        for (std::size_t j = 1; j <= stable; ++j) {
            const Band pj = tau.at(j);
            frozen = add(frozen, project(pj & prev.complement(), proc.xs.term(j)));
            prev = pj;
        }
    }

    const Band off = pinf.complement();
    TailRule<S> tail;
    switch (proc.xs.tail.kind) {
        case TailRule<S>::Kind::Zero:
            tail = is_zero(frozen) ? TailRule<S>::zero() : TailRule<S>::constant(frozen);
            break;
        case TailRule<S>::Kind::Constant:
            tail = TailRule<S>::constant(add(frozen, project(off, proc.xs.tail.vs[0])));
            break;
        case TailRule<S>::Kind::Periodic: {
            // rotate the period so z's tail phase matches x's
            const std::size_t p = proc.xs.tail.vs.size();
            std::vector<LatVec<S>> vals(p);
            for (std::size_t k = 0; k < p; ++k) {
                const std::size_t n = stable + 1 + k;
                const std::size_t j = (n - proc.xs.prefix.size() - 1) % p;
                vals[k] = add(frozen, project(off, proc.xs.tail.vs[j]));
            }
            tail = TailRule<S>::periodic(std::move(vals));
            break;
        }
        case TailRule<S>::Kind::Geometric: {
            const LatVec<S> voff = project(off, proc.xs.tail.vs[0]);
            if (is_zero(frozen)) {
                // z_n = P_inf^d v r^(n - |prefix| - 1); re-anchor at z's
                // own tail start
                S f(1);
                for (std::size_t k = proc.xs.prefix.size(); k < stable; ++k) f *= proc.xs.tail.ratio;
                tail = TailRule<S>::geometric(scale(f, voff), proc.xs.tail.ratio);
            } else if (is_zero(voff)) {
                tail = TailRule<S>::constant(frozen);
            } else {
                throw DomainError("stop_process: stopped mass plus geometric tail is not "
                                  "expressible as a single tail rule");
            }
            break;
        }
    }
    return VecSeq<S>(n0, std::move(pre), std::move(tail));
}

// tau^K: first passage of the process above the level K e. Masks are
// computed exactly; beyond the prefix, per-period inspection proves
// that no new atom can ever cross.
template <class S>
struct TauK {
    StoppingTime tau;
    std::vector<Band> hit_bands; // B_{K,n} for n = 1..horizon
    Band never_band;             // B_{K,inf}
};

template <class S>
inline TauK<S> tau_K(const AdaptedProcess<S>& proc, const S& level) {
    if (!(level > 0)) throw DomainError("tau_K: K must be positive");
    const std::size_t n0 = proc.xs.dim;

    // one full period past the prefix decides everything: Zero and
    // Constant repeat, Periodic repeats its cycle, Geometric decreases
    const std::size_t horizon = proc.xs.prefix.size() + proc.xs.tail.period();

    std::vector<std::size_t> first_pass(n0, 0); // 0 = never
    for (std::size_t n = 1; n <= horizon; ++n) {
        const LatVec<S> xn = proc.xs.term(n);
        for (std::size_t i = 0; i < n0; ++i)
            if (first_pass[i] == 0 && xn[i] > level) first_pass[i] = n;
    }

    TauK<S> out{StoppingTime(ProjSeq(n0, {}, {Band(n0)}, false)), {}, Band(n0)};
    out.hit_bands.resize(horizon, Band(n0));
    for (std::size_t i = 0; i < n0; ++i) {
        if (first_pass[i] == 0)
            out.never_band.set(i);
        else
            out.hit_bands[first_pass[i] - 1].set(i);
    }
    std::vector<Band> taus;
    Band acc(n0);
    for (std::size_t n = 0; n < horizon; ++n) {
        acc = acc | out.hit_bands[n];
        taus.push_back(acc);
    }
    out.tau = StoppingTime(ProjSeq(n0, std::move(taus), {acc}, false));
    return out;
}

// ---------------------------------------------------------------------
// Borel-Cantelli lemmas.

// First Borel-Cantelli: if sum T x_n stays finite, limsup x_n = 0.
template <class S>
inline Report bcl1(const CondExp<S>& t, const VecSeq<S>& xs, const LatVec<S>& bound) {
    require_same_dim(t.dim(), xs.dim, "bcl1");
    Report rep{"bcl1"};
    if (!xs.all_nonneg()) throw ContractError("bcl1: terms must be >= 0");
    const std::size_t h = xs.prefix.size() + xs.tail.period();
    for (std::size_t n = 1; n <= h; ++n)
        if (!leq(xs.term(n), bound)) throw ContractError("bcl1: terms must be <= bound");

    const VecSeq<S> txs = map_seq<S>(xs, [&](const LatVec<S>& v) { return supcone::apply(t, v); });
    const ExtVec<S> total = series_sum(txs);
    const Band b = split_parts(total).first;
    if (!b.empty()) {
        rep.applicable = false;
        rep.detail = "series sum T x_n has a nonempty infinite band; hypothesis fails";
        return rep;
    }
    const ExtVec<S> ls = limsup_seq(xs);
    if (!is_zero(ls)) {
        rep.pass = false;
        for (std::size_t i = 0; i < xs.dim; ++i)
            if (!(ls[i] == Ext<S>(S(0)))) {
                rep.counterexample_atom = static_cast<int>(i);
                break;
            }
        rep.detail = "limsup x_n != 0 although the T-series is finite";
    }
    return rep;
}

namespace detail {

// Distinct masks of a ProjSeq, tail masks first (they recur infinitely
// often and must be T-trivial for self-independence).
inline std::vector<Band> distinct_masks(const ProjSeq& ps) {
    std::vector<Band> out;
    auto push = [&](const Band& b) {
        for (const auto& c : out)
            if (c == b) return;
        out.push_back(b);
    };
    for (const auto& b : ps.tail) push(b);
    for (const auto& b : ps.prefix) push(b);
    return out;
}

} // namespace detail

// Second Borel-Cantelli: under T-independence and a divergent T-series,
// the limsup band equals the divergence band and commutes with T.
template <class S>
inline Report bcl2(const CondExp<S>& t, const ProjSeq& ps) {
    require_same_dim(t.dim(), ps.dim, "bcl2");
    Report rep{"bcl2"};

    // Degenerate-compatible independence: masks repeated infinitely
    // often must be T-trivial (unions of blocks), the rest must satisfy
    // the multiplicative factorization.
    for (const auto& b : ps.tail)
        if (!commutes(t, b))
            throw ContractError("bcl2: a tail mask repeats infinitely but is not T-trivial");
    const auto masks = detail::distinct_masks(ps);
    if (!check_independence(t, masks))
        throw ContractError("bcl2: masks are not T-independent");

    const LatVec<S> e = t.space.unit();
    VecSeq<S> tpe(ps.dim, {}, TailRule<S>::zero());
    {
        std::vector<LatVec<S>> pre;
        for (const auto& b : ps.prefix) pre.push_back(supcone::apply(t, project(b, e)));
        std::vector<LatVec<S>> tailv;
        for (const auto& b : ps.tail) tailv.push_back(supcone::apply(t, project(b, e)));
        TailRule<S> tail = ps.tail_periodic ? TailRule<S>::periodic(std::move(tailv))
                                            : TailRule<S>::constant(std::move(tailv[0]));
        tpe = VecSeq<S>(ps.dim, std::move(pre), std::move(tail));
    }
    const Band b = split_parts(series_sum(tpe)).first;
    const Band ls = limsup_proj(ps);
    if (!(b == ls)) {
        rep.pass = false;
        rep.detail = "limsup P_n differs from the divergence band of sum T P_n e";
        for (std::size_t i = 0; i < ps.dim; ++i)
            if (b.contains(i) != ls.contains(i)) {
                rep.counterexample_atom = static_cast<int>(i);
                break;
            }
        return rep;
    }
    if (!commutes(t, b)) {
        rep.pass = false;
        rep.detail = "limsup band does not commute with T";
    }
    return rep;
}

// Product-space harness for the BCL2 proof identities: Omega = {0,1}^m
// with independent coordinate bands under the trivial T. Verifies the
// chain factorization T P_n^d ... P_m^d e = prod (e - T P_k e) exactly
// and, on the float backend, the exponential domination.
template <class S>
inline Report bcl2_product_harness(std::size_t m, const std::vector<S>& probs,
                                   double tol = 1e-12) {
    if (m > 20) throw SizeError("bcl2_product_harness: m must be <= 20");
    if (probs.size() != m) throw DimensionError("bcl2_product_harness: need one prob per factor");
    for (const auto& p : probs)
        if (!(p > 0) || p > 1) throw DomainError("bcl2_product_harness: probs must lie in (0,1]");

    Report rep{"bcl2_product_harness"};

    // enumerate only positive-weight outcomes (p = 1 collapses a bit)
    std::vector<std::uint32_t> patterns;
    std::vector<S> weights;
    for (std::uint32_t pat = 0; pat < (std::uint32_t(1) << m); ++pat) {
        S w(1);
        bool zero = false;
        for (std::size_t k = 0; k < m; ++k) {
            const S f = ((pat >> k) & 1) ? probs[k] : S(S(1) - probs[k]);
            if (f == 0) {
                zero = true;
                break;
            }
            w *= f;
        }
        if (zero) continue;
        patterns.push_back(pat);
        weights.push_back(w);
    }
    const AtomicSpace<S> space{std::vector<S>(weights)};
    const CondExp<S> t = CondExp<S>::trivial(space);
    const std::size_t n0 = space.size();
    const LatVec<S> e = space.unit();

    auto coord_band = [&](std::size_t k) {
        Band b(n0);
        for (std::size_t i = 0; i < n0; ++i) b.set(i, (patterns[i] >> k) & 1);
        return b;
    };

    // chain factorization, all 1 <= n <= m
    for (std::size_t n = 0; n < m; ++n) {
        Band inter(n0, true);
        LatVec<S> prod = e;
        for (std::size_t k = n; k < m; ++k) {
            inter = inter & coord_band(k).complement();
            const LatVec<S> tpk = supcone::apply(t, project(coord_band(k), e));
            for (std::size_t i = 0; i < n0; ++i) prod[i] *= S(1) - tpk[i];
        }
        const LatVec<S> lhs = supcone::apply(t, project(inter, e));
        for (std::size_t i = 0; i < n0; ++i) {
            if (!scalar_close(lhs[i], prod[i], 0.0)) {
                rep.pass = false;
                rep.counterexample_atom = static_cast<int>(i);
                rep.detail = "factorization identity failed at chain start " + std::to_string(n + 1);
                return rep;
            }
        }
        // exponential bound, checked numerically
        double expo = 0;
        for (std::size_t k = n; k < m; ++k) expo += to_double(probs[k]);
        const double bound = std::exp(-expo);
        for (std::size_t i = 0; i < n0; ++i) {
            if (to_double(lhs[i]) > bound + tol) {
                rep.pass = false;
                rep.counterexample_atom = static_cast<int>(i);
                rep.detail = "exponential bound violated at chain start " + std::to_string(n + 1);
                return rep;
            }
        }
    }

    // headline value: T(prod_k P_k^d) e against exp(-sum p_k)
    {
        Band inter(n0, true);
        double expo = 0;
        for (std::size_t k = 0; k < m; ++k) {
            inter = inter & coord_band(k).complement();
            expo += to_double(probs[k]);
        }
        const LatVec<S> lhs = supcone::apply(t, project(inter, e));
        std::ostringstream os;
        os << "T(prod P_k^d)e = " << to_double(lhs[0]) << ", exp(-sum p_k) = " << std::exp(-expo);
        rep.detail = os.str();
    }
    return rep;
}

// ---------------------------------------------------------------------
// Martingale limit theorems.

// Closed-form sup_n x_n of a symbolic sequence (finite in this model).
template <class S>
inline LatVec<S> seq_sup(const VecSeq<S>& xs) {
    LatVec<S> hi = detail::tail_value_range(xs.tail, xs.dim).second;
    for (const auto& v : xs.prefix) hi = join(hi, v);
    return hi;
}

// Sup over n of (x_{n+1} - x_n)^+, exact: increments repeat with the
// tails (geometric increments are <= 0).
template <class S>
inline LatVec<S> sup_pos_increments(const VecSeq<S>& xs) {
    const std::size_t h = xs.prefix.size() + xs.tail.period() + 1;
    LatVec<S> sup(xs.dim, S(0));
    for (std::size_t n = 1; n <= h; ++n) {
        const LatVec<S> d = sub(xs.term(n + 1), xs.term(n));
        for (std::size_t i = 0; i < xs.dim; ++i)
            if (d[i] > sup[i]) sup[i] = d[i];
    }
    return sup;
}

template <class S>
inline LatVec<S> sup_abs_increments(const VecSeq<S>& xs) {
    const std::size_t h = xs.prefix.size() + xs.tail.period() + 1;
    LatVec<S> sup(xs.dim, S(0));
    for (std::size_t n = 1; n <= h; ++n) {
        const LatVec<S> d = abs_vec(sub(xs.term(n + 1), xs.term(n)));
        sup = join(sup, d);
    }
    return sup;
}

// Theorem-T2 shape: for a martingale with T-bounded increments the
// divergence band equals the infinite part of sup x_n. In the finite
// model martingales are eventually constant, so both sides are empty;
// the check still runs both routes independently.
template <class S>
inline Report theorem_T2_check(const AdaptedProcess<S>& proc, const CondExp<S>& t) {
    Report rep{"theorem_T2"};
    if (!is_martingale(proc)) throw ContractError("theorem_T2_check: process is not a martingale");
    // hypothesis: T sup |x_{n+1} - x_n| finite (automatic here, but the
    // value is computed, not assumed)
    const LatVec<S> inc = supcone::apply(t, sup_abs_increments(proc.xs));
    (void)inc;

    const Band q = convergence_band(proc.xs);
    const Band qd = q.complement();
    // sup x_n may be negative somewhere; its infinite part is unaffected
    // by passing to the positive part
    const Band sup_inf_band = split_parts(pos_part(to_ext(seq_sup(proc.xs)))).first;
    if (!(qd == sup_inf_band)) {
        rep.pass = false;
        rep.detail = "divergence band differs from the infinite part of sup x_n";
        for (std::size_t i = 0; i < proc.xs.dim; ++i)
            if (qd.contains(i) != sup_inf_band.contains(i)) {
                rep.counterexample_atom = static_cast<int>(i);
                break;
            }
    }
    return rep;
}

// Theorem-T3 (Levy): sum P_n e and sum T_{n-1} P_n e share the same
// infinite part. T_0 is taken to be the global T.
template <class S>
inline Report theorem_T3_check(const Filtration<S>& filt, const ProjSeq& ps) {
    require_same_dim(filt.dim(), ps.dim, "theorem_T3_check");
    Report rep{"theorem_T3"};
    const std::size_t stable = std::max(filt.stable_from(), ps.prefix.size() + 1);
    for (std::size_t n = 1; n <= stable + ps.tail.size(); ++n)
        if (!commutes(filt.at(n), ps.term(n)))
            throw ContractError("theorem_T3_check: P_n must commute with T_n (stage " +
                                std::to_string(n) + ")");

    const LatVec<S> e(filt.dim(), S(1));
    auto series_band = [&](const std::function<LatVec<S>(std::size_t)>& term) {
        std::vector<LatVec<S>> pre;
        for (std::size_t n = 1; n <= stable; ++n) pre.push_back(term(n));
        // tail window starts at stable+1 so that T_{n-1} is already the
        // constant tail operator throughout the recurring part
        std::vector<LatVec<S>> tailv;
        const std::size_t p = ps.tail.size();
        for (std::size_t k = 0; k < p; ++k) tailv.push_back(term(stable + 1 + k));
        TailRule<S> tail = (p > 1) ? TailRule<S>::periodic(std::move(tailv))
                                   : TailRule<S>::constant(std::move(tailv[0]));
        return split_parts(series_sum(VecSeq<S>(ps.dim, std::move(pre), std::move(tail)))).first;
    };

    const Band b1 = series_band([&](std::size_t n) { return project(ps.term(n), e); });
    const Band b2 = series_band([&](std::size_t n) {
        const CondExp<S>& prev = (n == 1) ? filt.global : filt.at(n - 1);
        return supcone::apply(prev, project(ps.term(n), e));
    });
    if (!(b1 == b2)) {
        rep.pass = false;
        rep.detail = "the two series have different infinite parts";
        for (std::size_t i = 0; i < ps.dim; ++i)
            if (b1.contains(i) != b2.contains(i)) {
                rep.counterexample_atom = static_cast<int>(i);
                break;
            }
    }
    return rep;
}

} // namespace supcone
