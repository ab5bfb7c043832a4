#pragma once

#include <cstdint>
#include <random>

#include "supcone/stochastic.hpp"

namespace supcone {

// Deterministic RNG helpers. We avoid std distributions: their output
// is implementation-defined, and reports must be byte-reproducible.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }

    // uniform in [lo, hi] inclusive
    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
    }
    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(unsigned percent) { return next() % 100 < percent; }
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// ---------------------------------------------------------------------
// Random model pieces. Sizes follow the documented defaults: 1-16
// atoms, partition chains of length <= 6, prefixes <= 8, periods <= 4.

template <class S>
inline S gen_scalar(Rng& rng, long lo = -8, long hi = 8) {
    const long num = rng.uniform_int(lo, hi);
    const long den = rng.uniform_int(1, 4);
    return scalar_from_rational<S>(Rat(num, den));
}

template <class S>
inline AtomicSpace<S> gen_space(Rng& rng, std::size_t max_atoms = 16) {
    const std::size_t n = rng.chance(5) ? 1 : rng.uniform(1, max_atoms);
    std::vector<Rat> raw(n);
    Rat total(0);
    for (auto& w : raw) {
        w = Rat(rng.uniform_int(1, 9));
        total += w;
    }
    std::vector<S> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = scalar_from_rational<S>(raw[i] / total);
    return AtomicSpace<S>(std::move(weights));
}

template <class S>
inline LatVec<S> gen_latvec(Rng& rng, std::size_t n, long lo = -8, long hi = 8) {
    LatVec<S> v(n);
    for (auto& c : v) c = gen_scalar<S>(rng, lo, hi);
    return v;
}

template <class S>
inline LatVec<S> gen_nonneg_latvec(Rng& rng, std::size_t n, long hi = 8) {
    return gen_latvec<S>(rng, n, 0, hi);
}

template <class S>
inline ExtVec<S> gen_extvec(Rng& rng, std::size_t n, unsigned inf_percent = 25,
                            bool nonneg = false) {
    ExtVec<S> v(n);
    for (auto& c : v) {
        if (rng.chance(inf_percent))
            c = Ext<S>::infinity();
        else
            c = Ext<S>(gen_scalar<S>(rng, nonneg ? 0 : -8, 8));
    }
    return v;
}

inline Band gen_band(Rng& rng, std::size_t n, unsigned in_percent = 50) {
    Band b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, rng.chance(in_percent));
    return b;
}

template <class S>
inline CondExp<S> gen_condexp(Rng& rng, const AtomicSpace<S>& sp, std::size_t max_blocks = 0) {
    const std::size_t n = sp.size();
    if (rng.chance(5)) return CondExp<S>::trivial(sp);
    if (rng.chance(5)) return CondExp<S>::identity(sp);
    const std::size_t nb = max_blocks ? std::min(max_blocks, n) : rng.uniform(1, n);
    std::vector<int> blocks(n);
    // guarantee every block id is used
    for (std::size_t i = 0; i < n; ++i)
        blocks[i] = i < nb ? static_cast<int>(i) : static_cast<int>(rng.uniform(0, nb - 1));
    // shuffle assignments
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = rng.uniform(0, i);
        std::swap(blocks[i], blocks[j]);
    }
    return CondExp<S>(sp, std::move(blocks));
}

// A partition strictly or weakly refining `coarse` (splits some blocks).
template <class S>
inline CondExp<S> gen_refinement(Rng& rng, const CondExp<S>& coarse) {
    const std::size_t n = coarse.dim();
    std::vector<int> blocks(n);
    int next_id = 0;
    std::vector<std::vector<int>> members(coarse.nblocks);
    for (std::size_t i = 0; i < n; ++i) members[coarse.block_of[i]].push_back(static_cast<int>(i));
    for (auto& blk : members) {
        if (blk.size() > 1 && rng.chance(50)) {
            // split into two nonempty halves
            const std::size_t cut = rng.uniform(1, blk.size() - 1);
            for (std::size_t k = 0; k < blk.size(); ++k)
                blocks[blk[k]] = next_id + (k < cut ? 0 : 1);
            next_id += 2;
        } else {
            for (int a : blk) blocks[a] = next_id;
            ++next_id;
        }
    }
    return CondExp<S>(coarse.space, std::move(blocks));
}

template <class S>
inline Filtration<S> gen_filtration(Rng& rng, const AtomicSpace<S>& sp,
                                    std::size_t max_len = 6) {
    CondExp<S> global = rng.chance(40) ? CondExp<S>::trivial(sp) : gen_condexp<S>(rng, sp, 2);
    std::vector<CondExp<S>> chain;
    CondExp<S> cur = gen_refinement(rng, global);
    const std::size_t len = rng.uniform(0, max_len - 1);
    for (std::size_t k = 0; k < len; ++k) {
        chain.push_back(cur);
        cur = gen_refinement(rng, cur);
    }
    return Filtration<S>(std::move(chain), std::move(cur), std::move(global));
}

template <class S>
inline TailRule<S> gen_tail(Rng& rng, std::size_t n, bool nonneg) {
    switch (rng.uniform(0, 3)) {
        case 0: return TailRule<S>::zero();
        case 1: return TailRule<S>::constant(gen_latvec<S>(rng, n, nonneg ? 0 : -8, 8));
        case 2: {
            std::vector<LatVec<S>> vs(rng.uniform(1, 4));
            for (auto& v : vs) v = gen_latvec<S>(rng, n, nonneg ? 0 : -8, 8);
            return TailRule<S>::periodic(std::move(vs));
        }
        default: {
            const S r = scalar_from_rational<S>(Rat(rng.uniform_int(1, 3), 4));
            return TailRule<S>::geometric(gen_nonneg_latvec<S>(rng, n), r);
        }
    }
}

template <class S>
inline VecSeq<S> gen_vecseq(Rng& rng, std::size_t n, bool nonneg = false,
                            std::size_t max_prefix = 8) {
    std::vector<LatVec<S>> prefix(rng.uniform(0, max_prefix));
    for (auto& v : prefix) v = gen_latvec<S>(rng, n, nonneg ? 0 : -8, 8);
    return VecSeq<S>(n, std::move(prefix), gen_tail<S>(rng, n, nonneg));
}

inline ProjSeq gen_projseq(Rng& rng, std::size_t n, std::size_t max_prefix = 8) {
    std::vector<Band> prefix(rng.uniform(0, max_prefix));
    for (auto& b : prefix) b = gen_band(rng, n);
    const bool periodic = rng.chance(40);
    std::vector<Band> tail(periodic ? rng.uniform(1, 4) : 1);
    for (auto& b : tail) b = gen_band(rng, n);
    return ProjSeq(n, std::move(prefix), std::move(tail), periodic);
}

// Union of partition blocks of t: a band commuting with t.
template <class S>
inline Band gen_block_union(Rng& rng, const CondExp<S>& t) {
    std::vector<char> pick(t.nblocks);
    for (auto& c : pick) c = rng.chance(50) ? 1 : 0;
    Band b(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (pick[t.block_of[i]]) b.set(i);
    return b;
}

// Closed (Doob) martingale x_n = T_n y for a random y; eventually
// constant together with the filtration.
template <class S>
inline AdaptedProcess<S> gen_martingale(Rng& rng, const Filtration<S>& filt) {
    const LatVec<S> y = gen_latvec<S>(rng, filt.dim());
    std::vector<LatVec<S>> prefix;
    for (std::size_t n = 1; n <= filt.prefix.size(); ++n)
        prefix.push_back(supcone::apply(filt.at(n), y));
    TailRule<S> tail = TailRule<S>::constant(supcone::apply(filt.tail, y));
    return AdaptedProcess<S>(VecSeq<S>(filt.dim(), std::move(prefix), std::move(tail)), filt);
}

// Submartingale: running maximum of a closed martingale (bounded
// increments come free from the finite model).
template <class S>
inline AdaptedProcess<S> gen_submartingale(Rng& rng, const Filtration<S>& filt) {
    const AdaptedProcess<S> mart = gen_martingale(rng, filt);
    std::vector<LatVec<S>> prefix;
    LatVec<S> acc = mart.xs.term(1);
    const std::size_t h = filt.prefix.size() + 1;
    for (std::size_t n = 1; n <= h; ++n) {
        acc = join(acc, mart.xs.term(n));
        prefix.push_back(acc);
    }
    TailRule<S> tail = TailRule<S>::constant(prefix.back());
    prefix.pop_back();
    return AdaptedProcess<S>(VecSeq<S>(filt.dim(), std::move(prefix), std::move(tail)), filt);
}

// Bounded stopping time adapted to the filtration: increasing unions of
// blocks of the successive stages.
template <class S>
inline StoppingTime gen_stopping_time(Rng& rng, const Filtration<S>& filt) {
    std::vector<Band> masks;
    Band cur(filt.dim());
    const std::size_t len = filt.prefix.size() + 1;
    for (std::size_t n = 1; n <= len; ++n) {
        cur = cur | gen_block_union(rng, filt.at(n));
        masks.push_back(cur);
    }
    if (rng.chance(50)) cur = Band(filt.dim(), true); // P eventually = I
    Band final_mask = cur;
    return StoppingTime(ProjSeq(filt.dim(), std::move(masks), {final_mask}, false));
}

} // namespace supcone
