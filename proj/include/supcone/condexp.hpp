#pragma once

#include <optional>
#include <vector>

#include "supcone/bands.hpp"

namespace supcone {

// Conditional expectation operator from a weighted partition: blockwise
// weighted averaging. Strictly positive (weights are), order continuous
// (finite model), idempotent, with Te = e.
template <class S>
struct CondExp {
    AtomicSpace<S> space;
    std::vector<int> block_of; // atom -> block id, ids 0..nblocks-1 all used
    int nblocks = 0;

    CondExp() = default;
    CondExp(AtomicSpace<S> sp, std::vector<int> blocks)
        : space(std::move(sp)), block_of(std::move(blocks)) {
        if (block_of.size() != space.size())
            throw DimensionError("CondExp: partition does not cover the space");
        int maxb = -1;
        for (int b : block_of) {
            if (b < 0) throw DomainError("CondExp: negative block id");
            if (b > maxb) maxb = b;
        }
        nblocks = maxb + 1;
        std::vector<char> seen(nblocks, 0);
        for (int b : block_of) seen[b] = 1;
        for (char c : seen)
            if (!c) throw DomainError("CondExp: empty partition block");
    }

    static CondExp identity(const AtomicSpace<S>& sp) {
        std::vector<int> blocks(sp.size());
        for (std::size_t i = 0; i < sp.size(); ++i) blocks[i] = static_cast<int>(i);
        return CondExp(sp, blocks);
    }

    static CondExp trivial(const AtomicSpace<S>& sp) {
        return CondExp(sp, std::vector<int>(sp.size(), 0));
    }

    std::size_t dim() const { return space.size(); }

    bool is_identity() const { return nblocks == static_cast<int>(dim()); }

    // True when every block of `coarser` is a union of our blocks.
    bool refines(const CondExp& coarser) const {
        require_same_dim(dim(), coarser.dim(), "CondExp::refines");
        // our block -> coarser block must be well defined
        std::vector<int> img(nblocks, -1);
        for (std::size_t i = 0; i < dim(); ++i) {
            int& m = img[block_of[i]];
            if (m == -1)
                m = coarser.block_of[i];
            else if (m != coarser.block_of[i])
                return false;
        }
        return true;
    }

    friend bool operator==(const CondExp& a, const CondExp& b) {
        if (!(a.space == b.space) || a.dim() != b.dim()) return false;
        // same partition up to block relabeling
        return a.refines(b) && b.refines(a);
    }
};

template <class S>
inline LatVec<S> apply(const CondExp<S>& t, const LatVec<S>& x) {
    require_same_dim(t.dim(), x.size(), "CondExp apply");
    std::vector<S> num(t.nblocks, S(0)), den(t.nblocks, S(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        num[t.block_of[i]] += t.space.weights[i] * x[i];
        den[t.block_of[i]] += t.space.weights[i];
    }
    LatVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = num[t.block_of[i]] / den[t.block_of[i]];
    return r;
}

// T^s on X^s_+ (and, structurally, on any ExtVec with finite negative
// part): a block averages to +inf iff it meets an infinite coordinate,
// forced by left order continuity and strict positivity of the weights.
template <class S>
inline ExtVec<S> apply_ext(const CondExp<S>& t, const ExtVec<S>& x) {
    require_same_dim(t.dim(), x.size(), "CondExp apply_ext");
    std::vector<S> num(t.nblocks, S(0)), den(t.nblocks, S(0));
    std::vector<char> has_inf(t.nblocks, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int b = t.block_of[i];
        den[b] += t.space.weights[i];
        if (x[i].inf)
            has_inf[b] = 1;
        else
            num[b] += t.space.weights[i] * x[i].v;
    }
    ExtVec<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int b = t.block_of[i];
        r[i] = has_inf[b] ? Ext<S>::infinity() : Ext<S>(num[b] / den[b]);
    }
    return r;
}

// x in R(T^s) = R(T)^s: block-constant, where a block may be uniformly
// +inf.
template <class S>
inline bool in_range(const CondExp<S>& t, const ExtVec<S>& x) {
    require_same_dim(t.dim(), x.size(), "CondExp in_range");
    std::vector<std::optional<Ext<S>>> rep(t.nblocks);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto& r = rep[t.block_of[i]];
        if (!r)
            r = x[i];
        else if (!(*r == x[i]))
            return false;
    }
    return true;
}

template <class S>
inline bool in_range(const CondExp<S>& t, const LatVec<S>& x) {
    return in_range(t, to_ext(x));
}

// TP = PT holds exactly when B is a union of partition blocks.
template <class S>
inline bool commutes(const CondExp<S>& t, const Band& b) {
    require_same_dim(t.dim(), b.dim(), "CondExp commutes");
    std::vector<char> in(t.nblocks, 0), out(t.nblocks, 0);
    for (std::size_t i = 0; i < b.dim(); ++i)
        (b.contains(i) ? in : out)[t.block_of[i]] = 1;
    for (int k = 0; k < t.nblocks; ++k)
        if (in[k] && out[k]) return false;
    return true;
}

// When T and P_B do not commute, a basis vector on an atom of a split
// block witnesses TPx != PTx.
template <class S>
inline std::optional<LatVec<S>> commutation_witness(const CondExp<S>& t, const Band& b) {
    if (commutes(t, b)) return std::nullopt;
    for (std::size_t i = 0; i < t.dim(); ++i) {
        LatVec<S> basis(t.dim(), S(0));
        basis[i] = S(1);
        const auto tp = supcone::apply(t, project(b, basis));
        const auto pt = project(b, supcone::apply(t, basis));
        if (!(tp == pt)) return basis;
    }
    return std::nullopt; // unreachable: a split block always yields a witness
}

// T-independence as multiplicative factorization. Checking every full
// sign pattern Q_i in {P_i, P_i^d} is equivalent to the definition over
// all subfamilies: summing factorized full products over the choices of
// the omitted indices telescopes through T P_i e + T P_i^d e = e.
template <class S>
inline bool check_independence(const CondExp<S>& t, const std::vector<Band>& bands,
                               std::size_t max_bands = 20) {
    if (bands.size() > max_bands)
        throw SizeError("check_independence: too many bands (2^n blowup)");
    const std::size_t n = t.dim();
    const LatVec<S> e = t.space.unit();
    std::vector<LatVec<S>> tpe, tpde;
    tpe.reserve(bands.size());
    for (const auto& b : bands) {
        require_same_dim(n, b.dim(), "check_independence");
        tpe.push_back(supcone::apply(t, project(b, e)));
        tpde.push_back(supcone::apply(t, project(b.complement(), e)));
    }
    const std::size_t total = std::size_t(1) << bands.size();
    for (std::size_t choice = 0; choice < total; ++choice) {
        Band inter(n, true);
        LatVec<S> rhs = e;
        for (std::size_t i = 0; i < bands.size(); ++i) {
            const bool use_complement = (choice >> i) & 1;
            inter = inter & (use_complement ? bands[i].complement() : bands[i]);
            const auto& f = use_complement ? tpde[i] : tpe[i];
            for (std::size_t j = 0; j < n; ++j) rhs[j] *= f[j];
        }
        if (!(supcone::apply(t, project(inter, e)) == rhs)) return false;
    }
    return true;
}

} // namespace supcone
