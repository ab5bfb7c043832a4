#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supcone/generate.hpp"

namespace supcone {

// Backend-independent model description. Values are stored as exact
// rationals; instantiation converts to the requested scalar backend.
// Serialized as UTF-8 JSON with rationals encoded as "p/q" strings so
// that save/load round-trips are bit-identical.

struct ExtRat {
    Rat v{};
    bool inf = false;
};

struct TailSpec {
    std::string kind = "zero"; // zero | constant | periodic | geometric
    std::vector<std::vector<Rat>> values;
    Rat ratio{};
};

struct VecSeqSpec {
    std::vector<std::vector<Rat>> prefix;
    TailSpec tail;
};

struct ProjSeqSpec {
    std::vector<std::vector<int>> prefix; // bands as sorted atom index lists
    std::vector<std::vector<int>> tail;
    bool tail_periodic = false;
};

// Partition = list of blocks, each block a sorted list of atom indices.
using PartitionSpec = std::vector<std::vector<int>>;

struct FiltrationSpec {
    PartitionSpec global;
    std::vector<PartitionSpec> chain; // coarse to fine
    PartitionSpec tail;
};

struct ProcessSpec {
    std::string sequence;   // name of a vector sequence
    std::string filtration; // name of a partition chain
};

struct GenBounds {
    std::size_t max_atoms = 16;
    std::size_t max_chain = 6;
    std::size_t max_prefix = 8;
    std::size_t max_period = 4;
};

struct ModelSpec {
    std::vector<std::string> atoms;
    std::vector<Rat> weights;
    std::map<std::string, FiltrationSpec> partitions;
    std::map<std::string, VecSeqSpec> sequences;
    std::map<std::string, ProjSeqSpec> proj_sequences;
    std::map<std::string, ProcessSpec> processes;
    std::map<std::string, std::vector<ExtRat>> vectors; // for ad-hoc eval

    std::size_t dim() const { return atoms.size(); }
};

// Throws ParseError / DomainError naming the offending field.
void validate_model(const ModelSpec& m);

ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& m, const std::string& path);
std::string model_to_json_string(const ModelSpec& m);
ModelSpec model_from_json_string(const std::string& text);

// Random model with degenerate cases (single atom, one-block partitions,
// identity stages) each drawn with probability >= 5%.
ModelSpec generate_model(std::uint64_t seed, const GenBounds& bounds = {});

// ---------------------------------------------------------------------
// Instantiation into a scalar backend.

template <class S>
inline AtomicSpace<S> instantiate_space(const ModelSpec& m) {
    std::vector<S> w;
    w.reserve(m.weights.size());
    for (const auto& q : m.weights) w.push_back(scalar_from_rational<S>(q));
    return AtomicSpace<S>(std::move(w));
}

template <class S>
inline LatVec<S> instantiate_vec(const std::vector<Rat>& v) {
    LatVec<S> r;
    r.reserve(v.size());
    for (const auto& q : v) r.push_back(scalar_from_rational<S>(q));
    return r;
}

template <class S>
inline ExtVec<S> instantiate_extvec(const std::vector<ExtRat>& v) {
    ExtVec<S> r;
    r.reserve(v.size());
    for (const auto& c : v)
        r.push_back(c.inf ? Ext<S>::infinity() : Ext<S>(scalar_from_rational<S>(c.v)));
    return r;
}

inline Band instantiate_band(const std::vector<int>& atoms, std::size_t dim) {
    Band b(dim);
    for (int i : atoms) {
        if (i < 0 || static_cast<std::size_t>(i) >= dim)
            throw DomainError("band atom index out of range");
        b.set(static_cast<std::size_t>(i));
    }
    return b;
}

template <class S>
inline CondExp<S> instantiate_partition(const AtomicSpace<S>& sp, const PartitionSpec& p) {
    std::vector<int> block_of(sp.size(), -1);
    for (std::size_t b = 0; b < p.size(); ++b)
        for (int i : p[b]) {
            if (i < 0 || static_cast<std::size_t>(i) >= sp.size() || block_of[i] != -1)
                throw DomainError("partition blocks must be disjoint atom subsets");
            block_of[i] = static_cast<int>(b);
        }
    for (int b : block_of)
        if (b == -1) throw DomainError("partition does not cover every atom");
    return CondExp<S>(sp, std::move(block_of));
}

template <class S>
inline TailRule<S> instantiate_tail(const TailSpec& t, std::size_t dim) {
    if (t.kind == "zero") return TailRule<S>::zero();
    if (t.kind == "constant") {
        if (t.values.size() != 1) throw DomainError("constant tail needs exactly one value");
        return TailRule<S>::constant(instantiate_vec<S>(t.values[0]));
    }
    if (t.kind == "periodic") {
        std::vector<LatVec<S>> vs;
        for (const auto& v : t.values) vs.push_back(instantiate_vec<S>(v));
        return TailRule<S>::periodic(std::move(vs));
    }
    if (t.kind == "geometric") {
        if (t.values.size() != 1) throw DomainError("geometric tail needs exactly one value");
        return TailRule<S>::geometric(instantiate_vec<S>(t.values[0]),
                                      scalar_from_rational<S>(t.ratio));
    }
    (void)dim;
    throw ParseError("unknown tail kind: " + t.kind);
}

template <class S>
inline VecSeq<S> instantiate_vecseq(const VecSeqSpec& s, std::size_t dim) {
    std::vector<LatVec<S>> pre;
    for (const auto& v : s.prefix) pre.push_back(instantiate_vec<S>(v));
    return VecSeq<S>(dim, std::move(pre), instantiate_tail<S>(s.tail, dim));
}

inline ProjSeq instantiate_projseq(const ProjSeqSpec& s, std::size_t dim) {
    std::vector<Band> pre, tail;
    for (const auto& b : s.prefix) pre.push_back(instantiate_band(b, dim));
    for (const auto& b : s.tail) tail.push_back(instantiate_band(b, dim));
    return ProjSeq(dim, std::move(pre), std::move(tail), s.tail_periodic);
}

template <class S>
inline Filtration<S> instantiate_filtration(const ModelSpec& m, const FiltrationSpec& f) {
    const AtomicSpace<S> sp = instantiate_space<S>(m);
    std::vector<CondExp<S>> chain;
    for (const auto& p : f.chain) chain.push_back(instantiate_partition<S>(sp, p));
    return Filtration<S>(std::move(chain), instantiate_partition<S>(sp, f.tail),
                         instantiate_partition<S>(sp, f.global));
}

} // namespace supcone
