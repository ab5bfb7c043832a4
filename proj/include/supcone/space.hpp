#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "supcone/errors.hpp"
#include "supcone/scalar.hpp"

namespace supcone {

// Finite atomic carrier of X = R^Omega: strictly positive weights summing
// to one, with the all-ones vector as weak order unit e.
template <class S>
struct AtomicSpace {
    std::vector<S> weights;

    AtomicSpace() = default;
    explicit AtomicSpace(std::vector<S> w) : weights(std::move(w)) { validate(); }

    std::size_t size() const { return weights.size(); }

    std::vector<S> unit() const { return std::vector<S>(size(), S(1)); }

    void validate() const {
        if (weights.empty()) throw DomainError("atomic space needs at least one atom");
        S total(0);
        for (const auto& w : weights) {
            if (!(w > 0)) throw DomainError("atom weights must be strictly positive");
            total += w;
        }
        if constexpr (is_exact_backend<S>) {
            if (total != 1) throw DomainError("atom weights must sum to 1");
        } else {
            if (std::abs(to_double(total) - 1.0) > 1e-9)
                throw DomainError("atom weights must sum to 1");
        }
    }

    friend bool operator==(const AtomicSpace& a, const AtomicSpace& b) {
        return a.weights == b.weights;
    }
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

} // namespace supcone
