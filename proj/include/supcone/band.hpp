#pragma once

#include <cstddef>
#include <vector>

#include "supcone/space.hpp"

namespace supcone {

// Projection band in a finite atomic space: an atom mask. The band
// lattice is Boolean: B join B^d = full, B meet B^d = empty.
struct Band {
    std::vector<char> mask;

    Band() = default;
    explicit Band(std::size_t n, bool all = false) : mask(n, all ? 1 : 0) {}
    explicit Band(std::vector<char> m) : mask(std::move(m)) {}

    std::size_t dim() const { return mask.size(); }
    bool contains(std::size_t i) const { return mask[i] != 0; }
    void set(std::size_t i, bool b = true) { mask[i] = b ? 1 : 0; }

    bool empty() const {
        for (char c : mask)
            if (c) return false;
        return true;
    }
    bool full() const {
        for (char c : mask)
            if (!c) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t k = 0;
        for (char c : mask) k += (c != 0);
        return k;
    }

    Band complement() const {
        Band r(dim());
        for (std::size_t i = 0; i < dim(); ++i) r.mask[i] = mask[i] ? 0 : 1;
        return r;
    }

    friend Band operator&(const Band& a, const Band& b) {
        require_same_dim(a.dim(), b.dim(), "band meet");
        Band r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.mask[i] = (a.mask[i] && b.mask[i]) ? 1 : 0;
        return r;
    }
    friend Band operator|(const Band& a, const Band& b) {
        require_same_dim(a.dim(), b.dim(), "band join");
        Band r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.mask[i] = (a.mask[i] || b.mask[i]) ? 1 : 0;
        return r;
    }
    friend bool operator==(const Band& a, const Band& b) { return a.mask == b.mask; }

    bool subset_of(const Band& other) const {
        require_same_dim(dim(), other.dim(), "band subset");
        for (std::size_t i = 0; i < dim(); ++i)
            if (mask[i] && !other.mask[i]) return false;
        return true;
    }
};

} // namespace supcone
