#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "supcone/condexp.hpp"

namespace supcone {

// Expression tree of order-continuous increasing maps X -> X, closed
// under composition, sum and pointwise meet/join. extend_map evaluates
// the unique left-order-continuous extension to X^s node by node:
// sums, compositions and lattice combinations extend componentwise.
template <class S>
struct MonotoneMap {
    struct Matrix {
        std::vector<std::vector<S>> a; // nonnegative coefficients, row-major
    };
    struct Projection {
        Band b;
    };
    struct Expectation {
        CondExp<S> t;
    };
    // Coordinatewise continuous increasing scalar function. The limit at
    // +inf must be declared; it is what left order continuity reduces to
    // on infinite coordinates.
    struct ScalarFn {
        std::string name;
        std::function<S(const S&)> f;
        bool limit_is_inf = true;
        S limit_value{};
        bool has_limit = true;
    };
    struct Compose; // outer after inner
    struct Sum;
    struct Meet;
    struct Join;

    using Ptr = std::shared_ptr<const MonotoneMap>;

    struct Compose { Ptr outer, inner; };
    struct Sum { Ptr lhs, rhs; };
    struct Meet { Ptr lhs, rhs; };
    struct Join { Ptr lhs, rhs; };

    std::variant<Matrix, Projection, Expectation, ScalarFn, Compose, Sum, Meet, Join> node;

    static Ptr matrix(std::vector<std::vector<S>> a) {
        for (const auto& row : a)
            for (const auto& c : row)
                if (c < 0) throw DomainError("MonotoneMap matrix: coefficients must be >= 0");
        return std::make_shared<MonotoneMap>(MonotoneMap{Matrix{std::move(a)}});
    }
    static Ptr projection(Band b) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Projection{std::move(b)}});
    }
    static Ptr expectation(CondExp<S> t) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Expectation{std::move(t)}});
    }
    static Ptr scalar_fn(ScalarFn fn) {
        return std::make_shared<MonotoneMap>(MonotoneMap{std::move(fn)});
    }
    static Ptr compose(Ptr outer, Ptr inner) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Compose{std::move(outer), std::move(inner)}});
    }
    static Ptr sum(Ptr l, Ptr r) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Sum{std::move(l), std::move(r)}});
    }
    static Ptr meet_of(Ptr l, Ptr r) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Meet{std::move(l), std::move(r)}});
    }
    static Ptr join_of(Ptr l, Ptr r) {
        return std::make_shared<MonotoneMap>(MonotoneMap{Join{std::move(l), std::move(r)}});
    }

    // Common increasing scalar nodes.
    static Ptr affine_fn(const S& slope, const S& offset) {
        if (slope < 0) throw DomainError("affine scalar node needs slope >= 0");
        ScalarFn fn;
        fn.name = "affine";
        fn.f = [slope, offset](const S& t) { return slope * t + offset; };
        fn.limit_is_inf = slope > 0;
        fn.limit_value = offset;
        return scalar_fn(std::move(fn));
    }
    static Ptr clamp_above_fn(const S& cap) {
        ScalarFn fn;
        fn.name = "clamp_above";
        fn.f = [cap](const S& t) { return t < cap ? t : cap; };
        fn.limit_is_inf = false;
        fn.limit_value = cap;
        return scalar_fn(std::move(fn));
    }
    static Ptr clamp_below_fn(const S& floor) {
        ScalarFn fn;
        fn.name = "clamp_below";
        fn.f = [floor](const S& t) { return t < floor ? floor : t; };
        fn.limit_is_inf = true;
        return scalar_fn(std::move(fn));
    }
};

template <class S>
inline ExtVec<S> extend_map(const MonotoneMap<S>& f, const ExtVec<S>& x) {
    using M = MonotoneMap<S>;
    return std::visit(
        [&](const auto& node) -> ExtVec<S> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, typename M::Matrix>) {
                if (node.a.size() != x.size())
                    throw DimensionError("extend_map: matrix dimension mismatch");
                ExtVec<S> r(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    Ext<S> acc{S(0)};
                    for (std::size_t j = 0; j < x.size(); ++j)
                        acc = ext_add(acc, ext_scale(node.a[i][j], x[j]));
                    r[i] = acc;
                }
                return r;
            } else if constexpr (std::is_same_v<T, typename M::Projection>) {
                return project(node.b, x);
            } else if constexpr (std::is_same_v<T, typename M::Expectation>) {
                return apply_ext(node.t, x);
            } else if constexpr (std::is_same_v<T, typename M::ScalarFn>) {
                if (!node.has_limit)
                    throw DomainError("extend_map: scalar node lacks a limit at +inf");
                ExtVec<S> r(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (x[i].inf)
                        r[i] = node.limit_is_inf ? Ext<S>::infinity() : Ext<S>(node.limit_value);
                    else
                        r[i] = Ext<S>(node.f(x[i].v));
                }
                return r;
            } else if constexpr (std::is_same_v<T, typename M::Compose>) {
                return extend_map(*node.outer, extend_map(*node.inner, x));
            } else if constexpr (std::is_same_v<T, typename M::Sum>) {
                return add(extend_map(*node.lhs, x), extend_map(*node.rhs, x));
            } else if constexpr (std::is_same_v<T, typename M::Meet>) {
                return meet(extend_map(*node.lhs, x), extend_map(*node.rhs, x));
            } else {
                return join(extend_map(*node.lhs, x), extend_map(*node.rhs, x));
            }
        },
        f.node);
}

// Applies the map inside X (all-finite input and output).
template <class S>
inline LatVec<S> apply_map(const MonotoneMap<S>& f, const LatVec<S>& x) {
    return to_lat(extend_map(f, to_ext(x)));
}

} // namespace supcone
