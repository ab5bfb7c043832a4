#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "supcone/bands.hpp"
#include "supcone/monotone_map.hpp"

using namespace supcone;

namespace {

ExtVec<Rat> ev(std::initializer_list<const char*> cs) {
    ExtVec<Rat> r;
    for (const char* c : cs) {
        if (std::string(c) == "inf")
            r.push_back(Ext<Rat>::infinity());
        else
            r.push_back(Ext<Rat>(parse_rational(c)));
    }
    return r;
}

LatVec<Rat> lv(std::initializer_list<long> vs) {
    LatVec<Rat> r;
    for (long v : vs) r.push_back(Rat(v));
    return r;
}

Band bd(std::size_t n, std::initializer_list<std::size_t> atoms) {
    Band b(n);
    for (auto i : atoms) b.set(i);
    return b;
}

} // namespace

TEST_CASE("band projections") {
    const auto x = ev({"inf", "3"});
    CHECK(project(bd(2, {0}), x) == ev({"inf", "0"}));
    CHECK(project(Band(2, true), x) == x);
    CHECK(is_zero(project(Band(2), x)));
    const Band b = bd(2, {1});
    CHECK(add(project(b, x), project(b.complement(), x)) == x);
}

TEST_CASE("band infinities form the same boolean lattice") {
    CHECK(infinity_of<Rat>(bd(3, {1})) == ev({"0", "inf", "0"}));
    CHECK(is_zero(infinity_of<Rat>(Band(3))));
    const Band b = bd(3, {0, 1}), c = bd(3, {1, 2});
    CHECK(meet(infinity_of<Rat>(b), infinity_of<Rat>(c)) == infinity_of<Rat>(b & c));
    CHECK(multiply(infinity_of<Rat>(b), infinity_of<Rat>(c)) == infinity_of<Rat>(b & c));
    CHECK(add(infinity_of<Rat>(b), infinity_of<Rat>(c)) == infinity_of<Rat>(b | c));
    CHECK(join(infinity_of<Rat>(b), infinity_of<Rat>(c)) == infinity_of<Rat>(b | c));
}

TEST_CASE("split into infinite band plus finite part") {
    const auto [b, u] = split_parts(ev({"inf", "3", "inf"}));
    CHECK(b == bd(3, {0, 2}));
    CHECK(u == lv({0, 3, 0}));

    CHECK(split_parts(ev({"1", "2"})).first.empty());
    const auto [full, z] = split_parts(ev({"inf", "inf"}));
    CHECK(full.full());
    CHECK(is_zero(z));
    CHECK_THROWS_AS(split_parts(ev({"-1"})), DomainError);
}

TEST_CASE("multiplying by a band infinity blows up the support inside it") {
    CHECK(mul_infinity_band(ev({"2", "0", "1"}), bd(3, {0, 1})) == ev({"inf", "0", "0"}));
}

TEST_CASE("infinite band recovered by truncation against the unit") {
    CHECK(infinite_band_by_truncation(ev({"inf", "3", "0"})) == bd(3, {0}));
    CHECK(infinite_band_by_truncation(ev({"1", "2", "3"})).empty());
}

TEST_CASE("truncation against a general u with zero coordinates") {
    // u_j = 0 with x_j finite: atom j lands in the band iff x_j > 0
    const LatVec<Rat> u = lv({0, 0, 1});
    CHECK(infinite_band_by_truncation(ev({"3", "0", "inf"}), &u) == bd(3, {0, 2}));
    CHECK(infinite_band_by_truncation(ev({"0", "0", "5"}), &u).empty());
}

TEST_CASE("monotone map extension matches direct evaluation on fixed cases") {
    // a projection extends to the extended projection
    const auto p = MonotoneMap<Rat>::projection(bd(2, {0}));
    const auto x = ev({"inf", "2"});
    CHECK(extend_map(*p, x) == project(bd(2, {0}), x));

    // positive matrix [[1,1],[0,1]] sends [inf,2] to [inf,2]
    const auto m = MonotoneMap<Rat>::matrix({{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    CHECK(extend_map(*m, x) == ev({"inf", "2"}));

    // nodewise domination carries over to the extension
    const auto g = MonotoneMap<Rat>::matrix({{Rat(2), Rat(1)}, {Rat(0), Rat(3)}});
    CHECK(leq(extend_map(*m, x), extend_map(*g, x)));
    CHECK(leq(extend_map(*m, ev({"4", "0"})), extend_map(*g, ev({"4", "0"}))));
}
