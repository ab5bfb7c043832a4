#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "supcone/vec.hpp"

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

} // namespace

TEST_CASE("extended lattice operations are coordinatewise") {
    const auto x = ev({"inf", "2", "0"});
    const auto y = ev({"1", "inf", "0"});
    CHECK(meet(x, y) == ev({"1", "2", "0"}));
    CHECK(join(x, y) == ev({"inf", "inf", "0"}));
    CHECK(meet(x, x) == x);
    CHECK(join(x, x) == x);
}

TEST_CASE("addition absorbs infinities") {
    CHECK(add(ev({"inf", "1", "0"}), ev({"2", "3", "0"})) == ev({"inf", "4", "0"}));
}

TEST_CASE("scalar multiplication follows the cone conventions") {
    CHECK(scale(Rat(0), ev({"inf", "5"})) == ev({"0", "0"}));
    CHECK(scale(Rat(2), ev({"inf", "1"})) == ev({"inf", "2"}));
    CHECK(scale(Rat(-2), ev({"3"})) == ev({"-6"}));
    CHECK_THROWS_AS(scale(Rat(-1), ev({"inf"})), DomainError);
}

TEST_CASE("subtraction needs a finite subtrahend") {
    CHECK(sub(ev({"inf", "4"}), lv({1, 1})) == ev({"inf", "3"}));
    CHECK(ext_sub(Ext<Rat>::infinity(), Rat(7)) == Ext<Rat>::infinity());
}

TEST_CASE("positive and negative parts") {
    const auto x = ev({"inf", "-2", "3"});
    CHECK(pos_part(x) == ev({"inf", "0", "3"}));
    CHECK(neg_part(x) == lv({0, 2, 0}));
    // disjointness
    CHECK(is_zero(meet(pos_part(x), to_ext(neg_part(x)))));
    // x >= 0 means the negative part vanishes
    CHECK(is_zero(neg_part(ev({"inf", "0", "5"}))));
}

TEST_CASE("translation distributes over the meet with a finite summand") {
    const auto x = ev({"inf", "2", "-1"});
    const auto a = lv({1, -3, 2});
    const auto y = ev({"4", "inf", "0"});
    CHECK(add(x, meet(to_ext(a), y)) == meet(add(x, to_ext(a)), add(x, y)));
}

TEST_CASE("riesz decomposition on mixed finite and infinite coordinates") {
    const auto x = ev({"5", "inf", "1"});
    const auto y = ev({"3", "inf", "0"});
    const auto z = ev({"4", "2", "1"});
    const auto [y1, z1] = riesz_decompose(x, y, z);
    CHECK(y1 == ev({"3", "inf", "0"}));
    CHECK(z1 == ev({"2", "0", "1"}));
    CHECK(leq(y1, y));
    CHECK(leq(z1, z));
    CHECK(add(y1, z1) == x);
}

TEST_CASE("riesz decomposition degenerate splits") {
    const auto y = ev({"3", "inf"});
    const auto zero = ev({"0", "0"});
    const auto [a, b] = riesz_decompose(y, y, zero);
    CHECK(a == y);
    CHECK(b == zero);

    const auto [c, d] = riesz_decompose(ev({"inf"}), ev({"2"}), ev({"inf"}));
    CHECK(c == ev({"2"}));
    CHECK(d == ev({"inf"}));

    CHECK_THROWS_AS(riesz_decompose(ev({"9"}), ev({"1"}), ev({"2"})), ContractError);
}

TEST_CASE("products on the positive cone") {
    CHECK(multiply(ev({"inf", "2", "0"}), ev({"0", "3", "inf"})) == ev({"0", "6", "0"}));
    const auto x = ev({"inf", "5", "0"});
    const auto e = ev({"1", "1", "1"});
    CHECK(multiply(x, e) == x);
    CHECK_THROWS_AS(multiply(ev({"-1"}), ev({"2"})), DomainError);
    // distributivity on a fixed instance
    const auto y = ev({"2", "0", "inf"});
    const auto z = ev({"1", "3", "0"});
    CHECK(multiply(x, add(y, z)) == add(multiply(x, y), multiply(x, z)));
}

TEST_CASE("truncation") {
    CHECK(truncate(ev({"inf", "3"}), Rat(5)) == lv({5, 3}));
    CHECK(truncate(ev({"0", "0"}), Rat(7)) == lv({0, 0}));
    // truncations increase with k and flatten on finite coordinates
    const auto x = ev({"inf", "3"});
    CHECK(leq(truncate(x, Rat(2)), truncate(x, Rat(4))));
    CHECK(truncate(x, Rat(100))[1] == Rat(3));
}

TEST_CASE("exponentials run on the float backend only") {
    CHECK_THROWS_AS(exp_neg(ev({"1"})), BackendError);
    CHECK_THROWS_AS(exp_vec(lv({1})), BackendError);

    ExtVec<double> x{Ext<double>(0.0), Ext<double>::infinity()};
    const LatVec<double> r = exp_neg(x);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r[1] == 0.0);

    ExtVec<double> h{Ext<double>(0.5)};
    const LatVec<double> eh = exp_neg(h);
    CHECK(eh[0] == doctest::Approx(0.6065306597).epsilon(1e-9));
    CHECK(1.0 - 0.5 <= eh[0] + 1e-12);

    // exp(x) * exp(-x) = e for finite x
    const LatVec<double> v{0.25, -1.5, 3.0};
    const LatVec<double> a = exp_vec(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(a[i] * std::exp(-v[i]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("powers of the absolute value") {
    const auto x = ev({"-2", "inf", "3"});
    CHECK(abs_pow(x, 1) == ev({"2", "inf", "3"}));
    CHECK(abs_pow(x, 2) == ev({"4", "inf", "9"}));
    CHECK_THROWS_AS(abs_pow(x, 3), DomainError);
    CHECK_THROWS_AS(abs_pow_real(ev({"2"}), 0.5), BackendError);
    ExtVec<double> y{Ext<double>(4.0)};
    CHECK(abs_pow_real(y, 0.5)[0].v == doctest::Approx(2.0));
}
