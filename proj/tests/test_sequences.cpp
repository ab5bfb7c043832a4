#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "supcone/expectation.hpp"

using namespace supcone;

namespace {

LatVec<Rat> lv(std::initializer_list<const char*> cs) {
    LatVec<Rat> r;
    for (const char* c : cs) r.push_back(parse_rational(c));
    return r;
}

Band bd(std::size_t n, std::initializer_list<std::size_t> atoms) {
    Band b(n);
    for (auto i : atoms) b.set(i);
    return b;
}

using Seq = VecSeq<Rat>;
using Tail = TailRule<Rat>;

} // namespace

TEST_CASE("order limits of symbolic tails") {
    const Seq geo(2, {}, Tail::geometric(lv({"1", "2"}), Rat(1, 2)));
    CHECK(order_limit(geo) == LatVec<Rat>{Rat(0), Rat(0)});

    const Seq per(1, {}, Tail::periodic({lv({"1"}), lv({"2"})}));
    CHECK(!order_limit(per).has_value());

    const Seq con(2, {}, Tail::constant(lv({"3", "3"})));
    CHECK(order_limit(con) == lv({"3", "3"}));
}

TEST_CASE("uo-convergence agrees with the order limit") {
    const Seq geo(2, {lv({"7", "-1"})}, Tail::geometric(lv({"1", "2"}), Rat(1, 2)));
    CHECK(uo_limit(geo, lv({"0", "0"})));
    CHECK(!uo_limit(geo, lv({"1", "0"})));
    CHECK(uo_cauchy(geo));

    const Seq per(1, {}, Tail::periodic({lv({"1"}), lv({"2"})}));
    CHECK(!uo_limit(per, lv({"1"})));
    CHECK(!uo_cauchy(per));
}

TEST_CASE("limsup and liminf of periodic tails") {
    const Seq per(2, {}, Tail::periodic({lv({"1", "0"}), lv({"0", "1"})}));
    CHECK(limsup_seq(per) == to_ext(lv({"1", "1"})));
    CHECK(liminf_seq(per) == lv({"0", "0"}));

    const Seq con(2, {}, Tail::constant(lv({"2", "5"})));
    CHECK(limsup_seq(con) == to_ext(lv({"2", "5"})));
    CHECK(liminf_seq(con) == lv({"2", "5"}));
    CHECK(leq(to_ext(liminf_seq(per)), limsup_seq(per)));
}

TEST_CASE("series sums in closed form") {
    // terms (1/2)^n [1,2] for n >= 1 sum to [1,2]
    const Seq geo(2, {}, Tail::geometric(lv({"1/2", "1"}), Rat(1, 2)));
    CHECK(series_sum(geo) == to_ext(lv({"1", "2"})));

    const Seq per(2, {}, Tail::periodic({lv({"1", "0"}), lv({"0", "1"})}));
    const ExtVec<Rat> inf2{Ext<Rat>::infinity(), Ext<Rat>::infinity()};
    CHECK(series_sum(per) == inf2);

    CHECK(is_zero(series_sum(Seq(2, {}, Tail::zero()))));
    CHECK_THROWS_AS(series_sum(Seq(1, {lv({"-1"})}, Tail::zero())), DomainError);
}

TEST_CASE("series monotonicity and prefix independence of the divergence band") {
    const Seq small(1, {lv({"1"})}, Tail::geometric(lv({"1"}), Rat(1, 2)));
    const Seq big(1, {lv({"2"})}, Tail::geometric(lv({"2"}), Rat(1, 2)));
    CHECK(leq(series_sum(small), series_sum(big)));

    const Tail t = Tail::constant(lv({"0", "1"}));
    const Seq bare(2, {}, t);
    const Seq padded(2, {lv({"9", "9"}), lv({"4", "0"})}, t);
    CHECK(split_parts(series_sum(bare)).first == split_parts(series_sum(padded)).first);
}

TEST_CASE("projection sequence limsup and liminf") {
    const ProjSeq per(3, {}, {bd(3, {0}), bd(3, {1})}, true);
    CHECK(limsup_proj(per) == bd(3, {0, 1}));
    CHECK(liminf_proj(per).empty());

    const ProjSeq con(3, {bd(3, {2})}, {bd(3, {0, 1})}, false);
    CHECK(limsup_proj(con) == bd(3, {0, 1}));
    CHECK(liminf_proj(con) == bd(3, {0, 1}));
}

TEST_CASE("tail oscillation in closed form") {
    const Seq con(2, {lv({"5", "0"}), lv({"1", "1"})}, Tail::constant(lv({"1", "1"})));
    const Seq osc = tail_oscillation(con);
    // beyond the prefix the sequence is constant, so oscillation dies
    CHECK(is_zero(osc.term(3)));
    CHECK(osc.term(1) == lv({"4", "1"}));

    const Seq geo(1, {}, Tail::geometric(lv({"4"}), Rat(1, 2)));
    const Seq gosc = tail_oscillation(geo);
    CHECK(gosc.term(1) == lv({"4"}));
    CHECK(gosc.term(3) == lv({"1"}));
    CHECK(uo_cauchy(geo));
}

TEST_CASE("band residual limit matches the projected value") {
    const Seq xs(2, {lv({"3", "0"})}, Tail::constant(lv({"0", "1"})));
    CHECK(band_residual_limit(xs, lv({"2", "5"})) == lv({"0", "5"}));
}

TEST_CASE("tp-convergence under the identity operator is uo-convergence") {
    const AtomicSpace<Rat> sp{{Rat(1, 2), Rat(1, 2)}};
    const CondExp<Rat> id = CondExp<Rat>::identity(sp);
    const Seq geo(2, {}, Tail::geometric(lv({"1", "2"}), Rat(1, 2)));
    CHECK(tp_converges(id, geo, lv({"0", "0"})));
    CHECK(!tp_converges(id, geo, lv({"1", "0"})));

    const Seq per(2, {}, Tail::periodic({lv({"1", "0"}), lv({"0", "1"})}));
    CHECK(!tp_converges(id, per, lv({"0", "0"})));
}

TEST_CASE("damped tp-convergence against a general damping vector") {
    const AtomicSpace<Rat> sp{{Rat(1, 2), Rat(1, 2)}};
    const CondExp<Rat> id = CondExp<Rat>::identity(sp);
    const Seq con(2, {}, Tail::constant(lv({"0", "2"})));
    // damping by a vector vanishing on the bad atom hides the gap
    CHECK(tp_converges_damped_by(id, con, lv({"0", "0"}), lv({"1", "0"})));
    CHECK(!tp_converges_damped_by(id, con, lv({"0", "0"}), lv({"1", "1"})));
}

TEST_CASE("linear images preserve the tail structure") {
    const Seq geo(2, {lv({"1", "1"})}, Tail::geometric(lv({"2", "4"}), Rat(1, 4)));
    const Seq doubled = map_seq<Rat>(geo, [](const LatVec<Rat>& v) { return scale(Rat(2), v); });
    CHECK(doubled.term(1) == lv({"2", "2"}));
    CHECK(doubled.term(2) == lv({"4", "8"}));
    CHECK(series_sum(doubled) == scale(Rat(2), series_sum(geo)));
}
