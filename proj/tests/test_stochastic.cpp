#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "supcone/stochastic.hpp"

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

AtomicSpace<Rat> uniform4() {
    return AtomicSpace<Rat>{{Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}};
}

// blocks {0,1} and {2,3}
CondExp<Rat> pair_blocks() { return CondExp<Rat>(uniform4(), {0, 0, 1, 1}); }

} // namespace

TEST_CASE("conditional expectation averages blockwise") {
    const CondExp<Rat> t = pair_blocks();
    CHECK(supcone::apply(t, lv({"1", "3", "2", "6"})) == lv({"2", "2", "4", "4"}));
    CHECK(supcone::apply(t, t.space.unit()) == t.space.unit());

    ExtVec<Rat> x = to_ext(lv({"0", "3", "2", "6"}));
    x[0] = Ext<Rat>::infinity();
    const ExtVec<Rat> tx = apply_ext(t, x);
    CHECK(tx[0].inf);
    CHECK(tx[1].inf);
    CHECK(tx[2] == Ext<Rat>(Rat(4)));
    CHECK(tx[3] == Ext<Rat>(Rat(4)));
}

TEST_CASE("range membership is block constancy") {
    const CondExp<Rat> t = pair_blocks();
    CHECK(in_range(t, lv({"2", "2", "4", "4"})));
    ExtVec<Rat> winf = to_ext(lv({"0", "0", "4", "4"}));
    winf[0] = winf[1] = Ext<Rat>::infinity();
    CHECK(in_range(t, winf));
    CHECK(!in_range(t, lv({"1", "2", "4", "4"})));
}

TEST_CASE("commutation with band projections means block unions") {
    const CondExp<Rat> t = pair_blocks();
    CHECK(commutes(t, bd(4, {0, 1})));
    CHECK(commutes(t, Band(4, true)));
    CHECK(!commutes(t, bd(4, {0})));
    const auto w = commutation_witness(t, bd(4, {0}));
    REQUIRE(w.has_value());
    const Band b = bd(4, {0});
    CHECK(!(supcone::apply(t, project(b, *w)) == project(b, supcone::apply(t, *w))));
    CHECK(!commutation_witness(t, bd(4, {2, 3})).has_value());
}

TEST_CASE("independence of coordinate bands on a product space") {
    // two fair coins: atoms 00,01,10,11; first-bit and second-bit bands
    const CondExp<Rat> t = CondExp<Rat>::trivial(uniform4());
    CHECK(check_independence(t, {bd(4, {2, 3}), bd(4, {1, 3})}));
    // overlapping halves of a skewed space are dependent
    const AtomicSpace<Rat> sk{{Rat(1, 2), Rat(1, 4), Rat(1, 4)}};
    const CondExp<Rat> ts = CondExp<Rat>::trivial(sk);
    CHECK(!check_independence(ts, {bd(3, {0, 1}), bd(3, {1, 2})}));
    CHECK_THROWS_AS(check_independence(t, std::vector<Band>(21, bd(4, {0})), 20), SizeError);
}

TEST_CASE("closed martingales and stopped martingales") {
    const AtomicSpace<Rat> sp = uniform4();
    const CondExp<Rat> fine = pair_blocks();
    const Filtration<Rat> filt({fine}, CondExp<Rat>::identity(sp), fine);

    const LatVec<Rat> y = lv({"1", "3", "2", "6"});
    const AdaptedProcess<Rat> proc(Seq(4, {supcone::apply(fine, y)}, Tail::constant(y)), filt);
    CHECK(is_martingale(proc));
    CHECK(is_submartingale(proc));

    // bump the first stage: still adapted, no longer a martingale
    const AdaptedProcess<Rat> bumped(
        Seq(4, {add(supcone::apply(fine, y), sp.unit())}, Tail::constant(y)), filt);
    CHECK(!is_martingale(bumped));

    // a stage value outside R(T_1) is rejected outright
    CHECK_THROWS_AS(AdaptedProcess<Rat>(Seq(4, {lv({"1", "0", "0", "0"})}, Tail::constant(y)),
                                        filt),
                    ContractError);

    const StoppingTime tau(ProjSeq(4, {bd(4, {0, 1})}, {Band(4, true)}, false));
    const Seq z = stop_process(proc, tau);
    const AdaptedProcess<Rat> stopped(z, filt);
    CHECK(is_martingale(stopped));
    // optional stopping: the global expectation is frozen at stage one
    CHECK(supcone::apply(filt.global, z.term(3)) == supcone::apply(filt.global, z.term(1)));
}

TEST_CASE("first passage above a level partitions the space") {
    const AtomicSpace<Rat> sp{{Rat(1, 2), Rat(1, 2)}};
    const Filtration<Rat> filt({}, CondExp<Rat>::identity(sp), CondExp<Rat>::identity(sp));
    const Seq xs(2, {lv({"1", "5"})}, Tail::constant(lv({"3", "1"})));
    const AdaptedProcess<Rat> proc(xs, filt);

    const TauK<Rat> tk = tau_K(proc, Rat(2));
    CHECK(tk.hit_bands[0] == bd(2, {1})); // 5 > 2 at stage one
    CHECK(tk.hit_bands[1] == bd(2, {0})); // 3 > 2 at stage two
    CHECK(tk.never_band.empty());
    Band u(2);
    for (const auto& b : tk.hit_bands) {
        CHECK((u & b).empty());
        u = u | b;
    }
    CHECK((u | tk.never_band).full());

    const TauK<Rat> high = tau_K(proc, Rat(10));
    CHECK(high.never_band.full());
    CHECK_THROWS_AS(tau_K(proc, Rat(0)), DomainError);
}

TEST_CASE("stopping a geometric tail after partial stopping has no closed form") {
    const AtomicSpace<Rat> sp{{Rat(1, 2), Rat(1, 2)}};
    const Filtration<Rat> filt({}, CondExp<Rat>::identity(sp), CondExp<Rat>::identity(sp));
    const Seq xs(2, {lv({"4", "4"})}, Tail::geometric(lv({"1", "1"}), Rat(1, 2)));
    const AdaptedProcess<Rat> proc(xs, filt);
    // stop only atom 0: frozen mass there, live geometric tail elsewhere
    const StoppingTime tau(ProjSeq(2, {bd(2, {0})}, {bd(2, {0})}, false));
    CHECK_THROWS_AS(stop_process(proc, tau), DomainError);
    // stopping everything is fine: the tail freezes completely
    const StoppingTime all(ProjSeq(2, {Band(2, true)}, {Band(2, true)}, false));
    const Seq z = stop_process(proc, all);
    CHECK(order_limit(z) == lv({"4", "4"}));
}

TEST_CASE("first borel-cantelli lemma on summable and divergent series") {
    const CondExp<Rat> t = pair_blocks();
    const LatVec<Rat> e = t.space.unit();

    const Seq summable(4, {lv({"1", "0", "1", "0"})},
                       Tail::geometric(lv({"1", "1", "1", "1"}), Rat(1, 2)));
    const Report ok = bcl1(t, summable, e);
    CHECK(ok.applicable);
    CHECK(ok.pass);

    const Seq divergent(4, {}, Tail::constant(lv({"1", "0", "0", "0"})));
    const Report na = bcl1(t, divergent, e);
    CHECK(!na.applicable);

    CHECK_THROWS_AS(bcl1(t, Seq(4, {lv({"-1", "0", "0", "0"})}, Tail::zero()), e),
                    ContractError);
    CHECK_THROWS_AS(bcl1(t, Seq(4, {lv({"9", "0", "0", "0"})}, Tail::zero()), e),
                    ContractError);
}

TEST_CASE("second borel-cantelli lemma on block-union masks") {
    const CondExp<Rat> t = pair_blocks();
    // the recurring mask is a block union, so self-independence degenerates
    const ProjSeq ps(4, {bd(4, {0, 1})}, {bd(4, {2, 3})}, false);
    const Report rep = bcl2(t, ps);
    CHECK(rep.pass);
    // non-block-union recurring mask is rejected up front
    CHECK_THROWS_AS(bcl2(t, ProjSeq(4, {}, {bd(4, {0})}, false)), ContractError);
}

TEST_CASE("product harness for the independence factorization") {
    // two fair coins: P(no event) = 1/4 <= exp(-1)
    const Report two = bcl2_product_harness<Rat>(2, {Rat(1, 2), Rat(1, 2)});
    CHECK(two.pass);
    CHECK(0.25 <= std::exp(-1.0) + 1e-12);

    // certain events collapse atoms; still exact
    CHECK(bcl2_product_harness<Rat>(3, {Rat(1), Rat(1), Rat(1)}).pass);

    CHECK_THROWS_AS(bcl2_product_harness<Rat>(21, std::vector<Rat>(21, Rat(1, 2))), SizeError);
    CHECK_THROWS_AS(bcl2_product_harness<Rat>(2, {Rat(0), Rat(1, 2)}), DomainError);
    CHECK_THROWS_AS(bcl2_product_harness<Rat>(2, {Rat(1, 2)}), DimensionError);
}

TEST_CASE("divergence band of a martingale equals the infinite part of its sup") {
    const AtomicSpace<Rat> sp = uniform4();
    const CondExp<Rat> coarse = CondExp<Rat>::trivial(sp);
    const Filtration<Rat> filt({coarse}, pair_blocks(), coarse);
    const LatVec<Rat> y = lv({"1", "3", "2", "6"});
    const AdaptedProcess<Rat> proc(
        Seq(4, {supcone::apply(coarse, y)}, Tail::constant(supcone::apply(pair_blocks(), y))),
        filt);
    const Report rep = theorem_T2_check(proc, coarse);
    CHECK(rep.pass);
}

TEST_CASE("conditioned and unconditioned indicator series share the infinite part") {
    const AtomicSpace<Rat> sp = uniform4();
    const CondExp<Rat> coarse = CondExp<Rat>::trivial(sp);
    const Filtration<Rat> filt({coarse}, pair_blocks(), coarse);
    const ProjSeq ps(4, {Band(4)}, {bd(4, {0, 1})}, false);
    const Report rep = theorem_T3_check(filt, ps);
    CHECK(rep.pass);
    // masks must commute stage by stage
    CHECK_THROWS_AS(theorem_T3_check(filt, ProjSeq(4, {}, {bd(4, {0})}, false)),
                    ContractError);
}

TEST_CASE("closed-form suprema and increments of symbolic sequences") {
    const Seq xs(2, {lv({"5", "0"})}, Tail::periodic({lv({"1", "2"}), lv({"3", "1"})}));
    CHECK(seq_sup(xs) == lv({"5", "2"}));
    CHECK(sup_pos_increments(xs) == lv({"2", "2"}));
    CHECK(sup_abs_increments(xs) == lv({"4", "2"}));
}
