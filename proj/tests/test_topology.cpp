#include "cylattice/topology.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylattice;

TEST_CASE("mv_b2") {
    CHECK(mv_b2(5, 2, 3, true) == 4);
    CHECK(mv_b2(0, 0, 0, true) == 0);
    CHECK(mv_b2(2 + 7 + 1, 2, 3, true) == 9); // a = 7
    CHECK_THROWS_AS(mv_b2(5, 2, 3, false), HypothesisNotAssertedError);
    CHECK_THROWS_AS(mv_b2(1, 1, 3, true), InvalidInputsError);
}

TEST_CASE("mv_b2 monotonicity") {
    for (long b = 0; b < 10; ++b)
        for (long r = 0; r <= b; ++r) {
            CHECK(mv_b2(b + 1, 5, r, true) > mv_b2(b, 5, r, true));
            if (r < b + 5) CHECK(mv_b2(b, 5, r + 1, true) < mv_b2(b, 5, r, true));
        }
}

TEST_CASE("smoothing_b2") {
    CHECK(smoothing_b2(4, 1, 0) == 3); // a = 2
    CHECK(smoothing_b2(7, 1, 1) == 7);
    CHECK(smoothing_b2(11, 1, 0) == 10); // a = 9
    CHECK_THROWS_AS(smoothing_b2(5, 0, 0), InvalidInputsError);
    CHECK_THROWS_AS(smoothing_b2(5, 2, 3), InvalidInputsError);
    CHECK_THROWS_AS(smoothing_b2(0, 2, 0), InvalidInputsError); // negative result
}

TEST_CASE("kunneth_b2") {
    CHECK(kunneth_b2(betti_p2(), betti_elliptic_curve()) == 2);
    CHECK(kunneth_b2(betti_elliptic_curve(), betti_elliptic_curve()) == 6);
    CHECK(kunneth_b2(betti_point(), betti_p2()) == betti_p2().b2);
}

TEST_CASE("kunneth_profile on P2 x E") {
    BettiProfile p = kunneth_profile(betti_p2(), betti_elliptic_curve());
    CHECK(p.b0 == 1);
    CHECK(p.b1 == 2);
    CHECK(p.b2 == 2);
    CHECK(p.b3 == 2);
    CHECK(p.b4 == 2);
    CHECK(kunneth_b1(betti_p2(), betti_elliptic_curve()) == 2);
}

TEST_CASE("conifold_euler") {
    ConifoldEuler r = conifold_euler(-200, 1);
    CHECK(r.contracted == -201);
    CHECK(r.smoothed == -202);
    CHECK(conifold_euler(-200, 0).smoothed == -200);
    CHECK(conifold_euler(-200, 7).contracted == -207);
    CHECK(conifold_euler(-200, 7).smoothed == -214);
    CHECK_THROWS_AS(conifold_euler(-200, -1), InvalidInputsError);
}

TEST_CASE("conifold parity: smoothed Euler number keeps the starting parity") {
    for (long e = -205; e <= -195; ++e)
        for (long m = 0; m <= 12; ++m) {
            Int sm = conifold_euler(e, m).smoothed;
            CHECK((sm - e) % 2 == 0);
        }
}

TEST_CASE("flop_cubic") {
    CHECK(flop_cubic(5, 2) == -3);
    CHECK(flop_cubic(5, 0) == 5);
    CHECK(flop_cubic(5, 10) == -995);
}

TEST_CASE("flop_cubic is a translation") {
    for (long x = -5; x <= 5; ++x)
        for (long y = -5; y <= 5; ++y)
            for (long d = 0; d <= 6; ++d) CHECK(flop_cubic(x, d) - flop_cubic(y, d) == x - y);
}

TEST_CASE("pipeline identity for the abelian-surface example") {
    for (long a = 2; a <= 20; ++a) CHECK(smoothing_b2(mv_b2(2 + a + 1, 2, 3, true), 1, 0) == a + 1);
}
