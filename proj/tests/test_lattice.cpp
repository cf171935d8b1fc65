#include "cylattice/abelian_square.hpp"
#include "cylattice/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cylattice;

namespace {

DivisorClass rand_class(const Lattice& lat, std::mt19937_64& rng, int span = 20) {
    std::uniform_int_distribution<long> dist(-span, span);
    IntVec c(lat->rank());
    for (Int& x : c) x = dist(rng);
    return DivisorClass(lat, std::move(c));
}

} // namespace

TEST_CASE("lattice constructor enforces invariants") {
    IntMat bad(2, 2);
    bad.at(0, 1) = 1; // not symmetric
    CHECK_THROWS_AS(make_lattice("L", {"a", "b"}, bad), std::invalid_argument);

    IntMat g(2, 2);
    CHECK_THROWS_AS(make_lattice("L", {"a"}, g), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice("L", {"a", "a"}, g), std::invalid_argument);
}

TEST_CASE("pair evaluates the intersection form") {
    CHECK(pair(fiber1(), fiber2()) == 1);
    CHECK(pair(diagonal(), diagonal()) == 0);
    // C_3 . f_1 = 9
    CHECK(pair(ns_class(-2, 6, 3), fiber1()) == 9);
    CHECK(pair(ns_class(-2, 6, 3), fiber1()) == pair(fiber1(), ns_class(-2, 6, 3)));
}

TEST_CASE("pair rejects classes of different lattices") {
    Lattice other = make_lattice("other", {"x", "y", "z"}, ns_abelian_square()->gram());
    Lattice third = make_lattice("third", {"x"}, IntMat::identity(1));
    // same structure but different labels/ids: still a mismatch
    CHECK_THROWS_AS(pair(fiber1(), DivisorClass::zero(other)), LatticeMismatchError);
    CHECK_THROWS_AS(pair(fiber1(), DivisorClass::zero(third)), LatticeMismatchError);
    CHECK_THROWS_WITH(pair(fiber1(), DivisorClass::zero(third)),
                      Catch::Matchers::ContainsSubstring("NS(ExE)") &&
                          Catch::Matchers::ContainsSubstring("third"));
}

TEST_CASE("span_rank_snf on bases, empty lists and diagonal matrices") {
    SpanRankResult basis = span_rank_snf({fiber1(), fiber2(), diagonal()});
    CHECK(basis.rank == 3);
    CHECK(basis.elementary_divisors == std::vector<Int>{1, 1, 1});

    CHECK(span_rank_snf({}).rank == 0);
    CHECK(span_rank_snf({}).elementary_divisors.empty());

    Lattice z2 = make_lattice("Z2", {"x", "y"}, IntMat::identity(2));
    SpanRankResult diag = span_rank_snf({DivisorClass(z2, {2, 0}), DivisorClass(z2, {0, 3})});
    CHECK(diag.rank == 2);
    CHECK(diag.elementary_divisors == std::vector<Int>{1, 6});

    SpanRankResult dup = span_rank_snf({ns_class(2, 4, 6), ns_class(1, 2, 3)});
    CHECK(dup.rank == 1);
    CHECK(dup.elementary_divisors == std::vector<Int>{1});
}

TEST_CASE("span_rank_snf is invariant under row operations") {
    std::mt19937_64 rng(0xC0FFEE01);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<DivisorClass> vecs;
        int n = 2 + int(rng() % 4);
        for (int i = 0; i < n; ++i) vecs.push_back(rand_class(ns_abelian_square(), rng, 8));
        SpanRankResult base = span_rank_snf(vecs);

        std::vector<DivisorClass> permuted = vecs;
        std::shuffle(permuted.begin(), permuted.end(), rng);
        SpanRankResult perm = span_rank_snf(permuted);
        CHECK(perm.rank == base.rank);
        CHECK(perm.elementary_divisors == base.elementary_divisors);

        std::vector<DivisorClass> added = vecs; // n >= 2, so index 1 is a different row
        added[0] = added[0] + added[1];
        SpanRankResult add = span_rank_snf(added);
        CHECK(add.rank == base.rank);
        CHECK(add.elementary_divisors == base.elementary_divisors);
    }
}

TEST_CASE("solve_from_pairings recovers classes from intersection numbers") {
    std::vector<DivisorClass> probes = {fiber1(), fiber2(), diagonal()};
    // targets (a^2, 1, (a-1)^2) with a = 2
    DivisorClass c2 = solve_from_pairings(ns_abelian_square(), probes, {4, 1, 1});
    CHECK(c2 == ns_class(-1, 2, 2));

    CHECK(solve_from_pairings(ns_abelian_square(), probes, {0, 0, 0}) == ns_class(0, 0, 0));

    CHECK_THROWS_AS(solve_from_pairings(ns_abelian_square(), probes, {1, 0, 0}), NonIntegralError);
}

TEST_CASE("solve_from_pairings error cases") {
    std::vector<DivisorClass> short_probes = {fiber1(), fiber2()};
    CHECK_THROWS_AS(solve_from_pairings(ns_abelian_square(), short_probes, {1, 1}), UnderDeterminedError);

    std::vector<DivisorClass> redundant = {fiber1(), fiber2(), diagonal(), fiber1() + fiber2()};
    CHECK_THROWS_AS(solve_from_pairings(ns_abelian_square(), redundant, {0, 0, 0, 5}), NoSolutionError);
    // consistent overdetermined targets still solve
    CHECK(solve_from_pairings(ns_abelian_square(), redundant, {1, 1, 2, 2}) == ns_class(1, 1, 0));

    CHECK_THROWS_AS(solve_from_pairings(ns_abelian_square(), short_probes, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("pair is bilinear and symmetric on random classes") {
    std::mt19937_64 rng(0xC0FFEE02);
    for (int trial = 0; trial < 500; ++trial) {
        DivisorClass u = rand_class(ns_abelian_square(), rng);
        DivisorClass v = rand_class(ns_abelian_square(), rng);
        DivisorClass w = rand_class(ns_abelian_square(), rng);
        CHECK(pair(u + v, w) == pair(u, w) + pair(v, w));
        CHECK(pair(u, v) == pair(v, u));
        CHECK(pair(u * 7, v) == 7 * pair(u, v));
    }
}

TEST_CASE("solve_from_pairings round-trips with pair") {
    std::mt19937_64 rng(0xC0FFEE03);
    std::vector<DivisorClass> probes = {fiber1(), fiber2(), diagonal()};
    for (int trial = 0; trial < 500; ++trial) {
        DivisorClass d = rand_class(ns_abelian_square(), rng);
        IntVec targets;
        for (const DivisorClass& p : probes) targets.push_back(pair(d, p));
        DivisorClass back = solve_from_pairings(ns_abelian_square(), probes, targets);
        CHECK(back == d);
        for (std::size_t i = 0; i < probes.size(); ++i) CHECK(pair(back, probes[i]) == targets[i]);
    }
}
