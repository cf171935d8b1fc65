#include "cylattice/rational_elliptic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cylattice;

namespace {

DivisorClass e(int i) { return DivisorClass::basis(pic_res(), i); }

} // namespace

TEST_CASE("Pic(S) fixed classes") {
    CHECK(self_intersection(canonical_res()) == 0);
    CHECK(self_intersection(fiber_res()) == 0);
    CHECK(pair(hyperplane_res(), hyperplane_res()) == 1);
    CHECK(pair(e(1), e(1)) == -1);
    CHECK(pair(e(1), e(2)) == 0);
    CHECK(pair(hyperplane_res(), fiber_res()) == 3);
}

TEST_CASE("cremona reflection basis images") {
    IntMat s = cremona_reflection(1, 2, 3);
    CHECK(apply_isometry(s, hyperplane_res()) == hyperplane_res() * 2 - e(1) - e(2) - e(3));
    CHECK(apply_isometry(s, e(1)) == hyperplane_res() - e(2) - e(3));
    CHECK(apply_isometry(s, e(9)) == e(9));
    CHECK(s * s == IntMat::identity(10));
    CHECK(is_lattice_isometry(s, pic_res()));
    CHECK(apply_isometry(s, canonical_res()) == canonical_res());
    CHECK_THROWS_AS(cremona_reflection(1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(cremona_reflection(0, 1, 2), std::invalid_argument);
}

TEST_CASE("cremona reflections: involution, isometry, K-fixing on random triples") {
    std::mt19937_64 rng(0xE8);
    for (int trial = 0; trial < 300; ++trial) {
        int i = 1 + int(rng() % 9), j = 1 + int(rng() % 9), k = 1 + int(rng() % 9);
        if (i == j || j == k || i == k) continue;
        IntMat s = cremona_reflection(i, j, k);
        CHECK(s * s == IntMat::identity(10));
        CHECK(is_lattice_isometry(s, pic_res()));
        CHECK(apply_isometry(s, canonical_res()) == canonical_res());
    }
}

TEST_CASE("phi_m_pullback basics") {
    CHECK(phi_m_pullback(0) == IntMat::identity(10));
    for (WordOrder order : {WordOrder::Forward, WordOrder::Reverse}) {
        IntMat w1 = phi_m_pullback(1, order);
        CHECK(is_lattice_isometry(w1, pic_res()));
        CHECK(apply_isometry(w1, canonical_res()) == canonical_res());
        CHECK(phi_m_pullback(2, order) == w1 * w1);
    }
}

TEST_CASE("phi_m image of h, frozen") {
    // independently computed product of the six reflections
    IntMat wf = phi_m_pullback(1, WordOrder::Forward);
    CHECK(apply_isometry(wf, hyperplane_res()) ==
          res_class({28, -12, -12, -12, -9, -9, -9, -6, -6, -6}));
    IntMat wr = phi_m_pullback(1, WordOrder::Reverse);
    CHECK(apply_isometry(wr, hyperplane_res()) ==
          res_class({28, -6, -6, -6, -9, -9, -9, -12, -12, -12}));
    // h . phi_m^*(h) for m = 1..5
    const long expected[5] = {28, 109, 244, 433, 676};
    for (long m = 1; m <= 5; ++m) {
        Int v = pair(hyperplane_res(), apply_isometry(phi_m_pullback(m), hyperplane_res()));
        CHECK(v == expected[m - 1]);
    }
}

TEST_CASE("class_cm values") {
    CHECK(class_cm(0) == hyperplane_res() * 2);
    CHECK(class_cm(1) == res_class({26, -11, -11, -11, -8, -8, -8, -5, -5, -5}));
    // c_m^2 = 2 + 2 h.w(h) - 12m and c_m . f = 6, nondecreasing in m
    const long expected_sq[5] = {46, 196, 454, 820, 1294};
    for (long m = 1; m <= 5; ++m) {
        for (WordOrder order : {WordOrder::Forward, WordOrder::Reverse}) {
            DivisorClass c = class_cm(m, order);
            CHECK(self_intersection(c) == expected_sq[m - 1]);
            CHECK(pair(c, fiber_res()) == 6);
        }
    }
}

TEST_CASE("exceptional class predicate and enumeration") {
    CHECK(is_exceptional(e(9)));
    CHECK(is_exceptional(hyperplane_res() - e(1) - e(2)));
    CHECK_FALSE(is_exceptional(hyperplane_res()));
    long count = 0;
    for_each_exceptional(2, [&](const auto& l) {
        IntVec c(10);
        for (int i = 0; i < 10; ++i) c[i] = l[i];
        CHECK(is_exceptional(res_class(std::move(c))));
        ++count;
    });
    // degree 0: e_i (9); degree 1: h-e_i-e_j (36); degree 2: 2h minus five e's (126)
    CHECK(count == 9 + 36 + 126);
}

TEST_CASE("descent equals enumeration on small classes") {
    std::vector<DivisorClass> tested = {reference_ample_res(), class_cm(1), class_cm(2),
                                        class_cm(1, WordOrder::Reverse), hyperplane_res() * 2};
    for (const DivisorClass& d : tested) {
        MinExceptional dm = min_exceptional_pairing_descent(d);
        MinExceptional em = min_exceptional_pairing_enumeration(d, 12);
        CHECK(dm.value == em.value);
        CHECK(is_exceptional(dm.argmin));
        CHECK(pair(d, dm.argmin) == dm.value);
    }
    // frozen minima for the composed isometries
    CHECK(min_exceptional_pairing_descent(class_cm(1)).value == 3);
    CHECK(min_exceptional_pairing_descent(class_cm(2)).value == 16);
    CHECK(min_exceptional_pairing_descent(reference_ample_res()).value == 1);
}

TEST_CASE("is_ample_res verdicts") {
    AmpleCheck h_check = is_ample_res(hyperplane_res());
    CHECK_FALSE(h_check.ample);
    REQUIRE(h_check.witness.has_value());
    CHECK(pair(hyperplane_res(), *h_check.witness) <= 0);
    CHECK(is_exceptional(*h_check.witness));

    AmpleCheck twoh = is_ample_res(hyperplane_res() * 2);
    CHECK_FALSE(twoh.ample);
    REQUIRE(twoh.witness.has_value());
    CHECK(pair(hyperplane_res() * 2, *twoh.witness) <= 0);

    CHECK(is_ample_res(class_cm(1)).ample);
    CHECK(is_ample_res(reference_ample_res()).ample);

    AmpleCheck fiber_check = is_ample_res(fiber_res());
    CHECK_FALSE(fiber_check.ample);
    CHECK(fiber_check.reason == AmpleCheck::Reason::NonpositiveSquare);
}

TEST_CASE("is_free_res verdicts") {
    CHECK(is_free_res(class_cm(1)) == Freeness::Free);
    CHECK(is_free_res(hyperplane_res()) == Freeness::Unknown);
    CHECK(is_free_res(fiber_res()) == Freeness::Unknown);
}

TEST_CASE("isometry_of_word composes reflections in order") {
    CremonaWord w{{{1, 2, 3}, {4, 5, 6}}};
    CHECK(isometry_of_word(w) == cremona_reflection(1, 2, 3) * cremona_reflection(4, 5, 6));
    CHECK(isometry_of_word(CremonaWord{}) == IntMat::identity(10));
}
