#pragma once

#include "cylattice/numeric.hpp"

#include <stdexcept>

namespace cylattice {

class HypothesisNotAssertedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidInputsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Singular-cohomology ranks through degree 4.
struct BettiProfile {
    long b0 = 1, b1 = 0, b2 = 0, b3 = 0, b4 = 0;

    long at(int i) const {
        switch (i) {
            case 0: return b0;
            case 1: return b1;
            case 2: return b2;
            case 3: return b3;
            case 4: return b4;
            default: return 0;
        }
    }
};

inline BettiProfile betti_point() { return {1, 0, 0, 0, 0}; }
inline BettiProfile betti_p2() { return {1, 0, 1, 0, 1}; }
inline BettiProfile betti_elliptic_curve() { return {1, 2, 1, 0, 0}; }

// Second Betti number of the total space from the Mayer-Vietoris sequence
// 0 -> H^2(X0) -> H^2(X1) + H^2(X2) -> image(alpha). The caller must assert
// the H^1-surjectivity hypothesis behind the left injectivity; the module
// never assumes it silently.
inline long mv_b2(long b2_1, long b2_2, long rank_alpha, bool left_injective) {
    if (!left_injective)
        throw HypothesisNotAssertedError("mv_b2: left injectivity hypothesis not asserted by caller");
    if (b2_1 < 0 || b2_2 < 0 || rank_alpha < 0 || rank_alpha > b2_1 + b2_2)
        throw InvalidInputsError("mv_b2: need 0 <= rank_alpha <= b2_1 + b2_2");
    return b2_1 + b2_2 - rank_alpha;
}

// b2 of the smoothing from H^1(X) -> H^0(X12) -> H^2(X0) -> H^2(X) -> 0.
inline long smoothing_b2(long b2_x0, long components_of_double_locus, long rank_h1_to_h0) {
    if (components_of_double_locus < 1)
        throw InvalidInputsError("smoothing_b2: double locus must have at least one component");
    if (rank_h1_to_h0 < 0 || rank_h1_to_h0 > components_of_double_locus)
        throw InvalidInputsError("smoothing_b2: need 0 <= rank_h1_to_h0 <= components");
    long r = b2_x0 - (components_of_double_locus - rank_h1_to_h0);
    if (r < 0) throw InvalidInputsError("smoothing_b2: negative result");
    return r;
}

inline long kunneth_b2(const BettiProfile& p1, const BettiProfile& p2) {
    return p1.b2 * p2.b0 + p1.b1 * p2.b1 + p1.b0 * p2.b2;
}

inline long kunneth_b1(const BettiProfile& p1, const BettiProfile& p2) {
    return p1.b1 * p2.b0 + p1.b0 * p2.b1;
}

inline BettiProfile kunneth_profile(const BettiProfile& p1, const BettiProfile& p2) {
    BettiProfile out{0, 0, 0, 0, 0};
    long* slots[5] = {&out.b0, &out.b1, &out.b2, &out.b3, &out.b4};
    for (int k = 0; k <= 4; ++k)
        for (int i = 0; i <= k; ++i) *slots[k] += p1.at(i) * p2.at(k - i);
    return out;
}

struct ConifoldEuler {
    Int contracted;
    Int smoothed;
};

// Contract m disjoint (-1,-1)-curves to nodes (each P^1 with e = 2 becomes a
// point with e = 1), then smooth the nodes (each node becomes a 3-sphere
// with e = 0).
inline ConifoldEuler conifold_euler(const Int& e_start, long m) {
    if (m < 0) throw InvalidInputsError("conifold_euler: m must be nonnegative");
    return {e_start - m, e_start - 2 * Int(m)};
}

// Cubic-form value on the strict-transform generator after flopping a
// (-1,-1)-curve of the given degree (Picard-rank-1 case).
inline Int flop_cubic(const Int& h_cubed, const Int& degree) {
    return h_cubed - degree * degree * degree;
}

} // namespace cylattice
