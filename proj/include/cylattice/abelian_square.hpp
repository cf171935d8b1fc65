#pragma once

#include "cylattice/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace cylattice {

class ParallelCurvesError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class DegenerateEndoError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

// NS(E x E) for E without complex multiplication: rank 3, basis (f1, f2, Delta),
// pairings f1.f2 = f1.Delta = f2.Delta = 1 and all self-intersections 0.
inline const Lattice& ns_abelian_square() {
    static const Lattice lat = [] {
        IntMat g(3, 3);
        g.at(0, 1) = g.at(1, 0) = 1;
        g.at(0, 2) = g.at(2, 0) = 1;
        g.at(1, 2) = g.at(2, 1) = 1;
        return make_lattice("NS(ExE)", {"f1", "f2", "Delta"}, g);
    }();
    return lat;
}

inline DivisorClass ns_class(const Int& a, const Int& b, const Int& c) {
    return DivisorClass(ns_abelian_square(), {a, b, c});
}

inline DivisorClass fiber1() { return ns_class(1, 0, 0); }
inline DivisorClass fiber2() { return ns_class(0, 1, 0); }
inline DivisorClass diagonal() { return ns_class(0, 0, 1); }

// The translated subgroup { u x + v y = const }. The numerical class is
// independent of the constant and of the overall sign of (u, v).
struct LinearCurve {
    Int u, v;

    LinearCurve(Int u_, Int v_) : u(std::move(u_)), v(std::move(v_)) {
        if (u == 0 && v == 0) throw std::invalid_argument("linear curve requires (u, v) != (0, 0)");
    }

    bool same_class(const LinearCurve& o) const {
        return (u == o.u && v == o.v) || (u == -o.u && v == -o.v);
    }
};

// Point count with multiplicity: (u1 v2 - u2 v1)^2, the degree of the
// difference isogeny. Parallel curves of equal class meet in 0 points for
// generic translations; parallel curves of different classes have no
// 0-dimensional generic intersection and are rejected.
inline Int intersect_linear_curves(const LinearCurve& c1, const LinearCurve& c2) {
    Int det = c1.u * c2.v - c2.u * c1.v;
    if (det != 0) return det * det;
    if (c1.same_class(c2)) return Int(0);
    throw ParallelCurvesError("parallel linear curves of distinct classes: (" + c1.u.get_str() + "," +
                              c1.v.get_str() + ") vs (" + c2.u.get_str() + "," + c2.v.get_str() + ")");
}

// Class of a linear curve in (f1, f2, Delta) coordinates, recovered from its
// counts against the probe curves f1 = (1,0), f2 = (0,1), Delta = (1,-1).
// Closed form: (u(u+v), v(u+v), -uv).
inline DivisorClass class_of_linear_curve(const LinearCurve& c) {
    static const LinearCurve probes_c[3] = {LinearCurve(1, 0), LinearCurve(0, 1), LinearCurve(1, -1)};
    const std::vector<DivisorClass> probes = {fiber1(), fiber2(), diagonal()};
    IntVec targets(3);
    for (int i = 0; i < 3; ++i) {
        // proportional (u,v) always pair to zero, even when the point count
        // of unequal parallel classes is undefined
        Int det = c.u * probes_c[i].v - probes_c[i].u * c.v;
        targets[i] = det * det;
    }
    return solve_from_pairings(ns_abelian_square(), probes, targets);
}

// Integer-matrix endomorphism (x, y) -> (m11 x + m12 y, m21 x + m22 y) of
// E x E via the group law; acts on NS(E x E) by pullback.
struct EndoMatrix {
    Int m11, m12, m21, m22;

    Int det() const { return m11 * m22 - m12 * m21; }
    Int degree() const { return det() * det(); }
    bool invertible() const { return det() == 1 || det() == -1; }

    EndoMatrix operator*(const EndoMatrix& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    static EndoMatrix identity() { return {1, 0, 0, 1}; }

    // integral inverse; only valid when det = +-1
    EndoMatrix inverse() const {
        Int d = det();
        if (d != 1 && d != -1)
            throw std::invalid_argument("EndoMatrix::inverse requires det = +-1, got " + d.get_str());
        return {d * m22, -d * m12, -d * m21, d * m11};
    }

    std::string str() const {
        return "(" + m11.get_str() + "," + m12.get_str() + ";" + m21.get_str() + "," + m22.get_str() + ")";
    }
};

// Pullback by linear extension of the three basis images
//   M* f1 = [m11 x + m12 y = c],  M* f2 = [m21 x + m22 y = c],
//   M* Delta = [(m11-m21) x + (m12-m22) y = c].
// A zero row means the composed map collapses a factor and has no divisor
// pullback.
inline DivisorClass pullback(const EndoMatrix& m, const DivisorClass& d) {
    if (!same_lattice(d.lattice(), ns_abelian_square()))
        throw LatticeMismatchError("pullback expects a class in NS(ExE), got '" + d.lattice()->id() + "'");
    const Int rows[3][2] = {{m.m11, m.m12}, {m.m21, m.m22}, {m.m11 - m.m21, m.m12 - m.m22}};
    for (const auto& r : rows)
        if (r[0] == 0 && r[1] == 0)
            throw DegenerateEndoError("degenerate endomorphism " + m.str() + ": a derived curve has (u, v) = (0, 0)");
    DivisorClass acc = DivisorClass::zero(ns_abelian_square());
    for (int i = 0; i < 3; ++i) {
        if (d.coords()[i] == 0) continue;
        acc = acc + class_of_linear_curve(LinearCurve(rows[i][0], rows[i][1])) * d.coords()[i];
    }
    return acc;
}

// 3x3 matrix of the pullback action in the (f1, f2, Delta) basis.
inline IntMat pullback_matrix(const EndoMatrix& m) {
    IntMat p(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        DivisorClass img = pullback(m, DivisorClass::basis(ns_abelian_square(), j));
        for (std::size_t i = 0; i < 3; ++i) p.at(i, j) = img.coords()[i];
    }
    return p;
}

// Nakai-Moishezon on an abelian surface against the fixed ample class f1+f2:
// D is ample iff D^2 > 0 and D.(f1+f2) > 0.
inline bool is_ample(const DivisorClass& d) {
    if (self_intersection(d) <= 0) return false;
    return pair(d, fiber1() + fiber2()) > 0;
}

inline bool is_effective(const DivisorClass& d) {
    if (d.is_zero()) return true;
    return self_intersection(d) >= 0 && pair(d, fiber1() + fiber2()) > 0;
}

// One-sided freeness test: Free when D splits as a sum of two integral ample
// classes (searched in a coordinate box around D/2, so D1 = D2 = D/2 is
// covered when all coordinates are even). Never claims non-freeness.
inline Freeness is_free_sufficient(const DivisorClass& d, long box_radius = 3) {
    const IntVec& c = d.coords();
    IntVec lo(3), hi(3);
    const Int two(2);
    for (int i = 0; i < 3; ++i) {
        Int half_lo, half_hi;
        mpz_fdiv_q(half_lo.get_mpz_t(), c[i].get_mpz_t(), two.get_mpz_t());
        mpz_cdiv_q(half_hi.get_mpz_t(), c[i].get_mpz_t(), two.get_mpz_t());
        lo[i] = half_lo - box_radius;
        hi[i] = half_hi + box_radius;
    }
    for (Int x = lo[0]; x <= hi[0]; ++x)
        for (Int y = lo[1]; y <= hi[1]; ++y)
            for (Int z = lo[2]; z <= hi[2]; ++z) {
                DivisorClass d1 = ns_class(x, y, z);
                if (!is_ample(d1)) continue;
                if (is_ample(d - d1)) return Freeness::Free;
            }
    return Freeness::Unknown;
}

} // namespace cylattice
