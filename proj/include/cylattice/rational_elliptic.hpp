#pragma once

#include "cylattice/lattice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylattice {

// Pic of a general rational elliptic surface: Z^{1,9} with basis
// (h, e1, ..., e9), gram diag(1, -1, ..., -1), K = -3h + e1 + ... + e9 and
// fiber class f = -K.
inline const Lattice& pic_res() {
    static const Lattice lat = [] {
        IntMat g(10, 10);
        g.at(0, 0) = 1;
        for (std::size_t i = 1; i < 10; ++i) g.at(i, i) = -1;
        return make_lattice("Pic(S)", {"h", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"}, g);
    }();
    return lat;
}

inline DivisorClass res_class(IntVec coords) { return DivisorClass(pic_res(), std::move(coords)); }

inline DivisorClass hyperplane_res() { return DivisorClass::basis(pic_res(), 0); }

inline DivisorClass canonical_res() {
    IntVec c(10, Int(1));
    c[0] = -3;
    return res_class(std::move(c));
}

inline DivisorClass fiber_res() { return -canonical_res(); }

// h + f: a convenient reference ample class.
inline DivisorClass reference_ample_res() { return hyperplane_res() + fiber_res(); }

// Ordered list of index triples driving a composition of quadratic
// transformations.
struct CremonaWord {
    std::vector<std::array<int, 3>> triples;
};

// Picard action of the quadratic transformation based at p_i, p_j, p_k:
// the reflection in the root h - e_i - e_j - e_k. Involution, isometry,
// fixes K.
inline IntMat cremona_reflection(int i, int j, int k) {
    if (i == j || j == k || i == k || i < 1 || j < 1 || k < 1 || i > 9 || j > 9 || k > 9)
        throw std::invalid_argument("cremona_reflection requires distinct indices in 1..9");
    IntVec alpha(10, Int(0));
    alpha[0] = 1;
    alpha[i] = alpha[j] = alpha[k] = -1;
    const DivisorClass root = res_class(alpha);
    IntMat m(10, 10);
    for (std::size_t col = 0; col < 10; ++col) {
        DivisorClass e = DivisorClass::basis(pic_res(), col);
        DivisorClass img = e + root * pair(e, root); // s(x) = x + (x.root) root since root^2 = -2
        for (std::size_t row = 0; row < 10; ++row) m.at(row, col) = img.coords()[row];
    }
    return m;
}

inline IntMat isometry_of_word(const CremonaWord& w) {
    IntMat m = IntMat::identity(10);
    for (const auto& t : w.triples) m = m * cremona_reflection(t[0], t[1], t[2]);
    return m;
}

enum class WordOrder { Forward, Reverse };

inline const char* to_cstr(WordOrder o) { return o == WordOrder::Forward ? "forward" : "reverse"; }

// Pullback of the m-step composition: per step the three quadratic
// transformations at (123), (456), (789) are applied twice. The lattice-level
// composition order is a convention; both are exposed.
inline IntMat phi_m_pullback(long m, WordOrder order = WordOrder::Forward) {
    if (m < 0) throw std::invalid_argument("phi_m_pullback requires m >= 0");
    CremonaWord w;
    for (long s = 0; s < m; ++s)
        for (int rep = 0; rep < 2; ++rep) {
            w.triples.push_back({1, 2, 3});
            w.triples.push_back({4, 5, 6});
            w.triples.push_back({7, 8, 9});
        }
    if (order == WordOrder::Reverse) std::reverse(w.triples.begin(), w.triples.end());
    return isometry_of_word(w);
}

inline DivisorClass apply_isometry(const IntMat& m, const DivisorClass& d) {
    return DivisorClass(d.lattice(), m * d.coords());
}

// h + phi_m^*(h) + m K.
inline DivisorClass class_cm(long m, WordOrder order = WordOrder::Forward) {
    DivisorClass h = hyperplane_res();
    return h + apply_isometry(phi_m_pullback(m, order), h) + canonical_res() * Int(m);
}

// ---- (-1)-classes: l^2 = -1, l.K = -1 ------------------------------------

inline bool is_exceptional(const DivisorClass& l) {
    return self_intersection(l) == -1 && pair(l, canonical_res()) == -1;
}

struct MinExceptional {
    Int value;
    DivisorClass argmin;
};

namespace detail_res {

using Vec10 = std::array<std::int64_t, 10>;

inline std::int64_t pair10(const Vec10& x, const Vec10& y) {
    std::int64_t acc = x[0] * y[0];
    for (int i = 1; i < 10; ++i) acc -= x[i] * y[i];
    return acc;
}

// Roots of the reflection moves: e_i - e_j and h - e_i - e_j - e_k, all
// indices in 1..9.
inline const std::vector<Vec10>& reflection_roots() {
    static const std::vector<Vec10> roots = [] {
        std::vector<Vec10> out;
        for (int i = 1; i <= 9; ++i)
            for (int j = i + 1; j <= 9; ++j) {
                Vec10 v{};
                v[i] = 1;
                v[j] = -1;
                out.push_back(v);
            }
        for (int i = 1; i <= 9; ++i)
            for (int j = i + 1; j <= 9; ++j)
                for (int k = j + 1; k <= 9; ++k) {
                    Vec10 v{};
                    v[0] = 1;
                    v[i] = v[j] = v[k] = -1;
                    out.push_back(v);
                }
        return out;
    }();
    return roots;
}

// Voronoi-relevant vectors of the rank-8 unimodular even sublattice
// K-perp intersect e9-perp: the 240 norm -2 vectors plus the 2160 norm -4
// vectors. Translating by these is the move set that makes the descent reach
// the true minimum instead of stalling at a reflection-local one.
inline const std::vector<Vec10>& relevant_translations() {
    static const std::vector<Vec10> rel = [] {
        std::vector<Vec10> roots;
        auto push_pm = [&roots](Vec10 v) {
            roots.push_back(v);
            for (auto& x : v) x = -x;
            roots.push_back(v);
        };
        for (int i = 1; i <= 8; ++i)
            for (int j = i + 1; j <= 8; ++j) {
                Vec10 v{};
                v[i] = 1;
                v[j] = -1;
                push_pm(v);
            }
        for (int i = 1; i <= 8; ++i)
            for (int j = i + 1; j <= 8; ++j)
                for (int k = j + 1; k <= 8; ++k) {
                    Vec10 v{};
                    v[0] = 1;
                    v[i] = v[j] = v[k] = -1;
                    push_pm(v);
                }
        // 2h - six e's among e1..e8
        for (int skip1 = 1; skip1 <= 8; ++skip1)
            for (int skip2 = skip1 + 1; skip2 <= 8; ++skip2) {
                Vec10 v{};
                v[0] = 2;
                for (int t = 1; t <= 8; ++t)
                    if (t != skip1 && t != skip2) v[t] = -1;
                push_pm(v);
            }
        // 3h - 2 e_i - sum of the other e's among e1..e8
        for (int i = 1; i <= 8; ++i) {
            Vec10 v{};
            v[0] = 3;
            for (int t = 1; t <= 8; ++t) v[t] = (t == i) ? -2 : -1;
            push_pm(v);
        }
        // norm -4 vectors: sums of orthogonal root pairs
        std::vector<Vec10> all = roots;
        std::vector<Vec10> n4;
        for (std::size_t a = 0; a < roots.size(); ++a)
            for (std::size_t b = a + 1; b < roots.size(); ++b) {
                if (pair10(roots[a], roots[b]) != 0) continue;
                Vec10 s;
                for (int t = 0; t < 10; ++t) s[t] = roots[a][t] + roots[b][t];
                n4.push_back(s);
            }
        std::sort(n4.begin(), n4.end());
        n4.erase(std::unique(n4.begin(), n4.end()), n4.end());
        all.insert(all.end(), n4.begin(), n4.end());
        return all;
    }();
    return rel;
}

} // namespace detail_res

// Minimum of pair(D, l) over all (-1)-classes l, by descent from e9.
// Moves: the root reflections s(l) = l + (l.root) root, and transvections
// l -> l + z + (correction) f for the relevant translation vectors z of the
// orthogonal complement of (f, e9). Strict decrease each step; the final
// local minimum is the global one because the translation move set contains
// every Voronoi-relevant direction. Requires pair(D, f) > 0, which bounds
// the pairing below on the orbit.
inline MinExceptional min_exceptional_pairing_descent(const DivisorClass& d) {
    if (!same_lattice(d.lattice(), pic_res()))
        throw LatticeMismatchError("descent expects a class in Pic(S), got '" + d.lattice()->id() + "'");
    const DivisorClass f = fiber_res();
    if (pair(d, f) <= 0)
        throw std::invalid_argument("min_exceptional_pairing_descent requires pair(D, f) > 0");

    const DivisorClass origin = DivisorClass::basis(pic_res(), 9); // e9
    DivisorClass cur = origin;
    Int cur_val = pair(d, cur);

    auto transvect = [&](const DivisorClass& l, const detail_res::Vec10& zraw) {
        // write l = e9 + y + Q(y) f with y in the rank-8 complement, shift y
        IntVec z(10);
        for (int t = 0; t < 10; ++t) z[t] = zraw[t];
        DivisorClass zc(pic_res(), std::move(z));
        Int q = pair(l, origin) + 1;
        DivisorClass y = l - origin - f * q;
        DivisorClass y2 = y + zc;
        Int q2 = -pair(y2, y2) / 2;
        return origin + y2 + f * q2;
    };

    const long max_steps = 200000;
    for (long step = 0; step < max_steps; ++step) {
        Int best_val = cur_val;
        std::optional<DivisorClass> best;
        for (const auto& rraw : detail_res::reflection_roots()) {
            IntVec rv(10);
            for (int t = 0; t < 10; ++t) rv[t] = rraw[t];
            DivisorClass root(pic_res(), std::move(rv));
            DivisorClass cand = cur + root * pair(cur, root);
            Int v = pair(d, cand);
            if (v < best_val) {
                best_val = v;
                best = cand;
            }
        }
        for (const auto& z : detail_res::relevant_translations()) {
            DivisorClass cand = transvect(cur, z);
            Int v = pair(d, cand);
            if (v < best_val) {
                best_val = v;
                best = cand;
            }
        }
        if (!best) return {cur_val, cur};
        cur = *best;
        cur_val = best_val;
    }
    throw std::runtime_error("exceptional-pairing descent failed to terminate");
}

// Visit every (-1)-class whose coordinates are bounded by the box:
// 0 <= degree <= box and |e-coefficients| <= box.
inline void for_each_exceptional(long box, const std::function<void(const detail_res::Vec10&)>& visit) {
    if (box < 1) throw std::invalid_argument("exceptional enumeration requires box >= 1");
    using detail_res::Vec10;
    Vec10 cur{};
    // constraints: sum m_i = 1 - 3d, sum m_i^2 = d^2 + 1
    std::function<void(int, std::int64_t, std::int64_t)> rec = [&](int idx, std::int64_t rem_sum,
                                                                   std::int64_t rem_sq) {
        if (rem_sq < 0) return;
        const int left = 9 - idx + 1;
        if (idx > 9) {
            if (rem_sum == 0 && rem_sq == 0) visit(cur);
            return;
        }
        if (rem_sum * rem_sum > static_cast<std::int64_t>(left) * rem_sq) return;
        std::int64_t lo = std::max<std::int64_t>(-box, rem_sum - static_cast<std::int64_t>(left - 1) * box);
        std::int64_t hi = std::min<std::int64_t>(box, rem_sum + static_cast<std::int64_t>(left - 1) * box);
        for (std::int64_t v = hi; v >= lo; --v) {
            if (v * v > rem_sq) continue;
            cur[idx] = v;
            rec(idx + 1, rem_sum - v, rem_sq - v * v);
        }
        cur[idx] = 0;
    };
    for (std::int64_t deg = 0; deg <= box; ++deg) {
        cur[0] = deg;
        rec(1, 1 - 3 * deg, deg * deg + 1);
    }
}

// Exhaustive cross-check of the descent within a coordinate box.
inline MinExceptional min_exceptional_pairing_enumeration(const DivisorClass& d, long box) {
    detail_res::Vec10 dn;
    for (int i = 0; i < 10; ++i) dn[i] = to_int64(d.coords()[i]);
    std::optional<std::int64_t> best;
    detail_res::Vec10 arg{};
    for_each_exceptional(box, [&](const detail_res::Vec10& l) {
        std::int64_t v = detail_res::pair10(dn, l);
        if (!best || v < *best) {
            best = v;
            arg = l;
        }
    });
    if (!best) throw std::runtime_error("no exceptional class in enumeration box");
    IntVec coords(10);
    for (int i = 0; i < 10; ++i) coords[i] = arg[i];
    return {Int(*best), res_class(std::move(coords))};
}

// ---- positivity -----------------------------------------------------------

struct AmpleCheck {
    enum class Reason { Ample, NonpositiveSquare, NonpositiveFiberDegree, NonpositiveExceptional };

    bool ample = false;
    Reason reason = Reason::Ample;
    std::optional<DivisorClass> witness;     // class pairing nonpositively, when one exists
    std::optional<Int> min_exceptional;      // filled when the exceptional scan ran

    explicit operator bool() const { return ample; }
};

inline const char* to_cstr(AmpleCheck::Reason r) {
    switch (r) {
        case AmpleCheck::Reason::Ample: return "Ample";
        case AmpleCheck::Reason::NonpositiveSquare: return "NotAmple(D^2 <= 0)";
        case AmpleCheck::Reason::NonpositiveFiberDegree: return "NotAmple(D.f <= 0)";
        default: return "NotAmple(exceptional witness)";
    }
}

// Nakai-Moishezon for a general rational elliptic surface: D^2 > 0,
// positive degree on the fiber, and positive pairing with every (-1)-class.
// The exceptional minimum comes from the descent.
inline AmpleCheck is_ample_res(const DivisorClass& d) {
    AmpleCheck r;
    if (self_intersection(d) <= 0) {
        r.reason = AmpleCheck::Reason::NonpositiveSquare;
        return r;
    }
    if (pair(d, fiber_res()) <= 0) {
        r.reason = AmpleCheck::Reason::NonpositiveFiberDegree;
        r.witness = fiber_res();
        return r;
    }
    MinExceptional m = min_exceptional_pairing_descent(d);
    r.min_exceptional = m.value;
    if (m.value <= 0) {
        r.reason = AmpleCheck::Reason::NonpositiveExceptional;
        r.witness = m.argmin;
        return r;
    }
    r.ample = true;
    return r;
}

// Sufficient freeness on a rational elliptic surface: ample and fiber degree
// at least 2. Never claims non-freeness.
inline Freeness is_free_res(const DivisorClass& d) {
    if (!is_ample_res(d).ample) return Freeness::Unknown;
    return pair(d, fiber_res()) >= 2 ? Freeness::Free : Freeness::Unknown;
}

} // namespace cylattice
