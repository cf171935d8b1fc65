#pragma once

#include "cylattice/abelian_square.hpp"
#include "cylattice/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cylattice {

// The class of the final blow-up center comes in two flavours because the
// paper's display disagrees with its own construction on the Delta
// coefficient (17a derived vs 9a printed). Both are always decided.
enum class GammaVariant { Derived, PaperPrinted };

// Same story for the middle coordinate of C_a inside the claim display
// (a^2 - a derived vs a - a^2 printed). The display-literal system is
// reported alongside, never adjudicated.
enum class CaVariant { Derived, DisplayLiteral };

inline const char* to_cstr(GammaVariant v) {
    return v == GammaVariant::Derived ? "gamma-derived" : "gamma-paper-printed";
}

inline const char* to_cstr(CaVariant v) { return v == CaVariant::Derived ? "Ca-derived" : "Ca-display-literal"; }

// Integer linear system over the unknowns (alpha, alpha', d1, d2, s, b_last):
// one equation per NS(E x E) coordinate, sign constraints on the first four
// unknowns and the nontriviality condition (alpha, d1) != (0, 0).
struct EffectivitySystem {
    static constexpr std::size_t kUnknowns = 6;
    static constexpr std::array<const char*, kUnknowns> unknown_names = {"alpha", "alpha'", "d1",
                                                                         "d2",    "s",      "b_last"};

    long a = 0;
    GammaVariant gamma_variant = GammaVariant::Derived;
    CaVariant ca_variant = CaVariant::Derived;
    std::vector<std::array<Int, kUnknowns>> equations; // exactly 3
    bool require_nontrivial = true;

    std::string label() const {
        std::string s = "a=" + std::to_string(a) + " " + to_cstr(gamma_variant);
        if (ca_variant == CaVariant::DisplayLiteral) s += std::string(" ") + to_cstr(ca_variant);
        return s;
    }
};

// Equations of 3a C_a + d1 f2 + s Delta + b Gamma = d2 f1 + 3a' D_a, one per
// (f1, f2, Delta) coordinate, everything moved to the left-hand side.
inline EffectivitySystem build_claim43_system(long a, GammaVariant gamma_variant,
                                              CaVariant ca_variant = CaVariant::Derived) {
    if (a < 2) throw std::invalid_argument("build_claim43_system requires a >= 2");
    const Int A(a);

    const DivisorClass ca_derived = pullback(EndoMatrix{1, -a, 0, 1}, fiber1());
    const DivisorClass da = pullback(EndoMatrix{1, 0, -a, 1}, fiber2());
    IntVec ca = ca_derived.coords();
    if (ca_variant == CaVariant::DisplayLiteral) ca[1] = A - A * A; // printed middle coordinate

    const Int gsq = 9 * (A - 1) * (A - 1);
    IntVec gamma = {gsq, gsq, gamma_variant == GammaVariant::Derived ? 17 * A : 9 * A};

    EffectivitySystem sys;
    sys.a = a;
    sys.gamma_variant = gamma_variant;
    sys.ca_variant = ca_variant;
    for (int c = 0; c < 3; ++c) {
        std::array<Int, 6> row;
        row[0] = 3 * ca[c];                 // alpha
        row[1] = -3 * da.coords()[c];       // alpha'
        row[2] = (c == 1) ? Int(1) : Int(0); // d1 enters on f2
        row[3] = (c == 0) ? Int(-1) : Int(0); // d2 enters on f1, moved left
        row[4] = (c == 2) ? Int(1) : Int(0); // s enters on Delta
        row[5] = gamma[c];                   // b_last
        sys.equations.push_back(row);
    }
    return sys;
}

struct Witness {
    std::array<Int, EffectivitySystem::kUnknowns> values;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ", ";
            s += std::string(EffectivitySystem::unknown_names[i]) + "=" + values[i].get_str();
        }
        return s + ")";
    }
};

inline bool satisfies(const EffectivitySystem& sys, const Witness& w) {
    for (const auto& eq : sys.equations) {
        Int acc = 0;
        for (std::size_t i = 0; i < EffectivitySystem::kUnknowns; ++i) acc += eq[i] * w.values[i];
        if (acc != 0) return false;
    }
    for (int i = 0; i < 4; ++i)
        if (w.values[i] < 0) return false;
    if (sys.require_nontrivial && w.values[0] == 0 && w.values[2] == 0) return false;
    return true;
}

// Linear form in (alpha, alpha', d1, d2).
struct LinearForm {
    std::array<Int, 4> coeffs;

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < 4; ++i) {
            if (coeffs[i] == 0) continue;
            if (!first) os << (coeffs[i] > 0 ? " + " : " - ");
            else if (coeffs[i] < 0) os << "-";
            Int mag = abs(coeffs[i]);
            if (mag != 1) os << mag.get_str() << "*";
            os << EffectivitySystem::unknown_names[i];
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

// The sign argument: an equality L.y = R.y with L <= 0 <= R coefficientwise
// over y >= 0, forcing the listed unknowns to vanish and contradicting
// nontriviality.
struct SignCertificate {
    LinearForm lhs; // nonpositive side
    LinearForm rhs; // nonnegative side
    std::vector<int> forced_zero;

    std::string str() const {
        std::string s = "equality [" + lhs.str() + "] = [" + rhs.str() + "] with LHS <= 0 and RHS >= 0 forces";
        for (int i : forced_zero) s += std::string(" ") + EffectivitySystem::unknown_names[i] + "=0";
        s += ", contradicting (alpha, d1) != (0, 0)";
        return s;
    }
};

// Extract the paper-shaped certificate when the system supports it: the f1
// and f2 equations share the b coefficient and carry no s, so subtracting
// them eliminates b and leaves an equality of a nonpositive and a nonnegative
// form.
inline std::optional<SignCertificate> sign_certificate(const EffectivitySystem& sys) {
    if (sys.equations.size() != 3) return std::nullopt;
    const auto& e0 = sys.equations[0];
    const auto& e1 = sys.equations[1];
    if (e0[4] != 0 || e1[4] != 0) return std::nullopt;
    if (e0[5] != e1[5]) return std::nullopt;
    // e0 and e1 share the b coefficient, so e0 - e1 reads lhs . y = rhs . y
    SignCertificate cert;
    for (int i = 0; i < 4; ++i) {
        cert.lhs.coeffs[i] = e0[i];
        cert.rhs.coeffs[i] = e1[i];
        if (cert.lhs.coeffs[i] > 0 || cert.rhs.coeffs[i] < 0) return std::nullopt;
    }
    for (int i = 0; i < 4; ++i)
        if (cert.lhs.coeffs[i] < 0 || cert.rhs.coeffs[i] > 0) cert.forced_zero.push_back(i);
    // the certificate only refutes the system if it pins both alpha and d1
    bool has_alpha = false, has_d1 = false;
    for (int i : cert.forced_zero) {
        has_alpha |= i == 0;
        has_d1 |= i == 2;
    }
    if (!has_alpha || !has_d1) return std::nullopt;
    return cert;
}

struct Infeasibility {
    std::string reason;
    std::optional<SignCertificate> certificate;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Witness> witness;         // present when feasible
    std::optional<Infeasibility> infeasible; // present otherwise
};

namespace detail_fm {

// constraint c[0..3] . y + c[4] <= 0
using Constraint = std::array<Rat, 5>;

inline std::vector<std::vector<Constraint>> fm_eliminate(std::vector<Constraint> cons) {
    std::vector<std::vector<Constraint>> levels(5);
    levels[4] = cons;
    for (int v = 3; v >= 0; --v) {
        std::vector<Constraint> next;
        std::vector<const Constraint*> pos, neg;
        for (const Constraint& c : levels[v + 1]) {
            if (c[v] > 0) pos.push_back(&c);
            else if (c[v] < 0) neg.push_back(&c);
            else next.push_back(c);
        }
        for (const Constraint* p : neg)
            for (const Constraint* q : pos) {
                // lambda p + mu q with lambda = q[v] > 0, mu = -p[v] > 0
                Constraint comb;
                for (int i = 0; i < 5; ++i) comb[i] = (*q)[v] * (*p)[i] - (*p)[v] * (*q)[i];
                comb[v] = 0;
                next.push_back(comb);
            }
        levels[v] = std::move(next);
    }
    return levels;
}

inline bool fm_consistent(const std::vector<Constraint>& ground) {
    for (const Constraint& c : ground)
        if (c[4] > 0) return false;
    return true;
}

// pick y_v satisfying every constraint of the level given y_0..y_{v-1}
inline Rat fm_pick(const std::vector<Constraint>& level, const std::vector<Rat>& fixed, int v) {
    std::optional<Rat> lo, hi;
    for (const Constraint& c : level) {
        if (c[v] == 0) continue;
        Rat rest = c[4];
        for (int i = 0; i < v; ++i) rest += c[i] * fixed[i];
        Rat bound = -rest / c[v];
        if (c[v] > 0) {
            if (!hi || bound < *hi) hi = bound;
        } else {
            if (!lo || bound > *lo) lo = bound;
        }
    }
    if (lo && hi) return (*lo + *hi) / 2;
    if (lo) return *lo;
    if (hi) return *hi;
    return Rat(0);
}

} // namespace detail_fm

// Decide integer feasibility. The free unknowns s, b_last are eliminated
// exactly over the rationals; the remaining equalities and sign constraints
// on (alpha, alpha', d1, d2) go through Fourier-Motzkin. The system is
// homogeneous, so a rational solution scales to an integral one (clearing
// the denominators of the eliminated unknowns as well), and nontriviality
// normalizes to alpha + d1 >= 1.
inline FeasibilityResult feasible(const EffectivitySystem& sys) {
    using detail_fm::Constraint;
    const std::size_t n_eq = sys.equations.size();
    if (n_eq == 0) throw std::invalid_argument("feasible: system has no equations");

    if (!sys.require_nontrivial) {
        FeasibilityResult r;
        r.feasible = true;
        r.witness = Witness{};
        for (auto& v : r.witness->values) v = 0;
        return r;
    }

    // rational elimination of columns 4 (s) and 5 (b_last)
    std::vector<std::array<Rat, 6>> rows(n_eq);
    for (std::size_t i = 0; i < n_eq; ++i)
        for (int j = 0; j < 6; ++j) rows[i][j] = Rat(sys.equations[i][j]);
    std::vector<bool> used(n_eq, false);
    std::array<std::optional<std::size_t>, 2> pivot_row; // for columns 4, 5
    for (int which = 0; which < 2; ++which) {
        int col = 4 + which;
        for (std::size_t i = 0; i < n_eq; ++i) {
            if (used[i] || rows[i][col] == 0) continue;
            pivot_row[which] = i;
            used[i] = true;
            Rat inv = rows[i][col];
            for (int j = 0; j < 6; ++j) rows[i][j] /= inv;
            for (std::size_t k = 0; k < n_eq; ++k) {
                if (k == i || rows[k][col] == 0) continue;
                Rat f = rows[k][col];
                for (int j = 0; j < 6; ++j) rows[k][j] -= f * rows[i][j];
            }
            break;
        }
    }

    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < n_eq; ++i) {
        if (used[i]) continue; // definition row of an eliminated unknown
        Constraint le, ge;
        for (int j = 0; j < 4; ++j) {
            le[j] = rows[i][j];
            ge[j] = -rows[i][j];
        }
        le[4] = ge[4] = 0;
        cons.push_back(le);
        cons.push_back(ge);
    }
    for (int i = 0; i < 4; ++i) {
        Constraint c{};
        c[i] = -1;
        cons.push_back(c);
    }
    Constraint nontrivial{};
    nontrivial[0] = -1;
    nontrivial[2] = -1;
    nontrivial[4] = 1; // 1 - alpha - d1 <= 0
    cons.push_back(nontrivial);

    auto levels = detail_fm::fm_eliminate(std::move(cons));
    if (!detail_fm::fm_consistent(levels[0])) {
        FeasibilityResult r;
        Infeasibility inf;
        inf.certificate = sign_certificate(sys);
        inf.reason = inf.certificate
                         ? inf.certificate->str()
                         : "Fourier-Motzkin elimination derived a contradictory constant constraint";
        r.infeasible = std::move(inf);
        return r;
    }

    // back-substitute a rational point, then scale to integers
    std::vector<Rat> y;
    for (int v = 0; v < 4; ++v) {
        Rat val = detail_fm::fm_pick(levels[v + 1], y, v);
        y.push_back(val);
    }
    std::array<Rat, 6> full;
    for (int i = 0; i < 4; ++i) full[i] = y[i];
    full[4] = 0;
    full[5] = 0;
    for (int which = 1; which >= 0; --which) { // b first, then s (s row may involve b)
        if (!pivot_row[which]) continue;
        const auto& row = rows[*pivot_row[which]];
        Rat val = 0;
        for (int j = 0; j < 6; ++j) {
            if (j == 4 + which) continue;
            val -= row[j] * full[j];
        }
        full[4 + which] = val;
    }
    Int scale = 1;
    for (const Rat& v : full) {
        Rat c = v;
        c.canonicalize();
        scale = lcm(scale, Int(c.get_den()));
    }
    FeasibilityResult r;
    r.feasible = true;
    r.witness = Witness{};
    for (int i = 0; i < 6; ++i) {
        Rat v = full[i] * scale;
        v.canonicalize();
        r.witness->values[i] = v.get_num();
    }
    if (!satisfies(sys, *r.witness))
        throw std::logic_error("feasible: extracted witness fails verification for " + sys.label());
    return r;
}

// ---- exhaustive oracle ------------------------------------------------------

struct OracleResult {
    bool found = false;
    std::optional<Witness> witness;
};

namespace detail_oracle {

struct NarrowedSystem {
    std::array<std::array<std::int64_t, 6>, 3> eq;
    int s_row;     // the single equation with nonzero s coefficient
    int b_row;     // an s-free equation with nonzero b coefficient
    int check_row; // the remaining equation
    bool require_nontrivial;
};

inline NarrowedSystem narrow(const EffectivitySystem& sys) {
    if (sys.equations.size() != 3)
        throw std::invalid_argument("brute_force_oracle expects a 3-equation claim system");
    NarrowedSystem n{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) n.eq[i][j] = to_int64(sys.equations[i][j]);
    n.s_row = n.b_row = n.check_row = -1;
    for (int i = 0; i < 3; ++i)
        if (n.eq[i][4] != 0) {
            if (n.s_row != -1) throw std::invalid_argument("brute_force_oracle: s appears in several equations");
            n.s_row = i;
        }
    if (n.s_row == -1) throw std::invalid_argument("brute_force_oracle: no equation constrains s");
    for (int i = 0; i < 3; ++i)
        if (i != n.s_row && n.eq[i][5] != 0 && n.b_row == -1) n.b_row = i;
    if (n.b_row == -1) throw std::invalid_argument("brute_force_oracle: no s-free equation constrains b_last");
    for (int i = 0; i < 3; ++i)
        if (i != n.s_row && i != n.b_row) n.check_row = i;
    n.require_nontrivial = sys.require_nontrivial;
    return n;
}

// lexicographically first witness with alpha restricted to [alpha_lo, alpha_hi]
inline std::optional<std::array<std::int64_t, 6>> scan_alpha_range(const NarrowedSystem& n, std::int64_t box,
                                                                   std::int64_t alpha_lo, std::int64_t alpha_hi) {
    const auto& es = n.eq[n.s_row];
    const auto& eb = n.eq[n.b_row];
    const auto& ec = n.eq[n.check_row];
    for (std::int64_t a = alpha_lo; a <= alpha_hi; ++a)
        for (std::int64_t ap = 0; ap <= box; ++ap)
            for (std::int64_t d1 = 0; d1 <= box; ++d1) {
                if (n.require_nontrivial && a == 0 && d1 == 0) continue;
                const std::int64_t base_b = eb[0] * a + eb[1] * ap + eb[2] * d1;
                const std::int64_t base_c = ec[0] * a + ec[1] * ap + ec[2] * d1;
                const std::int64_t base_s = es[0] * a + es[1] * ap + es[2] * d1;
                for (std::int64_t d2 = 0; d2 <= box; ++d2) {
                    const std::int64_t vb = base_b + eb[3] * d2;
                    if (vb % eb[5] != 0) continue;
                    const std::int64_t b = -vb / eb[5];
                    if (b < -box || b > box) continue;
                    if (base_c + ec[3] * d2 + ec[5] * b != 0) continue;
                    const std::int64_t vs = base_s + es[3] * d2 + es[5] * b;
                    if (vs % es[4] != 0) continue;
                    const std::int64_t s = -vs / es[4];
                    if (s < -box || s > box) continue;
                    return std::array<std::int64_t, 6>{a, ap, d1, d2, s, b};
                }
            }
    return std::nullopt;
}

} // namespace detail_oracle

inline unsigned worker_count(unsigned requested = 0) {
    unsigned n = requested ? requested : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CYLATTICE_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Exhaustive scan of alpha, alpha', d1, d2 in [0, B] and s, b_last in
// [-B, B]; the equations determine s and b_last, so only divisibility and
// box membership are checked. First witness in lexicographic order; the
// alpha range may be partitioned across workers without changing the result.
inline OracleResult brute_force_oracle(const EffectivitySystem& sys, long box, unsigned threads = 0) {
    if (box < 1) throw std::invalid_argument("brute_force_oracle requires box >= 1");
    const auto n = detail_oracle::narrow(sys);
    const unsigned workers = std::min<unsigned>(worker_count(threads), static_cast<unsigned>(box) + 1);

    std::vector<std::optional<std::array<std::int64_t, 6>>> results(workers);
    if (workers <= 1) {
        results[0] = detail_oracle::scan_alpha_range(n, box, 0, box);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (box + workers) / workers;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                std::int64_t lo = w * chunk;
                std::int64_t hi = std::min<std::int64_t>(box, lo + chunk - 1);
                if (lo <= hi) results[w] = detail_oracle::scan_alpha_range(n, box, lo, hi);
            });
        for (auto& t : pool) t.join();
    }
    OracleResult out;
    for (const auto& r : results) {
        if (!r) continue;
        // chunks are ascending in alpha, so the first hit is the lex-first
        out.found = true;
        out.witness = Witness{};
        for (int i = 0; i < 6; ++i) out.witness->values[i] = (*r)[i];
        break;
    }
    return out;
}

// ---- range certification ----------------------------------------------------

struct CertifyRow {
    long a = 0;
    std::string variant;
    bool informational = false;
    bool is_feasible = false;
    std::string detail;
    std::optional<bool> oracle_agrees;
};

struct CertifyReport {
    long a_min = 0, a_max = 0;
    std::vector<CertifyRow> rows;
    bool all_main_variants_infeasible = true;
    bool any_disagreement = false;
};

// Per-a verdicts for both gamma variants (plus the display-literal C_a
// system, reported but never adjudicated), with the brute-force oracle run
// on a <= a_min + 3 when a box is supplied.
inline CertifyReport certify_range(long a_min, long a_max, std::optional<long> oracle_box = std::nullopt,
                                   unsigned threads = 0) {
    if (a_min < 2 || a_min > a_max)
        throw std::invalid_argument("certify_range requires 2 <= a_min <= a_max");
    CertifyReport report;
    report.a_min = a_min;
    report.a_max = a_max;
    for (long a = a_min; a <= a_max; ++a) {
        std::array<std::optional<bool>, 2> main_verdicts;
        for (GammaVariant gv : {GammaVariant::Derived, GammaVariant::PaperPrinted}) {
            EffectivitySystem sys = build_claim43_system(a, gv);
            FeasibilityResult res = feasible(sys);
            CertifyRow row;
            row.a = a;
            row.variant = to_cstr(gv);
            row.is_feasible = res.feasible;
            row.detail = res.feasible ? "witness " + res.witness->str() : res.infeasible->reason;
            if (oracle_box && a <= a_min + 3) {
                OracleResult o = brute_force_oracle(sys, *oracle_box, threads);
                bool agrees = o.found == res.feasible;
                row.oracle_agrees = agrees;
                if (!agrees) report.any_disagreement = true;
                row.detail += o.found ? "; oracle witness " + o.witness->str()
                                      : "; oracle: no witness in box " + std::to_string(*oracle_box);
            }
            main_verdicts[gv == GammaVariant::Derived ? 0 : 1] = res.feasible;
            if (res.feasible) report.all_main_variants_infeasible = false;
            report.rows.push_back(std::move(row));
        }
        if (main_verdicts[0] != main_verdicts[1]) report.any_disagreement = true;

        EffectivitySystem display = build_claim43_system(a, GammaVariant::PaperPrinted, CaVariant::DisplayLiteral);
        FeasibilityResult res = feasible(display);
        CertifyRow row;
        row.a = a;
        row.variant = "Ca-display-literal (informational)";
        row.informational = true;
        row.is_feasible = res.feasible;
        row.detail = res.feasible ? "witness " + res.witness->str() : res.infeasible->reason;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace cylattice
