#pragma once

#include "cylattice/abelian_square.hpp"
#include "cylattice/rational_elliptic.hpp"
#include "cylattice/topology.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cylattice {

class WrongLatticeError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NotEffectiveCenterError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NoPlanError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

// Effectivity filter applied to blow-up centers; only lattices with a
// supported test get one.
enum class EffectivityRule { None, AbelianSquare };

inline const char* to_cstr(EffectivityRule r) {
    return r == EffectivityRule::AbelianSquare ? "abelian-square" : "none";
}

inline bool center_effective(EffectivityRule rule, const DivisorClass& center) {
    switch (rule) {
        case EffectivityRule::AbelianSquare: return is_effective(center);
        case EffectivityRule::None: return true;
    }
    return true;
}

struct ComponentData {
    std::string name;
    long b1 = 0;
    long b2 = 0;
    std::vector<DivisorClass> restriction_classes;
    bool betti_from_paper = false; // true when b1/b2 cannot be derived by Kunneth
};

struct BlowupRecord {
    int side; // 1 or 2
    DivisorClass center;
};

// Exact-sequence hypotheses consumed by the Betti pipeline; asserted by the
// construction, not computed.
struct BettiHypotheses {
    bool left_injective = true;
    long components_of_double_locus = 1;
    long rank_h1_to_h0 = 0;
};

// Two-component SNC gluing at the level of the double-locus lattice. All
// normal-bundle and restriction classes are stored after transport into one
// chart; the identification isometry used for the transport is recorded.
// Configs are immutable: blow-ups return new configs.
class GluingConfig {
  public:
    GluingConfig(ComponentData comp1, ComponentData comp2, Lattice double_locus, DivisorClass normal1,
                 DivisorClass normal2, IntMat identification, bool double_locus_connected, bool anticanonical_ok)
        : comp1_(std::move(comp1)), comp2_(std::move(comp2)), double_locus_(std::move(double_locus)),
          normal1_(std::move(normal1)), normal2_(std::move(normal2)), identification_(std::move(identification)),
          double_locus_connected_(double_locus_connected), anticanonical_ok_(anticanonical_ok) {
        validate();
    }

    const ComponentData& comp1() const { return comp1_; }
    const ComponentData& comp2() const { return comp2_; }
    const Lattice& double_locus_lattice() const { return double_locus_; }
    const DivisorClass& normal1() const { return normal1_; }
    const DivisorClass& normal2() const { return normal2_; }
    const IntMat& identification() const { return identification_; }
    bool double_locus_connected() const { return double_locus_connected_; }
    bool anticanonical_ok() const { return anticanonical_ok_; }
    const std::vector<BlowupRecord>& blowup_log() const { return blowup_log_; }

    EffectivityRule effectivity_rule() const { return effectivity_; }
    const std::optional<DivisorClass>& reference_ample() const { return reference_ample_; }
    const std::optional<DivisorClass>& planned_seed() const { return planned_seed_; }
    long planned_seed_count() const { return planned_seed_count_; }
    const BettiHypotheses& betti_hypotheses() const { return betti_; }
    const std::string& note() const { return note_; }

    bool cy_valid() const { return double_locus_connected_ && anticanonical_ok_; }

    std::vector<DivisorClass> all_restriction_classes() const {
        std::vector<DivisorClass> out = comp1_.restriction_classes;
        out.insert(out.end(), comp2_.restriction_classes.begin(), comp2_.restriction_classes.end());
        return out;
    }

    GluingConfig& set_effectivity(EffectivityRule r) {
        effectivity_ = r;
        return *this;
    }
    GluingConfig& set_reference_ample(DivisorClass a) {
        reference_ample_ = std::move(a);
        return *this;
    }
    GluingConfig& set_plan_hint(DivisorClass seed, long count) {
        planned_seed_ = std::move(seed);
        planned_seed_count_ = count;
        return *this;
    }
    GluingConfig& set_betti_hypotheses(BettiHypotheses b) {
        betti_ = b;
        return *this;
    }
    GluingConfig& set_blowup_log(std::vector<BlowupRecord> log) {
        blowup_log_ = std::move(log);
        return *this;
    }
    GluingConfig& set_note(std::string n) {
        note_ = std::move(n);
        return *this;
    }

  private:
    void validate() const {
        for (const DivisorClass* d : {&normal1_, &normal2_})
            if (!same_lattice(d->lattice(), double_locus_))
                throw WrongLatticeError("gluing: normal class bound to '" + d->lattice()->id() +
                                        "', expected double locus '" + double_locus_->id() + "'");
        for (const ComponentData* c : {&comp1_, &comp2_}) {
            if (static_cast<long>(c->restriction_classes.size()) > c->b2)
                throw std::invalid_argument("gluing: component '" + c->name +
                                            "' has more restriction classes than b2");
            for (const DivisorClass& d : c->restriction_classes)
                if (!same_lattice(d.lattice(), double_locus_))
                    throw WrongLatticeError("gluing: restriction class of '" + c->name + "' bound to '" +
                                            d.lattice()->id() + "', expected '" + double_locus_->id() + "'");
        }
        if (!is_lattice_isometry(identification_, double_locus_))
            throw std::invalid_argument("gluing: identification is not an isometry of the double-locus lattice");
    }

    ComponentData comp1_, comp2_;
    Lattice double_locus_;
    DivisorClass normal1_, normal2_;
    IntMat identification_;
    bool double_locus_connected_ = true;
    bool anticanonical_ok_ = true;
    std::vector<BlowupRecord> blowup_log_;

    EffectivityRule effectivity_ = EffectivityRule::None;
    std::optional<DivisorClass> reference_ample_;
    std::optional<DivisorClass> planned_seed_;
    long planned_seed_count_ = -1;
    BettiHypotheses betti_;
    std::string note_;
};

// Tensor product of the two normal bundles: plain class addition in the
// common chart. Always computable; CY validity is a separate flag.
inline DivisorClass obstruction_class(const GluingConfig& g) { return g.normal1() + g.normal2(); }

inline bool is_dsemistable(const GluingConfig& g) { return obstruction_class(g).is_zero(); }

// Blow up a center inside the double locus on one side: the normal class of
// that side drops by the center, b2 of the component rises by one and the
// exceptional divisor restricts to the center class.
inline GluingConfig apply_blowup(const GluingConfig& g, int side, const DivisorClass& center) {
    if (side != 1 && side != 2) throw std::invalid_argument("apply_blowup: side must be 1 or 2");
    if (!same_lattice(center.lattice(), g.double_locus_lattice()))
        throw WrongLatticeError("apply_blowup: center bound to '" + center.lattice()->id() +
                                "', expected '" + g.double_locus_lattice()->id() + "'");
    if (center.is_zero()) throw NotEffectiveCenterError("apply_blowup: center class is zero");
    if (!center_effective(g.effectivity_rule(), center))
        throw NotEffectiveCenterError("apply_blowup: center " + center.str() + " is not effective");

    ComponentData c1 = g.comp1(), c2 = g.comp2();
    DivisorClass n1 = g.normal1(), n2 = g.normal2();
    ComponentData& c = side == 1 ? c1 : c2;
    DivisorClass& n = side == 1 ? n1 : n2;
    n = n - center;
    c.b2 += 1;
    c.restriction_classes.push_back(center);

    GluingConfig out(std::move(c1), std::move(c2), g.double_locus_lattice(), std::move(n1), std::move(n2),
                     g.identification(), g.double_locus_connected(), g.anticanonical_ok());
    out.set_effectivity(g.effectivity_rule());
    if (g.reference_ample()) out.set_reference_ample(*g.reference_ample());
    if (g.planned_seed()) out.set_plan_hint(*g.planned_seed(), g.planned_seed_count());
    out.set_betti_hypotheses(g.betti_hypotheses());
    out.set_note(g.note());
    std::vector<BlowupRecord> log = g.blowup_log();
    log.push_back({side, center});
    out.set_blowup_log(std::move(log));
    return out;
}

// Ampleness / freeness tests supplied to the planner.
struct PositivityTests {
    std::string name;
    std::function<bool(const DivisorClass&)> ample;
    std::function<Freeness(const DivisorClass&)> free;
};

inline PositivityTests abelian_positivity() {
    return {"abelian-square", [](const DivisorClass& d) { return is_ample(d); },
            [](const DivisorClass& d) { return is_free_sufficient(d); }};
}

inline PositivityTests res_positivity() {
    return {"rational-elliptic", [](const DivisorClass& d) { return is_ample_res(d).ample; },
            [](const DivisorClass& d) { return is_free_res(d); }};
}

// The construction's blow-up plan: k copies of the seed class followed by one
// positivity-certified remainder, with obstruction = k seed + remainder.
// When the config records the construction's seed multiplicity (the builders
// do), that count is verified; otherwise the planner searches for the largest
// count whose remainder passes both tests. Termination is bounded because
// every effective subtraction strictly decreases the pairing with the
// reference ample class.
inline std::vector<DivisorClass> plan_blowups(const GluingConfig& g, const DivisorClass& seed,
                                              const PositivityTests& positivity) {
    const DivisorClass obstruction = obstruction_class(g);
    if (obstruction.is_zero()) throw NoPlanError("plan_blowups: obstruction already zero, nothing to plan");
    if (!same_lattice(seed.lattice(), g.double_locus_lattice()))
        throw WrongLatticeError("plan_blowups: seed bound to '" + seed.lattice()->id() + "'");
    if (seed.is_zero()) throw std::invalid_argument("plan_blowups: seed class is zero");
    if (!g.reference_ample()) throw NoPlanError("plan_blowups: config has no reference ample class");
    const DivisorClass& ample_ref = *g.reference_ample();
    const Int seed_deg = pair(seed, ample_ref);
    if (seed_deg <= 0) throw NoPlanError("plan_blowups: seed has nonpositive degree against the reference ample");

    auto make_plan = [&](long k) {
        std::vector<DivisorClass> plan(static_cast<std::size_t>(k), seed);
        DivisorClass remainder = obstruction - seed * Int(k);
        if (!remainder.is_zero()) plan.push_back(remainder);
        return plan;
    };
    auto remainder_passes = [&](const DivisorClass& r) {
        return positivity.ample(r) && positivity.free(r) == Freeness::Free;
    };

    if (g.planned_seed_count() >= 0 && g.planned_seed() && *g.planned_seed() == seed) {
        long k = g.planned_seed_count();
        DivisorClass remainder = obstruction - seed * Int(k);
        if (!remainder.is_zero() && !remainder_passes(remainder))
            throw NoPlanError("plan_blowups: recorded multiplicity " + std::to_string(k) +
                              " leaves a remainder failing the positivity tests");
        return make_plan(k);
    }

    Int kmax_z = pair(obstruction, ample_ref) / seed_deg;
    long kmax = kmax_z.fits_slong_p() ? kmax_z.get_si() : 1 << 20;
    for (long k = kmax; k >= 0; --k) {
        DivisorClass remainder = obstruction - seed * Int(k);
        if (remainder.is_zero()) return make_plan(k);
        if (remainder_passes(remainder)) return make_plan(k);
    }
    throw NoPlanError("plan_blowups: no seed count in 0.." + std::to_string(kmax) +
                      " yields an ample and free remainder");
}

inline GluingConfig execute_plan(const GluingConfig& g, int side, const std::vector<DivisorClass>& plan) {
    GluingConfig cur = g;
    for (const DivisorClass& center : plan) cur = apply_blowup(cur, side, center);
    return cur;
}

// Side swap: exchanges components and normal classes and inverts the
// identification.
inline GluingConfig swap_sides(const GluingConfig& g) {
    GluingConfig out(g.comp2(), g.comp1(), g.double_locus_lattice(), g.normal2(), g.normal1(),
                     inverse_integral(g.identification()), g.double_locus_connected(), g.anticanonical_ok());
    out.set_effectivity(g.effectivity_rule());
    if (g.reference_ample()) out.set_reference_ample(*g.reference_ample());
    if (g.planned_seed()) out.set_plan_hint(*g.planned_seed(), g.planned_seed_count());
    out.set_betti_hypotheses(g.betti_hypotheses());
    std::vector<BlowupRecord> log;
    for (const BlowupRecord& r : g.blowup_log()) log.push_back({r.side == 1 ? 2 : 1, r.center});
    out.set_blowup_log(std::move(log));
    out.set_note(g.note());
    return out;
}

// ---- builders for the two built-in constructions ---------------------------

// P^2 x E and E x P^2 glued along E x E through the automorphisms attached to
// the matrices (1,-a;0,1) and (1,0;-a,1). All classes live in the common
// E x E chart, where the obstruction takes the displayed form
// 9((a-1)^2 (f1+f2) + 2a Delta).
inline GluingConfig builtin_example_42(long a) {
    if (a < 2) throw std::invalid_argument("example-4.2 requires a >= 2");
    const EndoMatrix m1{1, -a, 0, 1};
    const EndoMatrix m2{1, 0, -a, 1};

    const DivisorClass c_a = pullback(m1, fiber1());
    const DivisorClass d_a = pullback(m2, fiber2());
    // deg O_{P2}(3)|_E = 9, so each normal bundle is 9 times a fiber class
    const DivisorClass normal1 = c_a * 9;
    const DivisorClass normal2 = d_a * 9;

    const BettiProfile p2 = betti_p2(), ell = betti_elliptic_curve();
    const BettiProfile comp_profile = kunneth_profile(p2, ell);

    ComponentData comp1{"P2xE", comp_profile.b1, comp_profile.b2, {}};
    comp1.restriction_classes = {pullback(m1, fiber1()) * 3, pullback(m1, fiber2())};
    ComponentData comp2{"ExP2", comp_profile.b1, comp_profile.b2, {}};
    comp2.restriction_classes = {pullback(m2, fiber1()), pullback(m2, fiber2()) * 3};

    // transport of side-2 classes to side 1: psi = phi2 . phi1^{-1}
    IntMat identification = pullback_matrix(m1.inverse()) * pullback_matrix(m2);

    GluingConfig g(std::move(comp1), std::move(comp2), ns_abelian_square(), normal1, normal2,
                   std::move(identification), /*connected=*/true, /*anticanonical=*/true);
    g.set_effectivity(EffectivityRule::AbelianSquare);
    g.set_reference_ample(fiber1() + fiber2());
    g.set_plan_hint(diagonal(), a);
    g.set_betti_hypotheses({true, 1, 0});
    g.set_note("chart: source E x E; normals transported by the pullbacks of the two automorphisms");
    return g;
}

// The rational-elliptic-surface gluing of two copies of P^2 x T, modelled at
// the level of Pic(S): normal classes 3h + f and its transport 3 phi_m^*(h) + f,
// obstruction 3(h + phi_m^* h) + 2f.
inline GluingConfig builtin_example_section3(long m, WordOrder order = WordOrder::Forward) {
    if (m < 1) throw std::invalid_argument("section-3 requires m >= 1");
    const IntMat w = phi_m_pullback(m, order);
    const DivisorClass h = hyperplane_res();
    const DivisorClass f = fiber_res();
    const DivisorClass wh = apply_isometry(w, h);

    // b2(P^2 x T) = 3 is a paper-given input (T is not a product, so the
    // Kunneth helper does not apply)
    ComponentData comp1{"P2xT", 0, 3, {h, f}};
    comp1.betti_from_paper = true;
    ComponentData comp2{"P2xT'", 0, 3, {wh, apply_isometry(w, f)}};
    comp2.betti_from_paper = true;

    GluingConfig g(std::move(comp1), std::move(comp2), pic_res(), h * 3 + f, wh * 3 + f, w,
                   /*connected=*/true, /*anticanonical=*/true);
    g.set_effectivity(EffectivityRule::None);
    g.set_reference_ample(reference_ample_res());
    g.set_plan_hint(f, m);
    g.set_betti_hypotheses({true, 1, 0});
    g.set_note(std::string("word order: ") + to_cstr(order));
    return g;
}

inline GluingConfig builtin_example(const std::string& name, long param, WordOrder order = WordOrder::Forward) {
    if (name == "example-4.2") return builtin_example_42(param);
    if (name == "section-3") return builtin_example_section3(param, order);
    throw std::invalid_argument("unknown builtin example '" + name + "' (expected example-4.2 or section-3)");
}

} // namespace cylattice
