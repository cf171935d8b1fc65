#pragma once

#include "cylattice/config_io.hpp"
#include "cylattice/feasibility.hpp"
#include "cylattice/gluing.hpp"
#include "cylattice/report.hpp"

#include <optional>
#include <string>

namespace cylattice {

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string coords_str(const DivisorClass& d) { return to_string(d.coords()); }

// Positivity tests appropriate for a double-locus lattice, recognized by its
// Gram matrix.
inline std::optional<PositivityTests> pick_positivity(const Lattice& lat) {
    if (lat->gram() == ns_abelian_square()->gram()) return abelian_positivity();
    if (lat->gram() == pic_res()->gram()) return res_positivity();
    return std::nullopt;
}

namespace detail_verify {

inline long count_seed_copies(const std::vector<DivisorClass>& plan, const DivisorClass& seed) {
    long k = 0;
    for (const DivisorClass& d : plan)
        if (d == seed) ++k;
    return k;
}

} // namespace detail_verify

// Full verification of the abelian-surface gluing at a given a >= 2:
// obstruction, blow-up plan, d-semistability, restriction rank, the Betti
// pipeline and the algebraic-dimension certificate.
inline VerificationReport verify_example_42(long a) {
    VerificationReport rep;
    rep.timestamp = utc_timestamp();
    rep.command = "verify example-4.2 --a " + std::to_string(a);
    rep.inputs = {{"example", "example-4.2"}, {"a", a}};

    const Int A(a);
    GluingConfig g = builtin_example_42(a);

    const DivisorClass ca = pullback(EndoMatrix{1, -a, 0, 1}, fiber1());
    const DivisorClass da = pullback(EndoMatrix{1, 0, -a, 1}, fiber2());
    rep.add("pullback_C_a", "abelian-surface.pullback", coords_str(ns_class(1 - A, A * A - A, A)),
            coords_str(ca), "PAPER");
    rep.add("pullback_D_a", "abelian-surface.pullback", coords_str(ns_class(A * A - A, 1 - A, A)),
            coords_str(da), "PAPER");

    const Int g2 = 9 * (A - 1) * (A - 1);
    rep.add("obstruction_class", "snc-gluing.obstruction_class", coords_str(ns_class(g2, g2, 18 * A)),
            coords_str(obstruction_class(g)), "PAPER");
    rep.add("dsemistable_before_blowups", "snc-gluing.is_dsemistable", "false", bool_str(is_dsemistable(g)),
            "PAPER");

    std::vector<DivisorClass> plan;
    std::string plan_err;
    try {
        plan = plan_blowups(g, diagonal(), abelian_positivity());
    } catch (const NoPlanError& e) {
        plan_err = e.what();
    }
    rep.add("plan_length", "snc-gluing.plan_blowups", std::to_string(a + 1),
            plan_err.empty() ? std::to_string(plan.size()) : plan_err, "PAPER");
    if (plan_err.empty() && !plan.empty()) {
        rep.add("plan_seed_copies", "snc-gluing.plan_blowups", std::to_string(a),
                std::to_string(detail_verify::count_seed_copies(plan, diagonal())), "PAPER");
        const DivisorClass& remainder = plan.back();
        rep.add("plan_remainder", "snc-gluing.plan_blowups", coords_str(ns_class(g2, g2, 17 * A)),
                coords_str(remainder), "PAPER");
        rep.add("plan_remainder_ample", "abelian-surface.is_ample", "true", bool_str(is_ample(remainder)),
                "PAPER");
        rep.add("plan_remainder_freeness", "abelian-surface.is_free_sufficient", "Free",
                to_cstr(is_free_sufficient(remainder)), "PAPER");

        GluingConfig after = execute_plan(g, 1, plan);
        rep.add("dsemistable_after_plan", "snc-gluing.is_dsemistable", "true", bool_str(is_dsemistable(after)),
                "PAPER");
        SpanRankResult rank = span_rank_snf(after.all_restriction_classes());
        rep.add("restriction_class_rank", "lattice-core.span_rank_snf", "3", std::to_string(rank.rank),
                "PAPER");
        long mv = mv_b2(after.comp1().b2, after.comp2().b2, static_cast<long>(rank.rank),
                        after.betti_hypotheses().left_injective);
        rep.add("mv_b2", "topology-invariants.mv_b2", std::to_string(a + 2), std::to_string(mv), "PAPER");
        long sm = smoothing_b2(mv, after.betti_hypotheses().components_of_double_locus,
                               after.betti_hypotheses().rank_h1_to_h0);
        rep.add("smoothing_b2", "topology-invariants.smoothing_b2", std::to_string(a + 1), std::to_string(sm),
                "PAPER");
    }

    for (GammaVariant gv : {GammaVariant::Derived, GammaVariant::PaperPrinted}) {
        FeasibilityResult res = feasible(build_claim43_system(a, gv));
        rep.add(std::string("claim43_") + to_cstr(gv), "algdim-feasibility.feasible", "Infeasible",
                res.feasible ? "Feasible" : "Infeasible", "PAPER");
    }

    FeasibilityResult display = feasible(build_claim43_system(a, GammaVariant::PaperPrinted, CaVariant::DisplayLiteral));
    rep.notes.push_back("Gamma_a runs in two variants: Delta-coefficient 17a (derived from the construction) "
                        "and 9a (as printed); both are decided above.");
    rep.notes.push_back("display-literal C_a system (middle coordinate a-a^2 as printed) at a=" +
                        std::to_string(a) + ": " + std::string(display.feasible ? "Feasible" : "Infeasible") +
                        (display.feasible ? ", witness " + display.witness->str() : "") +
                        " - informational, not adjudicated");
    rep.notes.push_back("all classes live in the source E x E chart; the recorded identification is the "
                        "pullback of phi_2 . phi_1^{-1}");
    return rep;
}

// Verification of the rational-elliptic-surface gluing at a given m >= 1,
// running both composition-order conventions.
inline VerificationReport verify_section3(long m, WordOrder primary = WordOrder::Forward) {
    VerificationReport rep;
    rep.timestamp = utc_timestamp();
    rep.command = "verify section-3 --m " + std::to_string(m) + " --word-order " + to_cstr(primary);
    rep.inputs = {{"example", "section-3"}, {"m", m}, {"word_order", to_cstr(primary)}};

    const DivisorClass h = hyperplane_res();
    const DivisorClass f = fiber_res();
    const DivisorClass k = canonical_res();

    for (WordOrder order : {primary, primary == WordOrder::Forward ? WordOrder::Reverse : WordOrder::Forward}) {
        const std::string tag = std::string("[") + to_cstr(order) + "]";
        const IntMat w = phi_m_pullback(m, order);
        bool isometry = is_lattice_isometry(w, pic_res()) && apply_isometry(w, k) == k;
        rep.add("phi_isometry_fixes_K" + tag, "res-lattice.phi_m_pullback", "true", bool_str(isometry),
                "DERIVED");

        GluingConfig g = builtin_example_section3(m, order);
        const DivisorClass cm = class_cm(m, order);
        const DivisorClass wh = apply_isometry(w, h);
        rep.add("obstruction_class" + tag, "snc-gluing.obstruction_class",
                coords_str((h + wh) * 3 + f * 2), coords_str(obstruction_class(g)), "PAPER");

        AmpleCheck ample = is_ample_res(cm);
        rep.add("class_cm_ample" + tag, "res-lattice.is_ample_res", "Ample", to_cstr(ample.reason), "PAPER");
        rep.add("class_cm_free" + tag, "res-lattice.is_free_res", "Free", to_cstr(is_free_res(cm)), "PAPER");

        std::vector<DivisorClass> plan;
        std::string plan_err;
        try {
            plan = plan_blowups(g, f, res_positivity());
        } catch (const NoPlanError& e) {
            plan_err = e.what();
        }
        rep.add("plan_seed_copies" + tag, "snc-gluing.plan_blowups", std::to_string(m),
                plan_err.empty() ? std::to_string(detail_verify::count_seed_copies(plan, f)) : plan_err,
                "PAPER");
        if (plan_err.empty() && !plan.empty()) {
            const DivisorClass wh = apply_isometry(w, h);
            const DivisorClass expected_remainder = (h + wh) * 3 + f * Int(2 - m);
            rep.add("plan_remainder" + tag, "snc-gluing.plan_blowups", coords_str(expected_remainder),
                    coords_str(plan.back()), "PAPER");
            rep.add("plan_remainder_ample" + tag, "res-lattice.is_ample_res", "Ample",
                    to_cstr(is_ample_res(plan.back()).reason), "PAPER");
        }

        // descent vs bounded enumeration on the two classes of interest
        MinExceptional cm_min = min_exceptional_pairing_descent(cm);
        long box = 12;
        for (const Int& c : cm_min.argmin.coords()) box = std::max(box, std::labs(c.get_si()));
        MinExceptional cm_enum = min_exceptional_pairing_enumeration(cm, box);
        rep.add("descent_equals_enumeration" + tag, "res-lattice.is_ample_res",
                cm_enum.value.get_str() + " (box " + std::to_string(box) + ")",
                cm_min.value.get_str() + " (box " + std::to_string(box) + ")", "DERIVED");
    }

    AmpleCheck m0 = is_ample_res(class_cm(0));
    rep.add("class_c0_is_2h_not_ample", "res-lattice.is_ample_res", "NotAmple", m0.ample ? "Ample" : "NotAmple",
            "TRIVIAL");
    rep.notes.push_back("the 6m-reflection composition order is not pinned by the construction; both "
                        "conventions are verified and reported");
    return rep;
}

// Run the named checks of a JSON config document.
inline VerificationReport run_config_checks(const json& doc, const std::string& command) {
    VerificationReport rep;
    rep.timestamp = utc_timestamp();
    rep.command = command;
    GluingConfig g = parse_config(doc);
    rep.inputs = config_to_json(g);

    std::optional<GluingConfig> after; // config with the recorded plan executed
    std::optional<std::vector<DivisorClass>> plan;
    std::string plan_err;
    auto ensure_plan = [&]() {
        if (plan || !plan_err.empty()) return;
        if (!g.planned_seed()) {
            plan_err = "config has no plan.seed";
            return;
        }
        std::optional<PositivityTests> pos = pick_positivity(g.double_locus_lattice());
        if (!pos) {
            plan_err = "no positivity tests known for lattice '" + g.double_locus_lattice()->id() + "'";
            return;
        }
        try {
            plan = plan_blowups(g, *g.planned_seed(), *pos);
            after = execute_plan(g, 1, *plan);
        } catch (const LatticeError& e) {
            plan_err = e.what();
        }
    };

    for (const ConfigCheck& c : parse_checks(doc)) {
        const std::string expected = c.expected.is_string() ? c.expected.get<std::string>() : c.expected.dump();
        try {
            if (c.name == "obstruction_class") {
                rep.add(c.name, "snc-gluing.obstruction_class",
                        coords_str(DivisorClass(g.double_locus_lattice(), parse_coords(c.expected))),
                        coords_str(obstruction_class(g)), c.provenance);
            } else if (c.name == "cy_valid") {
                rep.add(c.name, "snc-gluing.cy_valid", expected, bool_str(g.cy_valid()), c.provenance);
            } else if (c.name == "dsemistable") {
                rep.add(c.name, "snc-gluing.is_dsemistable", expected, bool_str(is_dsemistable(g)),
                        c.provenance);
            } else if (c.name == "restriction_rank") {
                rep.add(c.name, "lattice-core.span_rank_snf", expected,
                        std::to_string(span_rank_snf(g.all_restriction_classes()).rank), c.provenance);
            } else if (c.name == "plan_length") {
                ensure_plan();
                rep.add(c.name, "snc-gluing.plan_blowups", expected,
                        plan ? std::to_string(plan->size()) : plan_err, c.provenance);
            } else if (c.name == "plan_remainder") {
                ensure_plan();
                rep.add(c.name, "snc-gluing.plan_blowups",
                        coords_str(DivisorClass(g.double_locus_lattice(), parse_coords(c.expected))),
                        plan && !plan->empty() ? coords_str(plan->back()) : plan_err, c.provenance);
            } else if (c.name == "dsemistable_after_plan") {
                ensure_plan();
                rep.add(c.name, "snc-gluing.is_dsemistable", expected,
                        after ? bool_str(is_dsemistable(*after)) : plan_err, c.provenance);
            } else if (c.name == "restriction_rank_after_plan") {
                ensure_plan();
                rep.add(c.name, "lattice-core.span_rank_snf", expected,
                        after ? std::to_string(span_rank_snf(after->all_restriction_classes()).rank) : plan_err,
                        c.provenance);
            } else if (c.name == "mv_b2_after_plan" || c.name == "smoothing_b2_after_plan") {
                ensure_plan();
                if (!after) {
                    rep.add(c.name, "topology-invariants.mv_b2", expected, plan_err, c.provenance);
                } else {
                    const BettiHypotheses& bh = after->betti_hypotheses();
                    long rank = static_cast<long>(span_rank_snf(after->all_restriction_classes()).rank);
                    long mv = mv_b2(after->comp1().b2, after->comp2().b2, rank, bh.left_injective);
                    if (c.name == "mv_b2_after_plan") {
                        rep.add(c.name, "topology-invariants.mv_b2", expected, std::to_string(mv),
                                c.provenance);
                    } else {
                        long sm = smoothing_b2(mv, bh.components_of_double_locus, bh.rank_h1_to_h0);
                        rep.add(c.name, "topology-invariants.smoothing_b2", expected, std::to_string(sm),
                                c.provenance);
                    }
                }
            } else if (c.name == "claim43_infeasible_both_variants") {
                long a = c.extra.at("a").get<long>();
                bool derived = !feasible(build_claim43_system(a, GammaVariant::Derived)).feasible;
                bool printed = !feasible(build_claim43_system(a, GammaVariant::PaperPrinted)).feasible;
                rep.add(c.name, "algdim-feasibility.feasible", expected, bool_str(derived && printed),
                        c.provenance);
            } else {
                rep.add(c.name, "cli-report.run", expected, "unknown check name", c.provenance);
            }
        } catch (const std::exception& e) {
            rep.add(c.name, "cli-report.run", expected, std::string("error: ") + e.what(), c.provenance);
        }
    }
    if (!g.cy_valid())
        rep.notes.push_back("config is not CY-valid (connectedness or anticanonical flag is false); "
                            "obstruction values are still reported");
    return rep;
}

// Standard check list attached to emitted built-in configs.
inline json standard_checks_42(long a) {
    const Int A(a);
    const Int g2 = 9 * (A - 1) * (A - 1);
    json checks = json::array();
    checks.push_back({{"name", "obstruction_class"},
                      {"expected", json_coords({g2, g2, 18 * A})},
                      {"provenance", "PAPER"}});
    checks.push_back({{"name", "dsemistable"}, {"expected", "false"}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "restriction_rank"}, {"expected", "3"}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "plan_length"}, {"expected", std::to_string(a + 1)}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "plan_remainder"},
                      {"expected", json_coords({g2, g2, 17 * A})},
                      {"provenance", "PAPER"}});
    checks.push_back({{"name", "dsemistable_after_plan"}, {"expected", "true"}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "mv_b2_after_plan"}, {"expected", std::to_string(a + 2)}, {"provenance", "PAPER"}});
    checks.push_back(
        {{"name", "smoothing_b2_after_plan"}, {"expected", std::to_string(a + 1)}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "claim43_infeasible_both_variants"},
                      {"a", a},
                      {"expected", "true"},
                      {"provenance", "PAPER"}});
    return checks;
}

inline json standard_checks_section3(long m, WordOrder order) {
    const IntMat w = phi_m_pullback(m, order);
    const DivisorClass remainder = (hyperplane_res() + apply_isometry(w, hyperplane_res())) * 3 +
                                   fiber_res() * Int(2 - m);
    json checks = json::array();
    DivisorClass obstruction = remainder + fiber_res() * Int(m);
    checks.push_back({{"name", "obstruction_class"},
                      {"expected", json_coords(obstruction.coords())},
                      {"provenance", "PAPER"}});
    checks.push_back({{"name", "dsemistable"}, {"expected", "false"}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "plan_length"}, {"expected", std::to_string(m + 1)}, {"provenance", "PAPER"}});
    checks.push_back({{"name", "plan_remainder"},
                      {"expected", json_coords(remainder.coords())},
                      {"provenance", "PAPER"}});
    checks.push_back({{"name", "dsemistable_after_plan"}, {"expected", "true"}, {"provenance", "PAPER"}});
    return checks;
}

} // namespace cylattice
