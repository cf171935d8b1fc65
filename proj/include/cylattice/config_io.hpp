#pragma once

#include "cylattice/gluing.hpp"
#include "cylattice/report.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace cylattice {

inline constexpr const char* kConfigSchema = "cylattice-config-v1";

inline json json_matrix(const IntMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_int(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMat parse_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix (array of rows)");
    IntMat m(j.size(), j.front().size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != m.cols())
            throw std::invalid_argument("matrix rows must have equal length");
        for (std::size_t k = 0; k < m.cols(); ++k) m.at(i, k) = parse_int(row.at(k));
    }
    return m;
}

inline json lattice_to_json(const Lattice& lat) {
    return {{"basis", lat->basis_labels()}, {"gram", json_matrix(lat->gram())}};
}

inline json component_to_json(const ComponentData& c) {
    json restrictions = json::array();
    for (const DivisorClass& d : c.restriction_classes) restrictions.push_back(json_coords(d.coords()));
    return {{"name", c.name},
            {"b1", c.b1},
            {"b2", c.b2},
            {"restriction_classes", restrictions},
            {"betti_from_paper", c.betti_from_paper}};
}

inline ComponentData parse_component(const json& j, const Lattice& lat) {
    ComponentData c;
    c.name = j.at("name").get<std::string>();
    c.b1 = j.at("b1").get<long>();
    c.b2 = j.at("b2").get<long>();
    for (const json& r : j.at("restriction_classes")) c.restriction_classes.emplace_back(lat, parse_coords(r));
    c.betti_from_paper = j.value("betti_from_paper", false);
    return c;
}

inline json config_to_json(const GluingConfig& g) {
    json blowups = json::array();
    for (const BlowupRecord& b : g.blowup_log())
        blowups.push_back({{"side", b.side}, {"center", json_coords(b.center.coords())}});
    json gluing = {{"double_locus_lattice", g.double_locus_lattice()->id()},
                   {"comp1", component_to_json(g.comp1())},
                   {"comp2", component_to_json(g.comp2())},
                   {"normal1", json_coords(g.normal1().coords())},
                   {"normal2", json_coords(g.normal2().coords())},
                   {"identification", json_matrix(g.identification())},
                   {"double_locus_connected", g.double_locus_connected()},
                   {"anticanonical_ok", g.anticanonical_ok()},
                   {"blowup_log", blowups},
                   {"effectivity", to_cstr(g.effectivity_rule())},
                   {"betti_hypotheses",
                    {{"left_injective", g.betti_hypotheses().left_injective},
                     {"components_of_double_locus", g.betti_hypotheses().components_of_double_locus},
                     {"rank_h1_to_h0", g.betti_hypotheses().rank_h1_to_h0}}}};
    if (g.reference_ample()) gluing["reference_ample"] = json_coords(g.reference_ample()->coords());
    if (g.planned_seed())
        gluing["plan"] = {{"seed", json_coords(g.planned_seed()->coords())}, {"count", g.planned_seed_count()}};
    if (!g.note().empty()) gluing["note"] = g.note();
    return {{"schema", kConfigSchema},
            {"lattices", {{g.double_locus_lattice()->id(), lattice_to_json(g.double_locus_lattice())}}},
            {"gluing", gluing}};
}

inline GluingConfig parse_config(const json& doc) {
    if (doc.value("schema", "") != kConfigSchema)
        throw std::invalid_argument("config: missing or unsupported schema field (expected " +
                                    std::string(kConfigSchema) + ")");
    const json& lattices = doc.at("lattices");
    const json& gl = doc.at("gluing");
    const std::string lat_id = gl.at("double_locus_lattice").get<std::string>();
    if (!lattices.contains(lat_id))
        throw std::invalid_argument("config: gluing references unknown lattice '" + lat_id + "'");
    const json& latj = lattices.at(lat_id);
    Lattice lat = make_lattice(lat_id, latj.at("basis").get<std::vector<std::string>>(),
                               parse_matrix(latj.at("gram")));

    GluingConfig g(parse_component(gl.at("comp1"), lat), parse_component(gl.at("comp2"), lat), lat,
                   DivisorClass(lat, parse_coords(gl.at("normal1"))),
                   DivisorClass(lat, parse_coords(gl.at("normal2"))), parse_matrix(gl.at("identification")),
                   gl.at("double_locus_connected").get<bool>(), gl.at("anticanonical_ok").get<bool>());

    const std::string eff = gl.value("effectivity", "none");
    if (eff == "abelian-square") g.set_effectivity(EffectivityRule::AbelianSquare);
    else if (eff == "none") g.set_effectivity(EffectivityRule::None);
    else throw std::invalid_argument("config: unknown effectivity rule '" + eff + "'");

    if (gl.contains("reference_ample"))
        g.set_reference_ample(DivisorClass(lat, parse_coords(gl.at("reference_ample"))));
    if (gl.contains("plan"))
        g.set_plan_hint(DivisorClass(lat, parse_coords(gl.at("plan").at("seed"))),
                        gl.at("plan").at("count").get<long>());
    if (gl.contains("betti_hypotheses")) {
        const json& bh = gl.at("betti_hypotheses");
        g.set_betti_hypotheses({bh.value("left_injective", true), bh.value("components_of_double_locus", 1L),
                                bh.value("rank_h1_to_h0", 0L)});
    }
    if (gl.contains("note")) g.set_note(gl.at("note").get<std::string>());
    if (gl.contains("blowup_log")) {
        std::vector<BlowupRecord> log;
        for (const json& b : gl.at("blowup_log"))
            log.push_back({b.at("side").get<int>(), DivisorClass(lat, parse_coords(b.at("center")))});
        g.set_blowup_log(std::move(log));
    }
    return g;
}

struct ConfigCheck {
    std::string name;
    json expected;
    std::string provenance = "DERIVED";
    json extra; // the full check object, for checks with parameters
};

inline std::vector<ConfigCheck> parse_checks(const json& doc) {
    std::vector<ConfigCheck> out;
    if (!doc.contains("checks")) return out;
    for (const json& c : doc.at("checks")) {
        ConfigCheck cc;
        cc.name = c.at("name").get<std::string>();
        cc.expected = c.at("expected");
        cc.provenance = c.value("provenance", "DERIVED");
        cc.extra = c;
        out.push_back(std::move(cc));
    }
    return out;
}

} // namespace cylattice
