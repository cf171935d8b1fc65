#pragma once

#include "cylattice/numeric.hpp"
#include "cylattice/version.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace cylattice {

using json = nlohmann::json;

// Exact integers survive JSON transport: values beyond 53-bit magnitude go
// out as decimal strings so consumers never round them.
inline json json_int(const Int& v) {
    static const Int kLimit = Int(1) << 53;
    if (v > -kLimit && v < kLimit) return json(static_cast<std::int64_t>(v.get_si()));
    return json(v.get_str());
}

inline Int parse_int(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string, got " + j.dump());
}

inline json json_coords(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(json_int(x));
    return out;
}

inline IntVec parse_coords(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a coordinate array, got " + j.dump());
    IntVec out;
    for (const json& x : j) out.push_back(parse_int(x));
    return out;
}

struct CheckRow {
    std::string name;
    std::string operation; // module operation behind the value
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string provenance; // PAPER | TRIVIAL | DERIVED
};

struct VerificationReport {
    std::string tool_version = kVersion;
    std::string timestamp;
    std::string command;
    json inputs = json::object();
    std::vector<CheckRow> results;
    std::vector<std::string> notes;

    bool overall() const {
        for (const CheckRow& r : results)
            if (!r.pass) return false;
        return true;
    }

    CheckRow& add(std::string name, std::string operation, std::string expected, std::string computed,
                  std::string provenance) {
        CheckRow row;
        row.name = std::move(name);
        row.operation = std::move(operation);
        row.pass = expected == computed;
        row.expected = std::move(expected);
        row.computed = std::move(computed);
        row.provenance = std::move(provenance);
        results.push_back(std::move(row));
        return results.back();
    }
};

inline std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

// The payload section is deterministic for fixed inputs and tool version;
// the timestamp stays outside it.
inline json to_json(const VerificationReport& r) {
    json rows = json::array();
    for (const CheckRow& c : r.results)
        rows.push_back({{"check", c.name},
                        {"operation", c.operation},
                        {"expected", c.expected},
                        {"computed", c.computed},
                        {"verdict", c.pass ? "pass" : "fail"},
                        {"provenance", c.provenance}});
    return {{"tool_version", r.tool_version},
            {"timestamp", r.timestamp},
            {"command", r.command},
            {"inputs", r.inputs},
            {"payload",
             {{"results", rows}, {"notes", r.notes}, {"overall", r.overall() ? "pass" : "fail"}}}};
}

inline std::string render_table(const VerificationReport& r) {
    std::size_t w_name = 24, w_val = 28, w_prov = 7;
    for (const CheckRow& c : r.results) {
        w_name = std::max(w_name, c.name.size());
        w_val = std::max({w_val, c.expected.size(), c.computed.size()});
    }
    std::ostringstream os;
    auto cell = [&os](const std::string& s, std::size_t w) { os << std::left << std::setw(int(w) + 2) << s; };
    cell("check", w_name);
    cell("expected", w_val);
    cell("computed", w_val);
    cell("tag", w_prov);
    os << "verdict\n";
    os << std::string(w_name + 2 * w_val + w_prov + 8 + 7, '-') << "\n";
    for (const CheckRow& c : r.results) {
        cell(c.name, w_name);
        cell(c.expected, w_val);
        cell(c.computed, w_val);
        cell(c.provenance, w_prov);
        os << (c.pass ? "pass" : "FAIL (" + c.operation + ")") << "\n";
    }
    for (const std::string& n : r.notes) os << "note: " << n << "\n";
    os << "overall: " << (r.overall() ? "pass" : "fail") << "\n";
    return os.str();
}

} // namespace cylattice
