#pragma once

#include "qfock/canonical.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qfock {

using Json = nlohmann::ordered_json;

/// {"exp": coeff, ...} with exponents as decimal strings; big coefficients
/// fall back to decimal strings.
inline Json to_json(const LaurentPoly& p) {
    Json out = Json::object();
    for (const auto& [e, c] : p.terms()) {
        static const BigInt kMax = BigInt(1) << 62;
        if (c > -kMax && c < kMax)
            out[std::to_string(e)] = static_cast<long long>(c);
        else
            out[std::to_string(e)] = c.str();
    }
    return out;
}

inline LaurentPoly laurent_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("laurent_from_json: expected an object");
    LaurentPoly p;
    for (const auto& [key, val] : j.items()) {
        const long long exp = std::stoll(key);
        BigInt c;
        if (val.is_number_integer()) c = val.get<long long>();
        else if (val.is_string()) c = BigInt(val.get<std::string>());
        else throw std::invalid_argument("laurent_from_json: bad coefficient");
        p += LaurentPoly::monomial(c, exp);
    }
    return p;
}

/// Nested integer arrays, e.g. [[2,1],[]] for ((2,1), -).
inline Json to_json(const Multipartition& mp) {
    Json out = Json::array();
    for (const auto& comp : mp.components()) out.push_back(comp.parts());
    return out;
}

inline Multipartition multipartition_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("multipartition_from_json: expected a non-empty array");
    std::vector<Partition> comps;
    for (const auto& comp : j) comps.emplace_back(comp.get<std::vector<int>>());
    return Multipartition(std::move(comps));
}

/// [{"la": ..., "coeff": ...}, ...] in the canonical support order.
inline Json to_json(const FockVector& v) {
    Json out = Json::array();
    for (const auto& [la, c] : v.terms()) {
        Json term = Json::object();
        term["la"] = to_json(la);
        term["coeff"] = to_json(c);
        out.push_back(std::move(term));
    }
    return out;
}

inline FockVector fock_vector_from_json(const Json& j, const FockContext& ctx) {
    FockVector v(ctx);
    for (const auto& term : j)
        v.add_term(multipartition_from_json(term.at("la")), laurent_from_json(term.at("coeff")));
    return v;
}

inline Json to_json(const CanonicalBasisEntry& entry) {
    Json out = Json::object();
    out["mu"] = to_json(entry.label);
    out["vector"] = to_json(entry.vector);
    return out;
}

/// Full run report: {"e": ..., "charge": [...], "entries": [...]}.
inline Json report_json(const std::string& e_label, const std::vector<long long>& charge,
                        const std::vector<CanonicalBasisEntry>& entries) {
    Json out = Json::object();
    if (e_label == "inf") out["e"] = "inf";
    else out["e"] = std::stoll(e_label);
    out["charge"] = charge;
    out["entries"] = Json::array();
    for (const auto& entry : entries) out["entries"].push_back(to_json(entry));
    return out;
}

/// Paper-style text: one support line per term, e.g. "|((2,1),(1))> : 1".
inline std::string format_vector_text(const FockVector& v) {
    std::string out;
    for (const auto& [la, c] : v.terms())
        out += "|" + display_multipartition(la) + "> : " + c.to_string() + "\n";
    if (v.is_zero()) out = "0\n";
    return out;
}

inline std::string format_entry_text(const CanonicalBasisEntry& entry) {
    return "G(" + display_multipartition(entry.label) + "):\n" + format_vector_text(entry.vector);
}

inline Json to_json(const DecompositionMatrix& m) {
    Json out = Json::object();
    out["rows"] = Json::array();
    for (const auto& la : m.rows) out["rows"].push_back(to_json(la));
    out["cols"] = Json::array();
    for (const auto& mu : m.cols) out["cols"].push_back(to_json(mu));
    out["cells"] = Json::array();
    for (const auto& row : m.cells) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        out["cells"].push_back(std::move(r));
    }
    return out;
}

inline std::string format_matrix_text(const DecompositionMatrix& m) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{""};
    for (const auto& mu : m.cols) header.push_back(display_multipartition(mu));
    grid.push_back(std::move(header));
    for (size_t i = 0; i < m.rows.size(); ++i) {
        std::vector<std::string> row{display_multipartition(m.rows[i])};
        for (size_t j = 0; j < m.cols.size(); ++j) {
            const LaurentPoly& c = m.cells[i][j];
            row.push_back(c.is_zero() ? "." : c.to_string());
        }
        grid.push_back(std::move(row));
    }
    std::vector<size_t> widths(grid[0].size(), 0);
    for (const auto& row : grid)
        for (size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], row[j].size());
    std::string out;
    for (const auto& row : grid) {
        for (size_t j = 0; j < row.size(); ++j) {
            out += row[j];
            if (j + 1 < row.size()) out += std::string(widths[j] - row[j].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

}  // namespace qfock
