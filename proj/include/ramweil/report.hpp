#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace ramweil {

struct CheckRow {
    std::string name;
    bool pass = false;
    double lhs = 0.0, rhs = 0.0, tol = 0.0;
};

struct ReportParams {
    int p = 3, k = 1, ell = 1, m = 1;
    std::vector<std::uint64_t> diag;  // canonical ring indices
    std::string type;                 // "type1" or "typedelta"
};

struct ConstituentRow {
    int layer = 0;
    std::uint64_t sLength = 0;
    int phiIndex = -1;
    std::int64_t degree = 0, norm = 0, multiplicity = 0;
};

// The one JSON document this tool emits. Serialization is canonical: keys in
// a fixed sorted order, floats at 12 significant digits, LF line endings, so
// reports diff byte-exact against golden files.
struct Report {
    ReportParams params;
    std::uint64_t groupOrder = 0;
    std::uint64_t orbitsV = 0, orbitsVMinusYV = 0, orbitsVMinusY2V = 0;
    bool ringOnly = false;  // norm-lemma reports carry params + checks only
    std::vector<ConstituentRow> constituents;
    std::vector<CheckRow> checks;

    bool allPass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline void jsonNumber(std::string& out, double v) {
    if (v > -1e-12 && v < 1e-12) v = 0.0;  // snap float noise for stable goldens
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
}

inline void jsonString(std::string& out, const std::string& s) {
    out += '"';
    out += s;  // names are plain identifiers, no escaping needed
    out += '"';
}

}  // namespace detail

inline std::string canonicalJson(const Report& r) {
    std::string o;
    o += "{\n";
    o += "  \"checks\": [";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        o += (i ? ",\n    " : "\n    ");
        o += "{\"lhs\": ";
        detail::jsonNumber(o, c.lhs);
        o += ", \"name\": ";
        detail::jsonString(o, c.name);
        o += ", \"rhs\": ";
        detail::jsonNumber(o, c.rhs);
        o += ", \"status\": ";
        detail::jsonString(o, c.pass ? "pass" : "fail");
        o += ", \"tol\": ";
        detail::jsonNumber(o, c.tol);
        o += "}";
    }
    o += r.checks.empty() ? "],\n" : "\n  ],\n";
    if (!r.ringOnly) {
        o += "  \"constituents\": [";
        for (std::size_t i = 0; i < r.constituents.size(); ++i) {
            const auto& c = r.constituents[i];
            o += (i ? ",\n    " : "\n    ");
            o += "{\"degree\": " + std::to_string(c.degree);
            o += ", \"layer\": " + std::to_string(c.layer);
            o += ", \"multiplicity\": " + std::to_string(c.multiplicity);
            o += ", \"norm\": " + std::to_string(c.norm);
            o += ", \"phi_index\": " + std::to_string(c.phiIndex);
            o += ", \"s_length\": " + std::to_string(c.sLength);
            o += "}";
        }
        o += r.constituents.empty() ? "],\n" : "\n  ],\n";
        o += "  \"group_order\": " + std::to_string(r.groupOrder) + ",\n";
        o += "  \"orbit_counts\": {\"V\": " + std::to_string(r.orbitsV);
        o += ", \"V_minus_y2V\": " + std::to_string(r.orbitsVMinusY2V);
        o += ", \"V_minus_yV\": " + std::to_string(r.orbitsVMinusYV);
        o += "},\n";
    }
    o += "  \"params\": {";
    if (!r.ringOnly) {
        o += "\"diag\": [";
        for (std::size_t i = 0; i < r.params.diag.size(); ++i) {
            if (i) o += ", ";
            o += std::to_string(r.params.diag[i]);
        }
        o += "], ";
    }
    o += "\"ell\": " + std::to_string(r.params.ell);
    o += ", \"k\": " + std::to_string(r.params.k);
    if (!r.ringOnly) o += ", \"m\": " + std::to_string(r.params.m);
    o += ", \"p\": " + std::to_string(r.params.p);
    if (!r.ringOnly) {
        o += ", \"type\": ";
        detail::jsonString(o, r.params.type);
    }
    o += "}\n";
    o += "}\n";
    return o;
}

// Human-readable constituent table for the CLI.
inline std::string constituentTable(const Report& r) {
    std::string o;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-6s %-9s %-5s %-7s %-5s %-5s\n", "layer", "s_length", "phi", "degree",
                  "norm", "mult");
    o += buf;
    std::int64_t total = 0;
    for (const auto& c : r.constituents) {
        std::snprintf(buf, sizeof(buf), "%-6d %-9llu %-5d %-7lld %-5lld %-5lld\n", c.layer,
                      static_cast<unsigned long long>(c.sLength), c.phiIndex,
                      static_cast<long long>(c.degree), static_cast<long long>(c.norm),
                      static_cast<long long>(c.multiplicity));
        o += buf;
        total += c.degree;
    }
    std::snprintf(buf, sizeof(buf), "constituents: %zu, total degree: %lld\n", r.constituents.size(),
                  static_cast<long long>(total));
    o += buf;
    return o;
}

}  // namespace ramweil
