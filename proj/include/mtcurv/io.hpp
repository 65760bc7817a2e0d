#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcurv/chart.hpp"
#include "mtcurv/errors.hpp"
#include "mtcurv/field.hpp"
#include "mtcurv/parse.hpp"

namespace mtcurv {

/// Inline field component sources (expression strings); missing components
/// default to zero.
struct FieldSpec {
    std::string f0_re = "0", f0_im = "0";
    std::string f1_re = "0", f1_im = "0";
    std::string f2_re = "0", f2_im = "0";
    std::string f3_re = "0", f3_im = "0";
};

/// Parsed contents of a chart/field definition file.
struct DefinitionFile {
    std::optional<ChartPtr> chart;
    std::optional<FieldSpec> field;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (k == it.key()) { ok = true; break; }
        if (!ok) throw SchemaError("unknown key '" + it.key() + "' in " + where);
    }
}

inline std::string require_string(const nlohmann::json& obj, const std::string& key,
                                  const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw SchemaError("missing or non-string '" + key + "' in " + where);
    return obj[key].get<std::string>();
}

inline ChartPtr chart_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("'chart' must be an object");
    reject_unknown_keys(j, {"name", "coords", "maps", "metric", "domain", "region"}, "chart");
    Chart::Definition def;
    def.name = require_string(j, "name", "chart");
    if (!j.contains("coords") || !j["coords"].is_array() || j["coords"].size() != 3)
        throw SchemaError("'chart.coords' must be an array of three names");
    for (int i = 0; i < 3; ++i) {
        if (!j["coords"][static_cast<std::size_t>(i)].is_string())
            throw SchemaError("'chart.coords' entries must be strings");
        def.coords[static_cast<std::size_t>(i)] =
            j["coords"][static_cast<std::size_t>(i)].get<std::string>();
    }
    if (!j.contains("maps") || !j["maps"].is_object())
        throw SchemaError("'chart.maps' must be an object with keys x, y, z");
    reject_unknown_keys(j["maps"], {"x", "y", "z"}, "chart.maps");
    def.maps = {parse(require_string(j["maps"], "x", "chart.maps")),
                parse(require_string(j["maps"], "y", "chart.maps")),
                parse(require_string(j["maps"], "z", "chart.maps"))};
    if (j.contains("metric")) {
        if (!j["metric"].is_array() || j["metric"].size() != 3)
            throw SchemaError("'chart.metric' must be an array of three expressions");
        std::array<Expr, 3> h;
        for (int i = 0; i < 3; ++i) {
            if (!j["metric"][static_cast<std::size_t>(i)].is_string())
                throw SchemaError("'chart.metric' entries must be strings");
            h[static_cast<std::size_t>(i)] =
                parse(j["metric"][static_cast<std::size_t>(i)].get<std::string>());
        }
        def.metric = h;
    }
    if (j.contains("domain")) {
        if (!j["domain"].is_array()) throw SchemaError("'chart.domain' must be an array");
        for (const auto& d : j["domain"]) {
            if (!d.is_string()) throw SchemaError("'chart.domain' entries must be strings");
            def.domain.push_back(parse(d.get<std::string>()));
        }
    }
    if (j.contains("region")) {
        if (!j["region"].is_array() || j["region"].size() != 3)
            throw SchemaError("'chart.region' must be an array of three [lo, hi] pairs");
        Region reg{};
        for (int i = 0; i < 3; ++i) {
            const auto& pair = j["region"][static_cast<std::size_t>(i)];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
                throw SchemaError("'chart.region' entries must be [lo, hi] number pairs");
            reg[static_cast<std::size_t>(i)] = {pair[0].get<double>(), pair[1].get<double>()};
            if (!(reg[static_cast<std::size_t>(i)][0] < reg[static_cast<std::size_t>(i)][1]))
                throw SchemaError("'chart.region' intervals must satisfy lo < hi");
        }
        def.region = reg;
    }
    return std::make_shared<Chart>(std::move(def));
}

inline FieldSpec field_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("'field' must be an object");
    const std::vector<std::string> keys = {"f0_re", "f0_im", "f1_re", "f1_im",
                                           "f2_re", "f2_im", "f3_re", "f3_im"};
    reject_unknown_keys(j, keys, "field");
    FieldSpec spec;
    const auto get = [&](const char* key, std::string& slot) {
        if (j.contains(key)) {
            if (!j[key].is_string()) throw SchemaError(std::string("'field.") + key + "' must be a string");
            slot = j[key].get<std::string>();
        }
    };
    get("f0_re", spec.f0_re);
    get("f0_im", spec.f0_im);
    get("f1_re", spec.f1_re);
    get("f1_im", spec.f1_im);
    get("f2_re", spec.f2_re);
    get("f2_im", spec.f2_im);
    get("f3_re", spec.f3_re);
    get("f3_im", spec.f3_im);
    return spec;
}

} // namespace detail

/// Loads a definition document: {"chart": {...}} and/or {"field": {...}}.
/// Unknown keys are rejected at every level.
inline DefinitionFile parse_definition(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("definition document must be a JSON object");
    detail::reject_unknown_keys(j, {"chart", "field"}, "definition document");
    DefinitionFile out;
    if (j.contains("chart")) out.chart = detail::chart_from_json(j["chart"]);
    if (j.contains("field")) out.field = detail::field_from_json(j["field"]);
    if (!out.chart && !out.field)
        throw SchemaError("definition document needs a 'chart' or 'field' section");
    return out;
}

inline DefinitionFile load_definition_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_definition(buf.str());
}

/// Builds a field over `chart` from inline component expression strings.
inline QuatField make_field(ChartPtr chart, const FieldSpec& spec) {
    const auto comp = [](const std::string& re, const std::string& im) {
        return ComplexExpr(parse(re), parse(im));
    };
    ComplexExpr f0 = comp(spec.f0_re, spec.f0_im);
    std::array<ComplexExpr, 3> fv = {comp(spec.f1_re, spec.f1_im), comp(spec.f2_re, spec.f2_im),
                                     comp(spec.f3_re, spec.f3_im)};
    return QuatField(std::move(chart), std::move(f0), std::move(fv));
}

} // namespace mtcurv
