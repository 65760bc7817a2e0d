#pragma once

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcurv/errors.hpp"

namespace mtcurv {

/// Result of checking one identity on one chart. `max_error` is the largest
/// deviation over all samples, scaled by 1/(1 + magnitude) unless the
/// identity is defined with an absolute tolerance. Diagnostic records carry
/// expected mismatches (the sign-resolution probe) and never affect the
/// overall verdict.
struct IdentityRecord {
    std::string identity;
    std::string chart;
    std::uint64_t samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool diagnostic = false;
    std::string note;

    friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;
};

/// How the Lame factorization sign was resolved: the library applies the
/// factorized operator as -(alpha D Dr + beta D^2); the record keeps the
/// residual of that form next to the residual of the un-negated form so the
/// resolution is visible in every report.
struct LameSignRecord {
    std::string resolved_form;
    double resolved_max_error = 0.0;
    double displayed_form_max_error = 0.0;

    friend bool operator==(const LameSignRecord&, const LameSignRecord&) = default;
};

struct VerificationReport {
    int schema_version = 1;
    std::string suite;
    std::vector<std::string> charts;
    std::uint64_t seed = 0;
    int count = 0;
    std::string derivative_mode = "symbolic";
    double fd_step = 1e-4;
    std::string fd_scheme = "central2";
    std::string timestamp;
    std::optional<LameSignRecord> lame_sign;
    std::vector<IdentityRecord> records;

    /// Overall verdict: every non-diagnostic record within tolerance.
    bool pass() const {
        for (const auto& r : records)
            if (!r.diagnostic && !r.pass) return false;
        return true;
    }

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

// Reports are emitted by hand: fixed key order and %.17g numbers make runs
// with identical inputs byte-identical apart from the timestamp line.
inline std::string json_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

} // namespace detail

inline void emit_report(const VerificationReport& r, std::ostream& os) {
    using detail::json_number;
    using detail::json_string;
    os << "{\n";
    os << "  \"schema_version\": " << r.schema_version << ",\n";
    os << "  \"suite\": " << json_string(r.suite) << ",\n";
    os << "  \"charts\": [";
    for (std::size_t i = 0; i < r.charts.size(); ++i)
        os << (i ? ", " : "") << json_string(r.charts[i]);
    os << "],\n";
    os << "  \"seed\": " << r.seed << ",\n";
    os << "  \"count\": " << r.count << ",\n";
    os << "  \"derivative_mode\": " << json_string(r.derivative_mode) << ",\n";
    os << "  \"fd_step\": " << json_number(r.fd_step) << ",\n";
    os << "  \"fd_scheme\": " << json_string(r.fd_scheme) << ",\n";
    os << "  \"timestamp\": " << json_string(r.timestamp) << ",\n";
    os << "  \"pass\": " << (r.pass() ? "true" : "false") << ",\n";
    if (r.lame_sign) {
        os << "  \"lame_sign\": {\n";
        os << "    \"resolved_form\": " << json_string(r.lame_sign->resolved_form) << ",\n";
        os << "    \"resolved_max_error\": " << json_number(r.lame_sign->resolved_max_error)
           << ",\n";
        os << "    \"displayed_form_max_error\": "
           << json_number(r.lame_sign->displayed_form_max_error) << "\n";
        os << "  },\n";
    }
    os << "  \"records\": [";
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const auto& rec = r.records[i];
        os << (i ? "," : "") << "\n    {";
        os << "\"identity\": " << json_string(rec.identity) << ", ";
        os << "\"chart\": " << json_string(rec.chart) << ", ";
        os << "\"samples\": " << rec.samples << ", ";
        os << "\"max_error\": " << json_number(rec.max_error) << ", ";
        os << "\"tolerance\": " << json_number(rec.tolerance) << ", ";
        os << "\"pass\": " << (rec.pass ? "true" : "false") << ", ";
        os << "\"diagnostic\": " << (rec.diagnostic ? "true" : "false") << ", ";
        os << "\"note\": " << json_string(rec.note);
        os << "}";
    }
    os << (r.records.empty() ? "]" : "\n  ]") << "\n";
    os << "}\n";
}

inline std::string report_to_json(const VerificationReport& r) {
    std::ostringstream os;
    emit_report(r, os);
    return os.str();
}

inline void emit_report(const VerificationReport& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    emit_report(r, out);
    out.flush();
    if (!out) throw IoError("failed to write '" + path.string() + "'");
}

inline VerificationReport parse_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid report JSON: ") + e.what());
    }
    VerificationReport r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        r.suite = j.at("suite").get<std::string>();
        for (const auto& c : j.at("charts")) r.charts.push_back(c.get<std::string>());
        r.seed = j.at("seed").get<std::uint64_t>();
        r.count = j.at("count").get<int>();
        r.derivative_mode = j.at("derivative_mode").get<std::string>();
        r.fd_step = j.at("fd_step").get<double>();
        r.fd_scheme = j.at("fd_scheme").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        if (j.contains("lame_sign")) {
            LameSignRecord ls;
            ls.resolved_form = j["lame_sign"].at("resolved_form").get<std::string>();
            ls.resolved_max_error = j["lame_sign"].at("resolved_max_error").get<double>();
            ls.displayed_form_max_error =
                j["lame_sign"].at("displayed_form_max_error").get<double>();
            r.lame_sign = ls;
        }
        for (const auto& jr : j.at("records")) {
            IdentityRecord rec;
            rec.identity = jr.at("identity").get<std::string>();
            rec.chart = jr.at("chart").get<std::string>();
            rec.samples = jr.at("samples").get<std::uint64_t>();
            rec.max_error = jr.at("max_error").get<double>();
            rec.tolerance = jr.at("tolerance").get<double>();
            rec.pass = jr.at("pass").get<bool>();
            rec.diagnostic = jr.at("diagnostic").get<bool>();
            rec.note = jr.at("note").get<std::string>();
            r.records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("report does not match the schema: ") + e.what());
    }
    return r;
}

} // namespace mtcurv
