// mtcurv command-line front end: evaluate the operators on user fields and
// run the verification suites.
//
//   mtcurv charts [--name NAME]
//   mtcurv eval --chart <name|file> [field flags] --op OP --point a,b,c ...
//   mtcurv verify [--charts LIST] [--seed N] [--count N] [--mode M] ...
//
// Exit codes: 0 success, 1 evaluation/verification failure (out-of-domain
// point, failed identity), 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtcurv/mtcurv.hpp"

namespace {

using namespace mtcurv;

#ifndef MTCURV_DATA_DIR
#define MTCURV_DATA_DIR "data"
#endif

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string complex_json(const Complex& c) {
    return std::string("{\"re\": ") + fmt17(c.real()) + ", \"im\": " + fmt17(c.imag()) + "}";
}

std::string quaternion_json(const Coords& p, const std::string& op, const Quaternion& q) {
    std::string out = "{\"point\": [";
    for (int i = 0; i < 3; ++i) out += std::string(i ? ", " : "") + fmt17(p[static_cast<std::size_t>(i)]);
    out += "], \"op\": \"" + op + "\", \"scalar\": " + complex_json(q.scalar_part());
    out += ", \"vector\": [";
    for (int i = 0; i < 3; ++i)
        out += std::string(i ? ", " : "") + complex_json(q.vector_part()[static_cast<std::size_t>(i)]);
    out += "]}";
    return out;
}

Coords parse_point(const std::string& text) {
    Coords p{};
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) throw SchemaError("point '" + text + "' must have exactly three coordinates");
        std::size_t used = 0;
        p[static_cast<std::size_t>(i)] = std::stod(part, &used);
        if (used != part.size())
            throw SchemaError("bad coordinate '" + part + "' in point '" + text + "'");
        ++i;
    }
    if (i != 3) throw SchemaError("point '" + text + "' must have exactly three coordinates");
    return p;
}

/// Chart argument: a built-in name or a definition-file path.
ChartPtr resolve_chart(const std::string& arg) {
    for (const auto& name : builtin_chart_names())
        if (name == arg) return builtin_chart(arg);
    if (!std::filesystem::exists(arg))
        throw UnknownChartError("'" + arg + "' is neither a built-in chart nor a definition file");
    const DefinitionFile def = load_definition_file(arg);
    if (!def.chart) throw SchemaError("definition file '" + arg + "' has no 'chart' section");
    return *def.chart;
}

/// User charts must prove orthogonality on the caller-supplied samples before
/// the operators run on them.
void gate_user_chart(const ChartPtr& chart, const std::vector<Coords>& samples) {
    for (const auto& name : builtin_chart_names())
        if (chart->name() == name) return;
    const OrthogonalityReport rep = chart->check_orthogonality(samples);
    if (!rep.pass) {
        std::ostringstream msg;
        msg << "chart '" << chart->name() << "' failed the orthogonality check (max |u_i.u_j| = "
            << rep.max_offdiag << ", min h = " << rep.min_h << ")";
        throw SchemaError(msg.str());
    }
}

OpKind op_from_name(const std::string& name) {
    if (name == "grad") return OpKind::grad;
    if (name == "div") return OpKind::div;
    if (name == "curl") return OpKind::curl;
    if (name == "mt") return OpKind::mt;
    if (name == "mtr") return OpKind::mtr;
    if (name == "lap0") return OpKind::laplace_scalar;
    if (name == "lapv") return OpKind::laplace_vector;
    if (name == "laph") return OpKind::laplace_quat;
    if (name == "bitsv") return OpKind::bitsadze_vector;
    if (name == "bitsh") return OpKind::bitsadze_quat;
    if (name == "lame") return OpKind::lame_direct;
    throw SchemaError("unknown operator '" + name + "'");
}

struct EvalArgs {
    std::string chart;
    std::string field_file;
    FieldSpec inline_field;
    bool any_inline = false;
    std::string op;
    std::vector<std::string> points;
    std::string mode = "symbolic";
    double step = 1e-4;
    std::string scheme = "central2";
    double mu = 1.0;
    double lambda = 0.0;
    bool lame_given = false;
};

OperatorConfig make_config(const std::string& mode, double step, const std::string& scheme) {
    OperatorConfig cfg;
    if (mode == "symbolic") cfg.mode = DerivativeMode::symbolic;
    else if (mode == "fd") cfg.mode = DerivativeMode::finite_difference;
    else throw SchemaError("unknown mode '" + mode + "' (expected symbolic or fd)");
    cfg.fd_step = step;
    if (scheme == "central2") cfg.fd_scheme = FdScheme::central2;
    else if (scheme == "central4") cfg.fd_scheme = FdScheme::central4;
    else if (scheme == "richardson") cfg.fd_scheme = FdScheme::richardson;
    else throw SchemaError("unknown scheme '" + scheme + "'");
    cfg.validate();
    return cfg;
}

int run_eval(const EvalArgs& args) {
    const ChartPtr chart = resolve_chart(args.chart);

    FieldSpec spec;
    if (!args.field_file.empty()) {
        if (args.any_inline)
            throw SchemaError("--field and inline component flags are mutually exclusive");
        const DefinitionFile def = load_definition_file(args.field_file);
        if (!def.field) throw SchemaError("'" + args.field_file + "' has no 'field' section");
        spec = *def.field;
    } else {
        spec = args.inline_field;
    }
    const QuatField field = make_field(chart, spec);

    std::vector<Coords> points;
    for (const auto& text : args.points) points.push_back(parse_point(text));
    if (points.empty()) throw SchemaError("eval requires at least one --point");
    gate_user_chart(chart, points);

    const OperatorConfig cfg = make_config(args.mode, args.step, args.scheme);
    const OpKind op = op_from_name(args.op);
    std::optional<LameParams> lame;
    if (op == OpKind::lame_direct) lame = LameParams(args.mu, args.lambda);

    for (const Coords& p : points) {
        try {
            const Quaternion q = apply_at(op, field, p, cfg, lame);
            std::cout << quaternion_json(p, args.op, q) << "\n";
        } catch (const OutOfDomainError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}

struct VerifyArgs {
    std::vector<std::string> charts = {"cartesian", "spherical", "cylindrical"};
    std::uint64_t seed = 42;
    int count = 50;
    int points_per_field = 3;
    std::string mode = "symbolic";
    double step = 1e-4;
    std::string scheme = "central2";
    std::optional<double> tolerance;
    std::string out_path;
    std::string golden_path = std::string(MTCURV_DATA_DIR) + "/golden_forms.json";
};

int run_verify(const VerifyArgs& args) {
    SuiteConfig cfg;
    cfg.op = make_config(args.mode, args.step, args.scheme);
    cfg.tolerance_override = args.tolerance;

    std::vector<ChartPtr> charts;
    for (const auto& name : args.charts) {
        ChartPtr chart = resolve_chart(name);
        charts.push_back(chart);
    }
    // Gate user charts on the corpus sampling region.
    for (const ChartPtr& chart : charts) {
        Rng rng(args.seed);
        std::vector<Coords> samples;
        const Region region = chart->region();
        for (int i = 0; i < 64; ++i) samples.push_back(detail::random_point(rng, region));
        gate_user_chart(chart, samples);
    }

    const VerificationReport report = run_verification(charts, args.seed, args.count, cfg,
                                                       args.golden_path, args.points_per_field);
    if (args.out_path.empty()) {
        emit_report(report, std::cout);
    } else {
        emit_report(report, std::filesystem::path(args.out_path));
    }
    return report.pass() ? 0 : 1;
}

int run_charts(const std::optional<std::string>& name) {
    const auto describe = [](const std::string& chart_name) {
        const ChartPtr c = builtin_chart(chart_name);
        std::cout << c->name() << "\n";
        std::cout << "  coordinates: " << c->coord_names()[0] << ", " << c->coord_names()[1]
                  << ", " << c->coord_names()[2] << "\n";
        std::cout << "  maps: x = " << c->map_expr(0).str() << ", y = " << c->map_expr(1).str()
                  << ", z = " << c->map_expr(2).str() << "\n";
        std::cout << "  metric: " << c->metric_expr(0).str() << ", " << c->metric_expr(1).str()
                  << ", " << c->metric_expr(2).str() << "\n";
        if (c->domain_exprs().empty()) {
            std::cout << "  domain: all of R^3\n";
        } else {
            std::cout << "  domain:";
            for (const auto& d : c->domain_exprs()) std::cout << " " << d.str() << " > 0";
            std::cout << "\n";
        }
    };
    if (name) {
        describe(*name);   // throws UnknownChartError for unknown names
    } else {
        for (const auto& n : builtin_chart_names()) describe(n);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moisil-Theodoresco and second-order operators in orthogonal curvilinear "
                 "coordinates"};
    app.require_subcommand(1);

    auto* charts_cmd = app.add_subcommand("charts", "List built-in charts");
    std::string charts_name;
    charts_cmd->add_option("--name", charts_name, "Describe a single chart");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an operator on a field at points");
    EvalArgs eval_args;
    eval_cmd->add_option("--chart", eval_args.chart, "Built-in chart name or definition file")
        ->required();
    eval_cmd->add_option("--field", eval_args.field_file, "Field definition file");
    auto add_comp = [&](const char* flag, std::string& slot) {
        eval_cmd->add_option_function<std::string>(
            flag,
            [&slot, &eval_args](const std::string& v) {
                slot = v;
                eval_args.any_inline = true;
            },
            "Inline component expression");
    };
    add_comp("--f0", eval_args.inline_field.f0_re);
    add_comp("--f0i", eval_args.inline_field.f0_im);
    add_comp("--f1", eval_args.inline_field.f1_re);
    add_comp("--f1i", eval_args.inline_field.f1_im);
    add_comp("--f2", eval_args.inline_field.f2_re);
    add_comp("--f2i", eval_args.inline_field.f2_im);
    add_comp("--f3", eval_args.inline_field.f3_re);
    add_comp("--f3i", eval_args.inline_field.f3_im);
    eval_cmd->add_option("--op", eval_args.op,
                         "Operator: grad div curl mt mtr lap0 lapv laph bitsv bitsh lame")
        ->required();
    eval_cmd->add_option("--point", eval_args.points, "Point as q1,q2,q3 (repeatable)")
        ->required();
    eval_cmd->add_option("--mode", eval_args.mode, "Derivative mode: symbolic | fd");
    eval_cmd->add_option("--step", eval_args.step, "Finite-difference step");
    eval_cmd->add_option("--scheme", eval_args.scheme, "FD scheme: central2 | central4 | richardson");
    eval_cmd->add_option("--mu", eval_args.mu, "Lame shear modulus (op lame)");
    eval_cmd->add_option("--lambda", eval_args.lambda, "Lame first parameter (op lame)");

    auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
    VerifyArgs verify_args;
    verify_cmd->add_option("--charts", verify_args.charts,
                           "Comma-separated chart names and/or definition files")
        ->delimiter(',');
    verify_cmd->add_option("--seed", verify_args.seed, "Corpus seed");
    verify_cmd->add_option("--count", verify_args.count, "Fields per chart");
    verify_cmd->add_option("--points-per-field", verify_args.points_per_field,
                           "Sample points per field");
    verify_cmd->add_option("--mode", verify_args.mode, "Derivative mode: symbolic | fd");
    verify_cmd->add_option("--step", verify_args.step, "Finite-difference step");
    verify_cmd->add_option("--scheme", verify_args.scheme,
                           "FD scheme: central2 | central4 | richardson");
    double tol_value = 0.0;
    auto* tol_opt = verify_cmd->add_option("--tolerance", tol_value,
                                           "Override every identity tolerance");
    verify_cmd->add_option("--out", verify_args.out_path, "Report output path (default stdout)");
    verify_cmd->add_option("--golden", verify_args.golden_path, "Golden-forms fixture file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (charts_cmd->parsed())
            return run_charts(charts_name.empty() ? std::nullopt
                                                  : std::optional<std::string>(charts_name));
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (verify_cmd->parsed()) {
            if (tol_opt->count() > 0) verify_args.tolerance = tol_value;
            return run_verify(verify_args);
        }
    } catch (const OutOfDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
