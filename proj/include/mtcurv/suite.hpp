#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtcurv/corpus.hpp"
#include "mtcurv/golden.hpp"
#include "mtcurv/io.hpp"
#include "mtcurv/operators.hpp"
#include "mtcurv/report.hpp"

namespace mtcurv {

/// Registry entry for one identity the suite measures. `absolute` identities
/// accumulate plain componentwise error; the others scale by 1/(1 + max
/// component magnitude), matching how their tolerances are stated.
struct IdentityInfo {
    std::string id;
    double tolerance;
    bool absolute;
    std::string description;
};

/// Every identity the suite runs, in report order. The count is pinned by a
/// registry test so an identity cannot silently drop out of the suite.
inline const std::vector<IdentityInfo>& identity_registry() {
    static const std::vector<IdentityInfo> reg = {
        {"curl_grad_zero", 1e-9, false, "curl(grad f0) = 0"},
        {"div_curl_zero", 1e-9, false, "div(curl fv) = 0"},
        {"factorization_laplace", 1e-9, false, "D(D f) = -(lap0 f0 + lapv fv)"},
        {"factorization_bitsadze", 1e-9, false, "D(Dr f) = -(lap0 f0 + bitsv fv)"},
        {"laplace_scalar_expanded_vs_composed", 1e-9, false, "expanded lap0 = div(grad)"},
        {"laplace_vector_expanded_vs_composed", 1e-9, false,
         "expanded lapv = grad(div) - curl(curl)"},
        {"bitsadze_vector_expanded_vs_composed", 1e-9, false,
         "expanded bitsv = grad(div) + curl(curl)"},
        {"graddiv_via_mt", 1e-9, false, "grad(div fv) = -(1/2)(D D + D Dr) fv"},
        {"graddiv_scalar_part", 1e-10, false, "Sc((1/2)(D D + D Dr) fv) = 0"},
        {"lame_direct_vs_factorized", 1e-8, false,
         "mu lapv + (mu+lambda) grad div = -(alpha D Dr + beta D D)"},
        {"lame_direct_vs_expanded", 1e-8, false, "defining Lame form = expanded Lame form"},
        {"lame_factorized_scalar_part", 1e-10, false, "Sc(factorized Lame) = 0"},
        {"matrix_identity", 1e-10, false, "(div fv, grad f0 + curl fv) = -conj(D f)"},
        {"cartesian_degeneration", 1e-10, false,
         "on the cartesian chart, lapv acts componentwise as lap0"},
        {"spherical_coupling_term", 1e-10, true,
         "on the spherical chart, |lapv(u1)_1 - lap0(1)| = 2/r^2"},
        {"frame_covariance", 1e-8, false,
         "mt of matching cartesian/spherical fields agrees in the Cartesian basis"},
        {"fd_cross_check", 1e-4, true,
         "symbolic and finite-difference modes agree (central2, step 1e-4)"},
    };
    return reg;
}

/// Operator names with golden closed-form tables per chart.
inline const std::vector<std::string>& golden_operator_names() {
    static const std::vector<std::string> ops = {"mt", "laplace_scalar", "laplace_vector",
                                                 "bitsadze_vector"};
    return ops;
}

struct SuiteConfig {
    OperatorConfig op{};
    /// Replaces every identity tolerance (used for relaxed finite-difference
    /// runs). Without it, finite-difference mode floors tolerances at 1e-3.
    std::optional<double> tolerance_override;
};

namespace detail {

inline const IdentityInfo& registry_entry(const std::string& id) {
    for (const auto& e : identity_registry())
        if (e.id == id) return e;
    throw Error("identity '" + id + "' is not registered");
}

inline double effective_tolerance(const IdentityInfo& info, const SuiteConfig& cfg) {
    if (cfg.tolerance_override) return *cfg.tolerance_override;
    if (cfg.op.mode == DerivativeMode::finite_difference) return std::max(info.tolerance, 1e-3);
    return info.tolerance;
}

struct ErrAccum {
    double max_err = 0.0;
    std::uint64_t samples = 0;
    bool absolute = false;

    void add(const Quaternion& a, const Quaternion& b) {
        double mag = 0.0;
        double err = 0.0;
        for (int k = 0; k < 4; ++k) {
            mag = std::max({mag, std::abs(a[k]), std::abs(b[k])});
            err = std::max(err, std::abs(a[k] - b[k]));
        }
        max_err = std::max(max_err, absolute ? err : err / (1.0 + mag));
        ++samples;
    }
};

/// Evaluates a pair of operator cores over the whole corpus and accumulates
/// the deviation. Symbolic mode builds each side once per field; numeric mode
/// evaluates the stencil-backed cores pointwise.
template <class CoreL, class CoreR>
void run_core_pair(const FieldCorpus& corpus, const OperatorConfig& cfg, ErrAccum& acc, CoreL&& lhs,
                   CoreR&& rhs) {
    for (int n = 0; n < corpus.count; ++n) {
        const QuatField& f = corpus.fields[static_cast<std::size_t>(n)];
        const auto pts = corpus.field_points(n);
        if (cfg.mode == DerivativeMode::symbolic) {
            const QuatField a = make_symbolic_field(f, lhs);
            const QuatField b = make_symbolic_field(f, rhs);
            for (const Coords& p : pts) acc.add(a.components_at(p), b.components_at(p));
        } else {
            for (const Coords& p : pts)
                acc.add(eval_numeric(f, p, cfg, lhs), eval_numeric(f, p, cfg, rhs));
        }
    }
}

template <class S>
QParts<S> negated(QParts<S> q) {
    return {-q.s, {-q.v[0], -q.v[1], -q.v[2]}};
}

template <class S>
QParts<S> zero_parts(const Operands<S>& in) {
    const S z = constant_like(0.0, in.f0);
    return {z, {z, z, z}};
}

inline IdentityRecord make_record(const std::string& id, const std::string& chart,
                                  const ErrAccum& acc, double tolerance, bool diagnostic = false,
                                  std::string note = "") {
    IdentityRecord rec;
    rec.identity = id;
    rec.chart = chart;
    rec.samples = acc.samples;
    rec.max_error = acc.max_err;
    rec.tolerance = tolerance;
    rec.pass = acc.max_err <= tolerance;
    rec.diagnostic = diagnostic;
    rec.note = std::move(note);
    return rec;
}

/// Elasticity parameter sets exercised by the Lame identities.
inline const std::vector<LameParams>& lame_parameter_sets() {
    static const std::vector<LameParams> sets = {LameParams(1.0, 1.0), LameParams(2.5, 0.5),
                                                 LameParams(1.0, -0.5)};
    return sets;
}

/// Matching cartesian/spherical representations of the same Cartesian
/// quaternion field, used by the frame-covariance identity.
struct CovariancePair {
    FieldSpec cartesian;
    FieldSpec spherical;
};

inline const std::vector<CovariancePair>& covariance_pairs() {
    static const std::vector<CovariancePair> pairs = [] {
        std::vector<CovariancePair> out;
        // f = xy + x i1 + z i3
        CovariancePair a;
        a.cartesian.f0_re = "q1*q2";
        a.cartesian.f1_re = "q1";
        a.cartesian.f3_re = "q3";
        a.spherical.f0_re = "r^2*sin(theta)^2*cos(psi)*sin(psi)";
        a.spherical.f1_re = "r*(sin(theta)^2*cos(psi)^2 + cos(theta)^2)";
        a.spherical.f2_re = "-r*sin(theta)*cos(theta)*sin(psi)^2";
        a.spherical.f3_re = "-r*sin(theta)*cos(psi)*sin(psi)";
        out.push_back(a);
        // f = y^2 i2
        CovariancePair b;
        b.cartesian.f2_re = "q2^2";
        b.spherical.f1_re = "r^2*sin(theta)^3*sin(psi)^3";
        b.spherical.f2_re = "r^2*sin(theta)^2*cos(theta)*sin(psi)^3";
        b.spherical.f3_re = "r^2*sin(theta)^2*sin(psi)^2*cos(psi)";
        out.push_back(b);
        return out;
    }();
    return pairs;
}

} // namespace detail

/// Runs every applicable registered identity over the corpus and returns one
/// record per identity. Failures are recorded, never thrown.
inline VerificationReport identity_suite(const FieldCorpus& corpus, const SuiteConfig& cfg = {}) {
    using namespace detail;
    cfg.op.validate();

    VerificationReport report;
    report.suite = "identity";
    report.charts = {corpus.chart->name()};
    report.seed = corpus.seed;
    report.count = corpus.count;
    report.derivative_mode = to_string(cfg.op.mode);
    report.fd_step = cfg.op.fd_step;
    report.fd_scheme = to_string(cfg.op.fd_scheme);
    report.timestamp = utc_timestamp();

    const std::string chart_name = corpus.chart->name();
    const auto add_pair_identity = [&](const std::string& id, auto&& lhs, auto&& rhs) {
        const IdentityInfo& info = registry_entry(id);
        ErrAccum acc;
        acc.absolute = info.absolute;
        run_core_pair(corpus, cfg.op, acc, lhs, rhs);
        report.records.push_back(make_record(id, chart_name, acc, effective_tolerance(info, cfg)));
    };

    add_pair_identity(
        "curl_grad_zero",
        [](const auto& in) { return zero_padded(in, curl_core(in.h, grad_core(in.h, in.f0))); },
        [](const auto& in) { return zero_parts(in); });

    add_pair_identity(
        "div_curl_zero",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            const S z = constant_like(0.0, in.f0);
            return QParts<S>{div_core(in.h, curl_core(in.h, in.fv)), {z, z, z}};
        },
        [](const auto& in) { return zero_parts(in); });

    add_pair_identity(
        "factorization_laplace",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            return mt_left_core<S>(in.h, mt_left_core<S>(in.h, {in.f0, in.fv}));
        },
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            return negated(QParts<S>{laplace_scalar_core(in.h, in.f0),
                                     laplace_vector_core(in.h, in.fv)});
        });

    add_pair_identity(
        "factorization_bitsadze",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            return mt_left_core<S>(in.h, mt_right_core<S>(in.h, {in.f0, in.fv}));
        },
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            return negated(QParts<S>{laplace_scalar_core(in.h, in.f0),
                                     bitsadze_vector_core(in.h, in.fv)});
        });

    add_pair_identity(
        "laplace_scalar_expanded_vs_composed",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            const S z = constant_like(0.0, in.f0);
            return QParts<S>{laplace_scalar_core(in.h, in.f0), {z, z, z}};
        },
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            const S z = constant_like(0.0, in.f0);
            return QParts<S>{div_core(in.h, grad_core(in.h, in.f0)), {z, z, z}};
        });

    add_pair_identity(
        "laplace_vector_expanded_vs_composed",
        [](const auto& in) { return zero_padded(in, laplace_vector_core(in.h, in.fv)); },
        [](const auto& in) {
            const auto gd = grad_core(in.h, div_core(in.h, in.fv));
            const auto cc = curl_core(in.h, curl_core(in.h, in.fv));
            return zero_padded(in, {gd[0] - cc[0], gd[1] - cc[1], gd[2] - cc[2]});
        });

    add_pair_identity(
        "bitsadze_vector_expanded_vs_composed",
        [](const auto& in) { return zero_padded(in, bitsadze_vector_core(in.h, in.fv)); },
        [](const auto& in) {
            const auto gd = grad_core(in.h, div_core(in.h, in.fv));
            const auto cc = curl_core(in.h, curl_core(in.h, in.fv));
            return zero_padded(in, {gd[0] + cc[0], gd[1] + cc[1], gd[2] + cc[2]});
        });

    add_pair_identity(
        "graddiv_via_mt",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            return graddiv_via_mt_core<S>(in.h, in.fv);
        },
        [](const auto& in) {
            return zero_padded(in, grad_core(in.h, div_core(in.h, in.fv)));
        });

    add_pair_identity(
        "graddiv_scalar_part",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            QParts<S> g = graddiv_via_mt_core<S>(in.h, in.fv);
            const S z = constant_like(0.0, in.f0);
            return QParts<S>{g.s, {z, z, z}};
        },
        [](const auto& in) { return zero_parts(in); });

    // Lame identities run over every parameter set; the record keeps the
    // worst error. The displayed-sign probe is recorded as a diagnostic and
    // feeds the report's sign-resolution block.
    {
        ErrAccum direct_vs_fact, direct_vs_exp, fact_scalar, displayed;
        for (const LameParams& lp : lame_parameter_sets()) {
            const double mu = lp.mu(), lambda = lp.lambda();
            const double alpha = lp.alpha(), beta = lp.beta();
            run_core_pair(
                corpus, cfg.op, direct_vs_fact,
                [&](const auto& in) { return zero_padded(in, lame_direct_core(in.h, in.fv, mu, lambda)); },
                [&](const auto& in) {
                    using S = std::decay_t<decltype(in.f0)>;
                    return lame_factorized_core<S>(in.h, in.fv, alpha, beta);
                });
            run_core_pair(
                corpus, cfg.op, direct_vs_exp,
                [&](const auto& in) { return zero_padded(in, lame_direct_core(in.h, in.fv, mu, lambda)); },
                [&](const auto& in) { return zero_padded(in, lame_expanded_core(in.h, in.fv, mu, lambda)); });
            run_core_pair(
                corpus, cfg.op, fact_scalar,
                [&](const auto& in) {
                    using S = std::decay_t<decltype(in.f0)>;
                    QParts<S> g = lame_factorized_core<S>(in.h, in.fv, alpha, beta);
                    const S z = constant_like(0.0, in.f0);
                    return QParts<S>{g.s, {z, z, z}};
                },
                [](const auto& in) { return zero_parts(in); });
            run_core_pair(
                corpus, cfg.op, displayed,
                [&](const auto& in) { return zero_padded(in, lame_direct_core(in.h, in.fv, mu, lambda)); },
                [&](const auto& in) {
                    using S = std::decay_t<decltype(in.f0)>;
                    return lame_factorized_displayed_core<S>(in.h, in.fv, alpha, beta);
                });
        }
        const auto& i_fact = registry_entry("lame_direct_vs_factorized");
        const auto& i_exp = registry_entry("lame_direct_vs_expanded");
        const auto& i_sc = registry_entry("lame_factorized_scalar_part");
        report.records.push_back(make_record(i_fact.id, chart_name, direct_vs_fact,
                                             effective_tolerance(i_fact, cfg)));
        report.records.push_back(
            make_record(i_exp.id, chart_name, direct_vs_exp, effective_tolerance(i_exp, cfg)));
        report.records.push_back(
            make_record(i_sc.id, chart_name, fact_scalar, effective_tolerance(i_sc, cfg)));
        report.records.push_back(make_record(
            "lame_factorization_sign_displayed", chart_name, displayed,
            effective_tolerance(i_fact, cfg), /*diagnostic=*/true,
            "expected mismatch: +(alpha D Dr + beta D D) does not reproduce the Lame operator; "
            "the resolved factorization carries a leading minus sign"));
        LameSignRecord sign;
        sign.resolved_form = "L = -(alpha*D*Dr + beta*D*D)";
        sign.resolved_max_error = direct_vs_fact.max_err;
        sign.displayed_form_max_error = displayed.max_err;
        report.lame_sign = sign;
    }

    add_pair_identity(
        "matrix_identity",
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            const auto g = grad_core(in.h, in.f0);
            const auto c = curl_core(in.h, in.fv);
            return QParts<S>{div_core(in.h, in.fv), {g[0] + c[0], g[1] + c[1], g[2] + c[2]}};
        },
        [](const auto& in) {
            using S = std::decay_t<decltype(in.f0)>;
            QParts<S> mt = mt_left_core<S>(in.h, {in.f0, in.fv});
            // -conj(D f): negate the scalar slot, keep the vector slot.
            return QParts<S>{-mt.s, mt.v};
        });

    if (chart_name == "cartesian") {
        add_pair_identity(
            "cartesian_degeneration",
            [](const auto& in) { return zero_padded(in, laplace_vector_core(in.h, in.fv)); },
            [](const auto& in) {
                return zero_padded(in, {laplace_scalar_core(in.h, in.fv[0]),
                                        laplace_scalar_core(in.h, in.fv[1]),
                                        laplace_scalar_core(in.h, in.fv[2])});
            });
    }

    if (chart_name == "spherical") {
        // |lapv(u1)_1 - lap0(1)| must equal the 2/r^2 coupling term exactly:
        // the vector Laplacian does not act componentwise off the cartesian
        // chart.
        const IdentityInfo& info = registry_entry("spherical_coupling_term");
        ErrAccum acc;
        acc.absolute = info.absolute;
        const QuatField u1_field =
            QuatField::vector(corpus.chart, {ComplexExpr(parse("1")), ComplexExpr(), ComplexExpr()});
        const QuatField one_field = QuatField::scalar(corpus.chart, ComplexExpr(parse("1")));
        for (const Coords& p : corpus.points) {
            const Quaternion lapv = apply_at(OpKind::laplace_vector, u1_field, p, cfg.op);
            const Quaternion lap0 = apply_at(OpKind::laplace_scalar, one_field, p, cfg.op);
            const double coupling = std::abs(lapv.vector_part()[0] - lap0.scalar_part());
            const double expected = 2.0 / (p[0] * p[0]);
            acc.add(Quaternion::scalar(coupling), Quaternion::scalar(expected));
        }
        report.records.push_back(
            make_record(info.id, chart_name, acc, effective_tolerance(info, cfg)));

        const IdentityInfo& cov = registry_entry("frame_covariance");
        ErrAccum cacc;
        cacc.absolute = cov.absolute;
        const ChartPtr cart = builtin_chart("cartesian");
        for (const auto& pair : covariance_pairs()) {
            const QuatField fc = make_field(cart, pair.cartesian);
            const QuatField fs = make_field(corpus.chart, pair.spherical);
            for (const Coords& p : corpus.points) {
                const Coords xyz = corpus.chart->to_cartesian(p);
                const Quaternion qc =
                    frame_to_cartesian(*cart, xyz, apply_at(OpKind::mt, fc, xyz, cfg.op));
                const Quaternion qs =
                    frame_to_cartesian(*corpus.chart, p, apply_at(OpKind::mt, fs, p, cfg.op));
                cacc.add(qc, qs);
            }
        }
        report.records.push_back(
            make_record(cov.id, chart_name, cacc, effective_tolerance(cov, cfg)));
    }

    {
        // Mode-independent probe: symbolic vs central2 at step 1e-4, absolute.
        const IdentityInfo& info = registry_entry("fd_cross_check");
        ErrAccum acc;
        acc.absolute = info.absolute;
        const OperatorConfig sym{DerivativeMode::symbolic, 1e-4, FdScheme::central2};
        const OperatorConfig fd{DerivativeMode::finite_difference, 1e-4, FdScheme::central2};
        for (int n = 0; n < corpus.count; ++n) {
            const QuatField& f = corpus.fields[static_cast<std::size_t>(n)];
            const QuatField mt_sym = mt_left(f);
            const QuatField laph_sym = laplace_quat(f);
            for (const Coords& p : corpus.field_points(n)) {
                acc.add(mt_sym.components_at(p), apply_at(OpKind::mt, f, p, fd));
                acc.add(laph_sym.components_at(p), apply_at(OpKind::laplace_quat, f, p, fd));
            }
            (void)sym;
        }
        report.records.push_back(make_record(info.id, corpus.chart->name(), acc,
                                             cfg.tolerance_override.value_or(info.tolerance)));
    }

    return report;
}

/// Compares the chart's golden closed-form tables against the generic
/// curvilinear implementation over the corpus. Table evaluation binds exact
/// derivatives of the field components, so this isolates transcription of
/// the closed forms from the operator machinery.
inline VerificationReport golden_suite(const FieldCorpus& corpus, const GoldenTable& table,
                                       const SuiteConfig& cfg = {}) {
    VerificationReport report;
    report.suite = "golden_" + table.chart_name();
    report.charts = {corpus.chart->name()};
    report.seed = corpus.seed;
    report.count = corpus.count;
    report.derivative_mode = "symbolic";
    report.fd_step = cfg.op.fd_step;
    report.fd_scheme = to_string(cfg.op.fd_scheme);
    report.timestamp = utc_timestamp();

    const std::vector<std::pair<std::string, OpKind>> ops = {
        {"mt", OpKind::mt},
        {"laplace_scalar", OpKind::laplace_scalar},
        {"laplace_vector", OpKind::laplace_vector},
        {"bitsadze_vector", OpKind::bitsadze_vector},
    };
    for (const auto& [name, kind] : ops) {
        detail::ErrAccum acc;
        for (int n = 0; n < corpus.count; ++n) {
            const QuatField& f = corpus.fields[static_cast<std::size_t>(n)];
            const QuatField generic = [&] {
                switch (kind) {
                case OpKind::mt: return mt_left(f);
                case OpKind::laplace_scalar: return laplace_scalar(f);
                case OpKind::laplace_vector: return laplace_vector(f);
                default: return bitsadze_vector(f);
                }
            }();
            for (const Coords& p : corpus.field_points(n))
                acc.add(table.eval(name, f, p), generic.components_at(p));
        }
        const double tol = cfg.tolerance_override.value_or(1e-9);
        report.records.push_back(detail::make_record("golden_" + name, corpus.chart->name(), acc,
                                                     tol));
    }
    return report;
}

/// Full verification: identity suite on every chart plus golden suites where
/// a table exists. Produces one merged report.
inline VerificationReport run_verification(const std::vector<ChartPtr>& charts, std::uint64_t seed,
                                           int count, const SuiteConfig& cfg,
                                           const std::filesystem::path& golden_path,
                                           int points_per_field = 3) {
    VerificationReport merged;
    merged.suite = "verification";
    merged.seed = seed;
    merged.count = count;
    merged.derivative_mode = to_string(cfg.op.mode);
    merged.fd_step = cfg.op.fd_step;
    merged.fd_scheme = to_string(cfg.op.fd_scheme);
    merged.timestamp = utc_timestamp();

    for (const ChartPtr& chart : charts) {
        merged.charts.push_back(chart->name());
        const FieldCorpus corpus = generate_corpus(seed, count, chart, points_per_field);
        VerificationReport part = identity_suite(corpus, cfg);
        for (auto& rec : part.records) merged.records.push_back(std::move(rec));
        if (part.lame_sign) {
            if (!merged.lame_sign) {
                merged.lame_sign = part.lame_sign;
            } else {
                merged.lame_sign->resolved_max_error = std::max(
                    merged.lame_sign->resolved_max_error, part.lame_sign->resolved_max_error);
                merged.lame_sign->displayed_form_max_error =
                    std::max(merged.lame_sign->displayed_form_max_error,
                             part.lame_sign->displayed_form_max_error);
            }
        }
        if (chart->name() == "cartesian" || chart->name() == "spherical") {
            const GoldenTable table = load_golden_table(golden_path, chart->name());
            VerificationReport gold = golden_suite(corpus, table, cfg);
            for (auto& rec : gold.records) merged.records.push_back(std::move(rec));
        }
    }
    return merged;
}

} // namespace mtcurv
