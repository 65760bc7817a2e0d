#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtcurv/errors.hpp"
#include "mtcurv/expr.hpp"
#include "mtcurv/parse.hpp"

namespace mtcurv {

/// A point in curvilinear coordinates (q1, q2, q3), in chart order.
using Coords = std::array<double, 3>;

/// Interval box used to sample well-behaved points of a chart.
using Region = std::array<std::array<double, 2>, 3>;

/// Metric coefficients, frame vectors and Cartesian position evaluated at one
/// point. Frame vectors are unit length and mutually orthogonal; charts
/// enforce this at evaluation time rather than assuming it.
struct FramePoint {
    Coords p{};
    std::array<double, 3> h{};
    std::array<std::array<double, 3>, 3> u{};   // u[i] in the Cartesian basis
    std::array<double, 3> xyz{};
};

struct OrthogonalityReport {
    double max_offdiag = 0.0;   // max |u_i . u_j| over samples, i != j
    double min_h = 0.0;         // min metric coefficient over samples
    std::size_t samples = 0;
    bool pass = false;          // max_offdiag <= 1e-8 and min_h > 1e-12
};

/// An orthogonal curvilinear coordinate system: three coordinate maps
/// x(q), y(q), z(q), metric coefficients h_i = |dr/dq_i| (either supplied
/// analytically or derived symbolically from the maps), and a domain
/// predicate excluding coordinate singularities. All derived expressions are
/// computed at construction; charts are immutable afterwards.
class Chart {
public:
    struct Definition {
        std::string name;
        std::array<std::string, 3> coords;
        std::array<Expr, 3> maps;                     // x, y, z
        std::optional<std::array<Expr, 3>> metric;    // analytic h_i override
        std::vector<Expr> domain;                     // each must evaluate > 0
        std::optional<Region> region;                 // sampling box
    };

    explicit Chart(Definition def)
        : name_(std::move(def.name)),
          coords_(std::move(def.coords)),
          maps_(std::move(def.maps)),
          domain_(std::move(def.domain)),
          region_(def.region) {
        const std::vector<std::string> declared(coords_.begin(), coords_.end());
        for (const Expr& m : maps_) m.check_variables(declared);
        for (const Expr& d : domain_) d.check_variables(declared);
        for (int axis = 0; axis < 3; ++axis)
            for (int i = 0; i < 3; ++i)
                jac_[axis][i] = maps_[static_cast<std::size_t>(axis)].diff(coords_[static_cast<std::size_t>(i)]);
        if (def.metric) {
            metric_override_ = true;
            h_ = std::move(*def.metric);
            for (const Expr& h : h_) h.check_variables(declared);
        } else {
            for (int i = 0; i < 3; ++i) {
                Expr sum;
                for (int axis = 0; axis < 3; ++axis) sum = sum + pow(jac_[axis][i], 2.0);
                h_[static_cast<std::size_t>(i)] = Expr::unary(UnaryOp::sqrt, sum);
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    const std::array<std::string, 3>& coord_names() const noexcept { return coords_; }
    const Expr& map_expr(int axis) const { return maps_[static_cast<std::size_t>(axis)]; }
    const Expr& metric_expr(int i) const { return h_[static_cast<std::size_t>(i)]; }
    const Expr& jacobian_expr(int axis, int i) const { return jac_[axis][i]; }
    bool has_metric_override() const noexcept { return metric_override_; }
    const std::vector<Expr>& domain_exprs() const noexcept { return domain_; }

    /// Sampling box for corpus generation and validation; defaults to
    /// [0.5, 2]^3 when the definition does not supply one.
    Region region() const noexcept {
        if (region_) return *region_;
        return Region{{{0.5, 2.0}, {0.5, 2.0}, {0.5, 2.0}}};
    }

    EvalEnv env_at(const Coords& p) const {
        EvalEnv env;
        for (int i = 0; i < 3; ++i)
            env.set(coords_[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
        return env;
    }

    /// True iff every domain expression evaluates to a strictly positive
    /// value at p. Evaluation failures count as out of domain.
    bool in_domain(const Coords& p) const {
        const EvalEnv env = env_at(p);
        for (const Expr& d : domain_) {
            double v;
            try {
                v = d.eval(env);
            } catch (const Error&) {
                return false;
            }
            if (!(v > 0.0)) return false;
        }
        return true;
    }

    void require_in_domain(const Coords& p) const {
        if (!in_domain(p))
            throw OutOfDomainError("point (" + point_str(p) + ") is outside the domain of chart '" +
                                   name_ + "'");
    }

    /// Metric coefficients h_i at p.
    std::array<double, 3> metric(const Coords& p) const {
        require_in_domain(p);
        const EvalEnv env = env_at(p);
        std::array<double, 3> h{};
        for (int i = 0; i < 3; ++i) {
            h[static_cast<std::size_t>(i)] = h_[static_cast<std::size_t>(i)].eval(env);
            if (!(h[static_cast<std::size_t>(i)] > 1e-12))
                throw DegenerateMetricError("metric coefficient h" + std::to_string(i + 1) +
                                            " degenerates at (" + point_str(p) + ") on chart '" +
                                            name_ + "'");
        }
        return h;
    }

    Coords to_cartesian(const Coords& p) const {
        const EvalEnv env = env_at(p);
        return {maps_[0].eval(env), maps_[1].eval(env), maps_[2].eval(env)};
    }

    /// Frame at p: u_i = (1/h_i) dr/dq_i. Checks the orthonormality of the
    /// computed frame and rejects points where it degenerates.
    FramePoint frame(const Coords& p) const {
        FramePoint fp;
        fp.p = p;
        fp.h = metric(p);
        const EvalEnv env = env_at(p);
        fp.xyz = {maps_[0].eval(env), maps_[1].eval(env), maps_[2].eval(env)};
        for (int i = 0; i < 3; ++i)
            for (int axis = 0; axis < 3; ++axis)
                fp.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] =
                    jac_[axis][i].eval(env) / fp.h[static_cast<std::size_t>(i)];
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                const double g = udot(fp, i, j);
                const double dev = std::fabs(g - (i == j ? 1.0 : 0.0));
                if (dev > 1e-8)
                    throw DegenerateMetricError("frame is not orthonormal at (" + point_str(p) +
                                                ") on chart '" + name_ + "'");
            }
        }
        return fp;
    }

    /// Orthogonality screen over a caller-supplied sample set; user-defined
    /// charts must pass this before they are used with the operators.
    OrthogonalityReport check_orthogonality(std::span<const Coords> samples) const {
        OrthogonalityReport rep;
        rep.min_h = 1e300;
        rep.samples = samples.size();
        for (const Coords& p : samples) {
            require_in_domain(p);
            const EvalEnv env = env_at(p);
            std::array<std::array<double, 3>, 3> col{};
            std::array<double, 3> colnorm{};
            for (int i = 0; i < 3; ++i) {
                double acc = 0.0;
                for (int axis = 0; axis < 3; ++axis) {
                    col[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] =
                        jac_[axis][i].eval(env);
                    acc += col[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] *
                           col[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)];
                }
                colnorm[static_cast<std::size_t>(i)] = std::sqrt(acc);
                const double h = h_[static_cast<std::size_t>(i)].eval(env);
                rep.min_h = std::min(rep.min_h, h);
            }
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    double d = 0.0;
                    for (int axis = 0; axis < 3; ++axis)
                        d += col[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] *
                             col[static_cast<std::size_t>(j)][static_cast<std::size_t>(axis)];
                    const double denom = colnorm[static_cast<std::size_t>(i)] *
                                         colnorm[static_cast<std::size_t>(j)];
                    if (denom > 0.0) rep.max_offdiag = std::max(rep.max_offdiag, std::fabs(d) / denom);
                }
            }
        }
        rep.pass = rep.max_offdiag <= 1e-8 && rep.min_h > 1e-12;
        return rep;
    }

private:
    static double udot(const FramePoint& fp, int i, int j) {
        double acc = 0.0;
        for (int axis = 0; axis < 3; ++axis)
            acc += fp.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] *
                   fp.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(axis)];
        return acc;
    }

    static std::string point_str(const Coords& p) {
        std::string out;
        for (int i = 0; i < 3; ++i) {
            if (i) out += ", ";
            out += std::to_string(p[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    std::string name_;
    std::array<std::string, 3> coords_;
    std::array<Expr, 3> maps_;
    std::array<Expr, 3> h_;
    std::array<std::array<Expr, 3>, 3> jac_;   // jac_[axis][i] = d maps_[axis] / d q_i
    std::vector<Expr> domain_;
    std::optional<Region> region_;
    bool metric_override_ = false;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline std::vector<std::string> builtin_chart_names() {
    return {"cartesian", "spherical", "cylindrical"};
}

/// Built-in charts with analytic metric overrides:
///   cartesian    x=q1, y=q2, z=q3          h=(1,1,1)       all of R^3
///   spherical    (r, theta, psi)           h=(1,r,r sin θ) r>0, 0<theta<pi
///   cylindrical  (rho, phi, z)             h=(1,rho,1)     rho>0
inline ChartPtr builtin_chart(std::string_view name) {
    constexpr double kPi = 3.14159265358979323846;
    Chart::Definition def;
    if (name == "cartesian") {
        def.name = "cartesian";
        def.coords = {"q1", "q2", "q3"};
        def.maps = {parse("q1"), parse("q2"), parse("q3")};
        def.metric = {{parse("1"), parse("1"), parse("1")}};
        def.region = Region{{{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}}};
    } else if (name == "spherical") {
        def.name = "spherical";
        def.coords = {"r", "theta", "psi"};
        def.maps = {parse("r*sin(theta)*cos(psi)"), parse("r*sin(theta)*sin(psi)"),
                    parse("r*cos(theta)")};
        def.metric = {{parse("1"), parse("r"), parse("r*sin(theta)")}};
        def.domain = {parse("r"), parse("sin(theta)")};
        def.region = Region{{{0.5, 3.0}, {0.3, kPi - 0.3}, {0.0, 2.0 * kPi}}};
    } else if (name == "cylindrical") {
        def.name = "cylindrical";
        def.coords = {"rho", "phi", "z"};
        def.maps = {parse("rho*cos(phi)"), parse("rho*sin(phi)"), parse("z")};
        def.metric = {{parse("1"), parse("rho"), parse("1")}};
        def.domain = {parse("rho")};
        def.region = Region{{{0.5, 3.0}, {0.0, 2.0 * kPi}, {-2.0, 2.0}}};
    } else {
        throw UnknownChartError("unknown chart '" + std::string(name) + "'");
    }
    return std::make_shared<Chart>(std::move(def));
}

} // namespace mtcurv
