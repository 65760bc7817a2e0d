#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mtcurv/chart.hpp"
#include "mtcurv/expr.hpp"
#include "mtcurv/quaternion.hpp"

namespace mtcurv {

/// Complex-valued scalar function as a (real, imaginary) pair of real
/// expressions. The expression language stays real; H(C)-valued components
/// are assembled from pairs.
struct ComplexExpr {
    Expr re;
    Expr im;

    ComplexExpr() = default;
    ComplexExpr(Expr real_part) : re(std::move(real_part)) {}
    ComplexExpr(Expr real_part, Expr imag_part)
        : re(std::move(real_part)), im(std::move(imag_part)) {}

    Complex eval(const EvalEnv& env) const { return {re.eval(env), im.eval(env)}; }
};

/// Quaternion-valued function f = f0 + f1 u1 + f2 u2 + f3 u3 with components
/// written in the local frame of its chart. Component expressions may
/// reference only the chart's coordinate names.
class QuatField {
public:
    QuatField(ChartPtr chart, ComplexExpr f0, std::array<ComplexExpr, 3> fv)
        : chart_(std::move(chart)), f0_(std::move(f0)), fv_(std::move(fv)) {
        const auto& names = chart_->coord_names();
        const std::vector<std::string> declared(names.begin(), names.end());
        check(f0_, declared);
        for (const auto& c : fv_) check(c, declared);
    }

    /// Purely scalar field f = f0.
    static QuatField scalar(ChartPtr chart, ComplexExpr f0) {
        return QuatField(std::move(chart), std::move(f0), {});
    }

    /// Pure vector field f = f1 u1 + f2 u2 + f3 u3.
    static QuatField vector(ChartPtr chart, std::array<ComplexExpr, 3> fv) {
        return QuatField(std::move(chart), ComplexExpr(), std::move(fv));
    }

    const Chart& chart() const noexcept { return *chart_; }
    const ChartPtr& chart_ptr() const noexcept { return chart_; }
    const ComplexExpr& scalar_comp() const noexcept { return f0_; }
    const std::array<ComplexExpr, 3>& vector_comp() const noexcept { return fv_; }

    /// Frame components (f0, f1, f2, f3) at p, packed as a quaternion. The
    /// vector part is relative to the local frame u_i, not the Cartesian
    /// basis.
    Quaternion components_at(const Coords& p) const {
        chart_->require_in_domain(p);
        const EvalEnv env = chart_->env_at(p);
        return Quaternion(f0_.eval(env),
                          {fv_[0].eval(env), fv_[1].eval(env), fv_[2].eval(env)});
    }

    /// Drops the scalar part.
    QuatField vector_only() const { return QuatField(chart_, ComplexExpr(), fv_); }

private:
    static void check(const ComplexExpr& c, const std::vector<std::string>& declared) {
        c.re.check_variables(declared);
        c.im.check_variables(declared);
    }

    ChartPtr chart_;
    ComplexExpr f0_;
    std::array<ComplexExpr, 3> fv_;
};

/// Re-expresses local-frame components as a quaternion over the Cartesian
/// basis: comps0 + sum_k comps_k u_k(p).
inline Quaternion frame_to_cartesian(const Chart& chart, const Coords& p,
                                     const Quaternion& comps) {
    const FramePoint fp = chart.frame(p);
    std::array<Complex, 3> cart{};
    for (int k = 0; k < 3; ++k) {
        const Complex fk = comps.vector_part()[static_cast<std::size_t>(k)];
        for (int axis = 0; axis < 3; ++axis)
            cart[static_cast<std::size_t>(axis)] +=
                fk * fp.u[static_cast<std::size_t>(k)][static_cast<std::size_t>(axis)];
    }
    return Quaternion(comps.scalar_part(), cart);
}

/// Re-expresses f(p) in the Cartesian basis: f0 + sum_k f_k(p) u_k(p) with
/// u_k the frame vectors at p.
inline Quaternion vector_to_cartesian(const QuatField& f, const Coords& p) {
    return frame_to_cartesian(f.chart(), p, f.components_at(p));
}

} // namespace mtcurv
