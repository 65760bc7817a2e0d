#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "mtcurv/chart.hpp"
#include "mtcurv/expr.hpp"
#include "mtcurv/fd.hpp"

namespace mtcurv::detail {

// The operator formulas below are written once against a "field scalar"
// type S supporting +, -, *, /, unary -, double*S and derivative(int).
// SymScalar instantiates them with expression trees (derivative = exact
// symbolic differentiation), NumScalar with point evaluators (derivative =
// finite-difference stencil), so the two modes share a single transcription
// of every formula.

/// Symbolic field scalar: an expression plus the coordinate names its
/// derivatives are taken against.
struct SymScalar {
    Expr e;
    const std::array<std::string, 3>* coords = nullptr;

    SymScalar() = default;
    SymScalar(Expr expr, const std::array<std::string, 3>& names) : e(std::move(expr)), coords(&names) {}

    SymScalar derivative(int i) const { return {e.diff((*coords)[static_cast<std::size_t>(i)]), *coords}; }

    friend SymScalar operator+(const SymScalar& a, const SymScalar& b) {
        return {a.e + b.e, *pick(a, b)};
    }
    friend SymScalar operator-(const SymScalar& a, const SymScalar& b) {
        return {a.e - b.e, *pick(a, b)};
    }
    friend SymScalar operator*(const SymScalar& a, const SymScalar& b) {
        return {a.e * b.e, *pick(a, b)};
    }
    friend SymScalar operator/(const SymScalar& a, const SymScalar& b) {
        return {a.e / b.e, *pick(a, b)};
    }
    friend SymScalar operator-(const SymScalar& a) { return {-a.e, *a.coords}; }
    friend SymScalar operator*(double c, const SymScalar& a) { return {c * a.e, *a.coords}; }

private:
    static const std::array<std::string, 3>* pick(const SymScalar& a, const SymScalar& b) {
        return a.coords ? a.coords : b.coords;
    }
};

/// Numeric field scalar: a shared point evaluator; derivative wraps a
/// finite-difference stencil around it, so nested derivatives nest stencils.
struct NumScalar {
    using Fn = std::function<double(const Coords&)>;

    std::shared_ptr<const Fn> fn;
    double step = 1e-4;
    FdScheme scheme = FdScheme::central2;

    NumScalar() = default;
    NumScalar(Fn f, double fd_step, FdScheme fd_scheme)
        : fn(std::make_shared<const Fn>(std::move(f))), step(fd_step), scheme(fd_scheme) {}

    double operator()(const Coords& p) const { return (*fn)(p); }

    NumScalar derivative(int i) const {
        auto f = fn;
        const double h = step;
        const FdScheme sch = scheme;
        return NumScalar(
            [f, i, h, sch](const Coords& p) {
                return fd_derivative(
                    [&](double t) {
                        Coords q = p;
                        q[static_cast<std::size_t>(i)] = t;
                        return (*f)(q);
                    },
                    p[static_cast<std::size_t>(i)], h, sch);
            },
            h, sch);
    }

    friend NumScalar operator+(const NumScalar& a, const NumScalar& b) {
        auto fa = a.fn, fb = b.fn;
        return NumScalar([fa, fb](const Coords& p) { return (*fa)(p) + (*fb)(p); }, a.step, a.scheme);
    }
    friend NumScalar operator-(const NumScalar& a, const NumScalar& b) {
        auto fa = a.fn, fb = b.fn;
        return NumScalar([fa, fb](const Coords& p) { return (*fa)(p) - (*fb)(p); }, a.step, a.scheme);
    }
    friend NumScalar operator*(const NumScalar& a, const NumScalar& b) {
        auto fa = a.fn, fb = b.fn;
        return NumScalar([fa, fb](const Coords& p) { return (*fa)(p) * (*fb)(p); }, a.step, a.scheme);
    }
    friend NumScalar operator/(const NumScalar& a, const NumScalar& b) {
        auto fa = a.fn, fb = b.fn;
        return NumScalar(
            [fa, fb](const Coords& p) {
                const double d = (*fb)(p);
                if (d == 0.0) throw DomainError("division by zero");
                return (*fa)(p) / d;
            },
            a.step, a.scheme);
    }
    friend NumScalar operator-(const NumScalar& a) {
        auto fa = a.fn;
        return NumScalar([fa](const Coords& p) { return -(*fa)(p); }, a.step, a.scheme);
    }
    friend NumScalar operator*(double c, const NumScalar& a) {
        auto fa = a.fn;
        return NumScalar([c, fa](const Coords& p) { return c * (*fa)(p); }, a.step, a.scheme);
    }
};

inline SymScalar lift(const Expr& e, const Chart& chart, double /*step*/, FdScheme /*scheme*/,
                      SymScalar*) {
    return SymScalar(e, chart.coord_names());
}

inline NumScalar lift(const Expr& e, const Chart& chart, double step, FdScheme scheme, NumScalar*) {
    // Coordinate names are captured by value so the evaluator does not dangle
    // if it outlives the chart.
    return NumScalar(
        [e, names = chart.coord_names()](const Coords& p) {
            EvalEnv env;
            for (int i = 0; i < 3; ++i)
                env.set(names[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
            return e.eval(env);
        },
        step, scheme);
}

} // namespace mtcurv::detail
