#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "mtcurv/chart.hpp"
#include "mtcurv/detail/field_scalar.hpp"
#include "mtcurv/errors.hpp"
#include "mtcurv/field.hpp"
#include "mtcurv/quaternion.hpp"

namespace mtcurv {

enum class DerivativeMode { symbolic, finite_difference };

inline const char* to_string(DerivativeMode m) noexcept {
    return m == DerivativeMode::symbolic ? "symbolic" : "finite_difference";
}

/// Controls how operators take derivatives. Symbolic mode differentiates the
/// component expressions exactly (second-order operators differentiate the
/// symbolic first-order results again); finite-difference mode nests stencils
/// and serves as an independent cross-check.
struct OperatorConfig {
    DerivativeMode mode = DerivativeMode::symbolic;
    double fd_step = 1e-4;
    FdScheme fd_scheme = FdScheme::central2;

    void validate() const {
        if (!(fd_step > 0.0)) throw DomainError("fd_step must be positive");
    }
};

/// Elasticity parameters. The constraint mu > 0, lambda > -(2/3) mu keeps the
/// factorization coefficients alpha = (mu+lambda)/2 and beta = (3 mu+lambda)/2
/// away from zero, so validity is checked once at construction.
class LameParams {
public:
    LameParams(double mu, double lambda) : mu_(mu), lambda_(lambda) {
        if (!(mu > 0.0) || !(lambda > -2.0 / 3.0 * mu))
            throw InvalidLameParamsError("require mu > 0 and lambda > -(2/3) mu");
    }

    double mu() const noexcept { return mu_; }
    double lambda() const noexcept { return lambda_; }
    double alpha() const noexcept { return (mu_ + lambda_) / 2.0; }
    double beta() const noexcept { return (3.0 * mu_ + lambda_) / 2.0; }

private:
    double mu_;
    double lambda_;
};

namespace detail {

template <class S>
using Vec3 = std::array<S, 3>;

template <class S>
struct QParts {
    S s;
    Vec3<S> v;
};

/// Lifted inputs for one real slice (real or imaginary parts) of a field.
template <class S>
struct Operands {
    Vec3<S> h;
    S f0;
    Vec3<S> fv;
};

inline SymScalar constant_like(double c, const SymScalar& like) {
    return SymScalar(Expr::constant(c), *like.coords);
}

inline NumScalar constant_like(double c, const NumScalar& like) {
    return NumScalar([c](const Coords&) { return c; }, like.step, like.scheme);
}

// grad[f0]_i = (1/h_i) df0/dq_i
template <class S>
Vec3<S> grad_core(const Vec3<S>& h, const S& f0) {
    return {f0.derivative(0) / h[0], f0.derivative(1) / h[1], f0.derivative(2) / h[2]};
}

// div[f] = (1/(h1 h2 h3)) [ d(h2 h3 f1)/dq1 + d(h1 h3 f2)/dq2 + d(h1 h2 f3)/dq3 ]
template <class S>
S div_core(const Vec3<S>& h, const Vec3<S>& f) {
    S acc = (h[1] * h[2] * f[0]).derivative(0) + (h[0] * h[2] * f[1]).derivative(1) +
            (h[0] * h[1] * f[2]).derivative(2);
    return acc / (h[0] * h[1] * h[2]);
}

// curl[f]_1 = (1/(h2 h3)) [ d(h3 f3)/dq2 - d(h2 f2)/dq3 ],  cyclically.
template <class S>
Vec3<S> curl_core(const Vec3<S>& h, const Vec3<S>& f) {
    return {((h[2] * f[2]).derivative(1) - (h[1] * f[1]).derivative(2)) / (h[1] * h[2]),
            ((h[0] * f[0]).derivative(2) - (h[2] * f[2]).derivative(0)) / (h[0] * h[2]),
            ((h[1] * f[1]).derivative(0) - (h[0] * f[0]).derivative(1)) / (h[0] * h[1])};
}

template <class S>
QParts<S> mt_left_core(const Vec3<S>& h, const QParts<S>& f) {
    const Vec3<S> g = grad_core(h, f.s);
    const Vec3<S> c = curl_core(h, f.v);
    return {-div_core(h, f.v), {g[0] + c[0], g[1] + c[1], g[2] + c[2]}};
}

template <class S>
QParts<S> mt_right_core(const Vec3<S>& h, const QParts<S>& f) {
    const Vec3<S> g = grad_core(h, f.s);
    const Vec3<S> c = curl_core(h, f.v);
    return {-div_core(h, f.v), {g[0] - c[0], g[1] - c[1], g[2] - c[2]}};
}

// Expanded scalar Laplacian:
// (1/(h1 h2 h3)) sum_i d/dq_i ( (h_j h_k / h_i) df0/dq_i ),  {j,k} = {1,2,3}\{i}.
template <class S>
S laplace_scalar_core(const Vec3<S>& h, const S& f0) {
    const auto term = [&](int i, int j, int k) {
        return ((h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k)] /
                 h[static_cast<std::size_t>(i)]) *
                f0.derivative(i))
            .derivative(i);
    };
    return (term(0, 1, 2) + term(1, 0, 2) + term(2, 0, 1)) / (h[0] * h[1] * h[2]);
}

// Shared term shapes of the expanded second-order vector operators. With
// H = h1 h2 h3 and P_j the product of the two metric coefficients other than
// h_j, the grad-div-type term is
//   gd(i,j) = (1/h_i) d/dq_i [ (1/H) d(P_j f_j)/dq_j ]
// and the four curl-curl-type terms for component i, with (i,j,k) cyclic, are
//   cc1 = (1/(h_j h_k)) d/dq_j [ (h_k/(h_i h_j)) d(h_j f_j)/dq_i ]
//   cc2 = (1/(h_j h_k)) d/dq_j [ (h_k/(h_i h_j)) d(h_i f_i)/dq_j ]
//   cc3 = (1/(h_j h_k)) d/dq_k [ (h_j/(h_i h_k)) d(h_i f_i)/dq_k ]
//   cc4 = (1/(h_j h_k)) d/dq_k [ (h_j/(h_i h_k)) d(h_k f_k)/dq_i ]
// entering with signs (-,+,+,-) in grad div - curl curl and flipped in
// grad div + curl curl.
template <class S>
struct VectorSecondOrderTerms {
    const Vec3<S>& h;
    const Vec3<S>& f;

    S gd(int i, int j) const {
        const auto at = [&](int n) -> const S& { return h[static_cast<std::size_t>(n)]; };
        const int a = (j + 1) % 3, b = (j + 2) % 3;
        const S inner = (at(a) * at(b) * f[static_cast<std::size_t>(j)]).derivative(j) /
                        (h[0] * h[1] * h[2]);
        return inner.derivative(i) / at(i);
    }

    S gd_sum(int i) const { return gd(i, 0) + gd(i, 1) + gd(i, 2); }

    // curl(curl f) component i, assembled from the four cc terms with signs
    // (+,-,-,+).
    S curlcurl(int i) const {
        const auto at = [&](int n) -> const S& { return h[static_cast<std::size_t>(n)]; };
        const auto fat = [&](int n) -> const S& { return f[static_cast<std::size_t>(n)]; };
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const S w1 = at(k) / (at(i) * at(j));
        const S w2 = at(j) / (at(i) * at(k));
        const S cc1 = (w1 * (at(j) * fat(j)).derivative(i)).derivative(j) / (at(j) * at(k));
        const S cc2 = (w1 * (at(i) * fat(i)).derivative(j)).derivative(j) / (at(j) * at(k));
        const S cc3 = (w2 * (at(i) * fat(i)).derivative(k)).derivative(k) / (at(j) * at(k));
        const S cc4 = (w2 * (at(k) * fat(k)).derivative(i)).derivative(k) / (at(j) * at(k));
        return cc1 - cc2 - cc3 + cc4;
    }
};

// Expanded vector Laplacian grad div - curl curl.
template <class S>
Vec3<S> laplace_vector_core(const Vec3<S>& h, const Vec3<S>& f) {
    const VectorSecondOrderTerms<S> t{h, f};
    return {t.gd_sum(0) - t.curlcurl(0), t.gd_sum(1) - t.curlcurl(1), t.gd_sum(2) - t.curlcurl(2)};
}

// Expanded Bitsadze-type operator grad div + curl curl.
template <class S>
Vec3<S> bitsadze_vector_core(const Vec3<S>& h, const Vec3<S>& f) {
    const VectorSecondOrderTerms<S> t{h, f};
    return {t.gd_sum(0) + t.curlcurl(0), t.gd_sum(1) + t.curlcurl(1), t.gd_sum(2) + t.curlcurl(2)};
}

// Expanded Lame-Navier operator: the grad-div-type terms carry 2 mu + lambda,
// the curl-curl-type terms carry mu.
template <class S>
Vec3<S> lame_expanded_core(const Vec3<S>& h, const Vec3<S>& f, double mu, double lambda) {
    const VectorSecondOrderTerms<S> t{h, f};
    const double gd_coef = 2.0 * mu + lambda;
    Vec3<S> out = {gd_coef * t.gd_sum(0) - mu * t.curlcurl(0),
                   gd_coef * t.gd_sum(1) - mu * t.curlcurl(1),
                   gd_coef * t.gd_sum(2) - mu * t.curlcurl(2)};
    return out;
}

// mu * (expanded vector Laplacian) + (mu+lambda) * grad(div), the defining
// form of the Lame-Navier operator.
template <class S>
Vec3<S> lame_direct_core(const Vec3<S>& h, const Vec3<S>& f, double mu, double lambda) {
    const Vec3<S> lap = laplace_vector_core(h, f);
    const Vec3<S> gd = grad_core(h, div_core(h, f));
    return {mu * lap[0] + (mu + lambda) * gd[0], mu * lap[1] + (mu + lambda) * gd[1],
            mu * lap[2] + (mu + lambda) * gd[2]};
}

// -(alpha D Dr + beta D D) applied to the pure-vector part. The leading minus
// makes the factorized route agree with the defining form; see the
// verification report's sign-resolution record.
template <class S>
QParts<S> lame_factorized_core(const Vec3<S>& h, const Vec3<S>& f, double alpha, double beta) {
    const QParts<S> pure{constant_like(0.0, f[0]), f};
    const QParts<S> ddr = mt_left_core(h, mt_right_core(h, pure));
    const QParts<S> dd = mt_left_core(h, mt_left_core(h, pure));
    QParts<S> out{-(alpha * ddr.s + beta * dd.s),
                  {-(alpha * ddr.v[0] + beta * dd.v[0]), -(alpha * ddr.v[1] + beta * dd.v[1]),
                   -(alpha * ddr.v[2] + beta * dd.v[2])}};
    return out;
}

// +(alpha D Dr + beta D D): the factorization as displayed without the
// leading minus. Kept for the sign-resolution diagnostic.
template <class S>
QParts<S> lame_factorized_displayed_core(const Vec3<S>& h, const Vec3<S>& f, double alpha,
                                         double beta) {
    QParts<S> neg = lame_factorized_core(h, f, alpha, beta);
    return {-neg.s, {-neg.v[0], -neg.v[1], -neg.v[2]}};
}

// grad(div f) = -(1/2)(D D + D Dr) on pure-vector fields; the scalar part of
// the right-hand side cancels (it is a div curl), which the suite checks.
template <class S>
QParts<S> graddiv_via_mt_core(const Vec3<S>& h, const Vec3<S>& f) {
    const QParts<S> pure{constant_like(0.0, f[0]), f};
    const QParts<S> dd = mt_left_core(h, mt_left_core(h, pure));
    const QParts<S> ddr = mt_left_core(h, mt_right_core(h, pure));
    return {-0.5 * (dd.s + ddr.s),
            {-0.5 * (dd.v[0] + ddr.v[0]), -0.5 * (dd.v[1] + ddr.v[1]),
             -0.5 * (dd.v[2] + ddr.v[2])}};
}

template <class S>
Operands<S> lift_operands(const QuatField& f, const OperatorConfig& cfg, bool imag_part) {
    const Chart& chart = f.chart();
    Operands<S> out;
    S* tag = nullptr;
    for (int i = 0; i < 3; ++i)
        out.h[static_cast<std::size_t>(i)] =
            lift(chart.metric_expr(i), chart, cfg.fd_step, cfg.fd_scheme, tag);
    const auto part = [&](const ComplexExpr& c) -> const Expr& { return imag_part ? c.im : c.re; };
    out.f0 = lift(part(f.scalar_comp()), chart, cfg.fd_step, cfg.fd_scheme, tag);
    for (int k = 0; k < 3; ++k)
        out.fv[static_cast<std::size_t>(k)] =
            lift(part(f.vector_comp()[static_cast<std::size_t>(k)]), chart, cfg.fd_step,
                 cfg.fd_scheme, tag);
    return out;
}

/// Runs `core` symbolically on the real and imaginary slices of f and
/// reassembles a field over the same chart.
template <class Core>
QuatField make_symbolic_field(const QuatField& f, Core&& core) {
    const OperatorConfig cfg;   // symbolic lift ignores fd settings
    const auto re_in = lift_operands<SymScalar>(f, cfg, false);
    const auto im_in = lift_operands<SymScalar>(f, cfg, true);
    const QParts<SymScalar> re = core(re_in);
    const QParts<SymScalar> im = core(im_in);
    return QuatField(f.chart_ptr(), ComplexExpr(re.s.e, im.s.e),
                     {ComplexExpr(re.v[0].e, im.v[0].e), ComplexExpr(re.v[1].e, im.v[1].e),
                      ComplexExpr(re.v[2].e, im.v[2].e)});
}

/// Runs `core` with finite-difference scalars and evaluates at p.
template <class Core>
Quaternion eval_numeric(const QuatField& f, const Coords& p, const OperatorConfig& cfg,
                        Core&& core) {
    f.chart().require_in_domain(p);
    const auto re_in = lift_operands<NumScalar>(f, cfg, false);
    const auto im_in = lift_operands<NumScalar>(f, cfg, true);
    const QParts<NumScalar> re = core(re_in);
    const QParts<NumScalar> im = core(im_in);
    return Quaternion(Complex(re.s(p), im.s(p)),
                      {Complex(re.v[0](p), im.v[0](p)), Complex(re.v[1](p), im.v[1](p)),
                       Complex(re.v[2](p), im.v[2](p))});
}

template <class S>
QParts<S> zero_padded(const Operands<S>& in, Vec3<S> v) {
    return {constant_like(0.0, in.f0), std::move(v)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Field-level operators (symbolic derivative engine). Each returns a new
// QuatField over the same chart whose components are exact derivative
// expressions, so second-order compositions never stack finite differences.
// Vector-part operators ignore the scalar component and vice versa, mirroring
// the Sc/Vec split of the quaternionic product.
// ---------------------------------------------------------------------------

/// grad of the scalar component, as a pure-vector field.
inline QuatField gradient(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        return detail::zero_padded(in, detail::grad_core(in.h, in.f0));
    });
}

/// div of the vector component, as a purely scalar field.
inline QuatField divergence(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        const S z = detail::constant_like(0.0, in.f0);
        return detail::QParts<S>{detail::div_core(in.h, in.fv), {z, z, z}};
    });
}

/// curl of the vector component, as a pure-vector field.
inline QuatField curl(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        return detail::zero_padded(in, detail::curl_core(in.h, in.fv));
    });
}

/// Left Moisil-Theodoresco operator: -div[fv] + grad[f0] + curl[fv].
inline QuatField mt_left(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::mt_left_core<S>(in.h, {in.f0, in.fv});
    });
}

/// Right Moisil-Theodoresco operator: -div[fv] + grad[f0] - curl[fv].
inline QuatField mt_right(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::mt_right_core<S>(in.h, {in.f0, in.fv});
    });
}

/// Matrix form (0 div; grad curl): scalar slot div[fv], vector slot
/// grad[f0] + curl[fv]. Equals -conj(mt_left(f)) as a quaternion.
inline QuatField mt_matrix(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        detail::QParts<S> mt = detail::mt_left_core<S>(in.h, {in.f0, in.fv});
        return detail::QParts<S>{-mt.s, mt.v};
    });
}

/// Scalar Laplacian of the scalar component, from the expanded curvilinear
/// formula (div grad is the compositional cross-check).
inline QuatField laplace_scalar(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        const S z = detail::constant_like(0.0, in.f0);
        return detail::QParts<S>{detail::laplace_scalar_core(in.h, in.f0), {z, z, z}};
    });
}

/// Vector Laplacian grad div - curl curl of the vector component, from the
/// expanded curvilinear formula.
inline QuatField laplace_vector(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        return detail::zero_padded(in, detail::laplace_vector_core(in.h, in.fv));
    });
}

/// Quaternionic Laplacian: scalar Laplacian on the scalar part plus vector
/// Laplacian on the vector part. Satisfies mt_left(mt_left(f)) = -laplace.
inline QuatField laplace_quat(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::QParts<S>{detail::laplace_scalar_core(in.h, in.f0),
                                 detail::laplace_vector_core(in.h, in.fv)};
    });
}

/// Bitsadze-type operator grad div + curl curl on the vector component.
inline QuatField bitsadze_vector(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        return detail::zero_padded(in, detail::bitsadze_vector_core(in.h, in.fv));
    });
}

/// Scalar Laplacian on the scalar part plus the Bitsadze-type operator on the
/// vector part. Satisfies mt_left(mt_right(f)) = -bitsadze.
inline QuatField bitsadze_quat(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::QParts<S>{detail::laplace_scalar_core(in.h, in.f0),
                                 detail::bitsadze_vector_core(in.h, in.fv)};
    });
}

/// Lame-Navier operator mu*laplace_vector + (mu+lambda)*grad(div).
inline QuatField lame_direct(const QuatField& f, const LameParams& params) {
    return detail::make_symbolic_field(f, [&](const auto& in) {
        return detail::zero_padded(
            in, detail::lame_direct_core(in.h, in.fv, params.mu(), params.lambda()));
    });
}

/// Lame-Navier operator from its fully expanded curvilinear formula.
inline QuatField lame_expanded(const QuatField& f, const LameParams& params) {
    return detail::make_symbolic_field(f, [&](const auto& in) {
        return detail::zero_padded(
            in, detail::lame_expanded_core(in.h, in.fv, params.mu(), params.lambda()));
    });
}

/// Lame-Navier operator via -(alpha D Dr + beta D^2) on the vector part. The
/// scalar slot carries the (vanishing) residual so it can be checked.
inline QuatField lame_factorized(const QuatField& f, const LameParams& params) {
    return detail::make_symbolic_field(f, [&](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::lame_factorized_core<S>(in.h, in.fv, params.alpha(), params.beta());
    });
}

/// +(alpha D Dr + beta D^2), the sign-uncorrected factorization; used only by
/// the sign-resolution diagnostic.
inline QuatField lame_factorized_displayed(const QuatField& f, const LameParams& params) {
    return detail::make_symbolic_field(f, [&](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::lame_factorized_displayed_core<S>(in.h, in.fv, params.alpha(),
                                                         params.beta());
    });
}

/// grad(div) of the vector part computed as -(1/2)(D^2 + D Dr); the scalar
/// slot carries the vanishing residual.
inline QuatField graddiv_via_mt(const QuatField& f) {
    return detail::make_symbolic_field(f, [](const auto& in) {
        using S = std::decay_t<decltype(in.f0)>;
        return detail::graddiv_via_mt_core<S>(in.h, in.fv);
    });
}

// ---------------------------------------------------------------------------
// Pointwise evaluation honoring OperatorConfig. Symbolic mode builds the
// field-level result and evaluates it; finite-difference mode instantiates
// the same formula cores with stencil-backed scalars. All results pack into a
// quaternion of frame components (scalar-only results have zero vector part
// and vice versa).
// ---------------------------------------------------------------------------

enum class OpKind {
    grad,
    div,
    curl,
    mt,
    mtr,
    mt_matrix,
    laplace_scalar,
    laplace_vector,
    laplace_quat,
    bitsadze_vector,
    bitsadze_quat,
    lame_direct,
    lame_expanded,
    lame_factorized,
    graddiv
};

inline Quaternion apply_at(OpKind op, const QuatField& f, const Coords& p,
                           const OperatorConfig& cfg = {},
                           const std::optional<LameParams>& lame = {}) {
    cfg.validate();
    const bool needs_lame = op == OpKind::lame_direct || op == OpKind::lame_expanded ||
                            op == OpKind::lame_factorized;
    if (needs_lame && !lame) throw InvalidLameParamsError("operator requires Lame parameters");

    if (cfg.mode == DerivativeMode::symbolic) {
        switch (op) {
        case OpKind::grad: return gradient(f).components_at(p);
        case OpKind::div: return divergence(f).components_at(p);
        case OpKind::curl: return curl(f).components_at(p);
        case OpKind::mt: return mt_left(f).components_at(p);
        case OpKind::mtr: return mt_right(f).components_at(p);
        case OpKind::mt_matrix: return mt_matrix(f).components_at(p);
        case OpKind::laplace_scalar: return laplace_scalar(f).components_at(p);
        case OpKind::laplace_vector: return laplace_vector(f).components_at(p);
        case OpKind::laplace_quat: return laplace_quat(f).components_at(p);
        case OpKind::bitsadze_vector: return bitsadze_vector(f).components_at(p);
        case OpKind::bitsadze_quat: return bitsadze_quat(f).components_at(p);
        case OpKind::lame_direct: return lame_direct(f, *lame).components_at(p);
        case OpKind::lame_expanded: return lame_expanded(f, *lame).components_at(p);
        case OpKind::lame_factorized: return lame_factorized(f, *lame).components_at(p);
        case OpKind::graddiv: return graddiv_via_mt(f).components_at(p);
        }
        throw DomainError("unknown operator");
    }

    using detail::NumScalar;
    using detail::QParts;
    const auto run = [&](auto&& core) { return detail::eval_numeric(f, p, cfg, core); };
    switch (op) {
    case OpKind::grad:
        return run([](const auto& in) {
            return detail::zero_padded(in, detail::grad_core(in.h, in.f0));
        });
    case OpKind::div:
        return run([](const auto& in) {
            const NumScalar z = detail::constant_like(0.0, in.f0);
            return QParts<NumScalar>{detail::div_core(in.h, in.fv), {z, z, z}};
        });
    case OpKind::curl:
        return run([](const auto& in) {
            return detail::zero_padded(in, detail::curl_core(in.h, in.fv));
        });
    case OpKind::mt:
        return run([](const auto& in) {
            return detail::mt_left_core<NumScalar>(in.h, {in.f0, in.fv});
        });
    case OpKind::mtr:
        return run([](const auto& in) {
            return detail::mt_right_core<NumScalar>(in.h, {in.f0, in.fv});
        });
    case OpKind::mt_matrix:
        return run([](const auto& in) {
            QParts<NumScalar> mt = detail::mt_left_core<NumScalar>(in.h, {in.f0, in.fv});
            return QParts<NumScalar>{-mt.s, mt.v};
        });
    case OpKind::laplace_scalar:
        return run([](const auto& in) {
            const NumScalar z = detail::constant_like(0.0, in.f0);
            return QParts<NumScalar>{detail::laplace_scalar_core(in.h, in.f0), {z, z, z}};
        });
    case OpKind::laplace_vector:
        return run([](const auto& in) {
            return detail::zero_padded(in, detail::laplace_vector_core(in.h, in.fv));
        });
    case OpKind::laplace_quat:
        return run([](const auto& in) {
            return QParts<NumScalar>{detail::laplace_scalar_core(in.h, in.f0),
                                     detail::laplace_vector_core(in.h, in.fv)};
        });
    case OpKind::bitsadze_vector:
        return run([](const auto& in) {
            return detail::zero_padded(in, detail::bitsadze_vector_core(in.h, in.fv));
        });
    case OpKind::bitsadze_quat:
        return run([](const auto& in) {
            return QParts<NumScalar>{detail::laplace_scalar_core(in.h, in.f0),
                                     detail::bitsadze_vector_core(in.h, in.fv)};
        });
    case OpKind::lame_direct:
        return run([&](const auto& in) {
            return detail::zero_padded(
                in, detail::lame_direct_core(in.h, in.fv, lame->mu(), lame->lambda()));
        });
    case OpKind::lame_expanded:
        return run([&](const auto& in) {
            return detail::zero_padded(
                in, detail::lame_expanded_core(in.h, in.fv, lame->mu(), lame->lambda()));
        });
    case OpKind::lame_factorized:
        return run([&](const auto& in) {
            return detail::lame_factorized_core<NumScalar>(in.h, in.fv, lame->alpha(),
                                                           lame->beta());
        });
    case OpKind::graddiv:
        return run([](const auto& in) {
            return detail::graddiv_via_mt_core<NumScalar>(in.h, in.fv);
        });
    }
    throw DomainError("unknown operator");
}

// Spec-shaped convenience wrappers.

inline std::array<Complex, 3> grad_at(const QuatField& f, const Coords& p,
                                      const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::grad, f, p, cfg).vector_part();
}

inline Complex div_at(const QuatField& f, const Coords& p, const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::div, f, p, cfg).scalar_part();
}

inline std::array<Complex, 3> curl_at(const QuatField& f, const Coords& p,
                                      const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::curl, f, p, cfg).vector_part();
}

inline Quaternion mt_left_at(const QuatField& f, const Coords& p, const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::mt, f, p, cfg);
}

inline Quaternion mt_right_at(const QuatField& f, const Coords& p, const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::mtr, f, p, cfg);
}

/// Matrix-operator action as the (div f, grad f0 + curl f) pair.
inline std::pair<Complex, std::array<Complex, 3>> mt_matrix_at(const QuatField& f, const Coords& p,
                                                               const OperatorConfig& cfg = {}) {
    const Quaternion q = apply_at(OpKind::mt_matrix, f, p, cfg);
    return {q.scalar_part(), q.vector_part()};
}

inline Complex laplace_scalar_at(const QuatField& f, const Coords& p,
                                 const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::laplace_scalar, f, p, cfg).scalar_part();
}

inline std::array<Complex, 3> laplace_vector_at(const QuatField& f, const Coords& p,
                                                const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::laplace_vector, f, p, cfg).vector_part();
}

inline Quaternion laplace_quat_at(const QuatField& f, const Coords& p,
                                  const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::laplace_quat, f, p, cfg);
}

inline std::array<Complex, 3> bitsadze_vector_at(const QuatField& f, const Coords& p,
                                                 const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::bitsadze_vector, f, p, cfg).vector_part();
}

inline Quaternion bitsadze_quat_at(const QuatField& f, const Coords& p,
                                   const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::bitsadze_quat, f, p, cfg);
}

inline std::array<Complex, 3> lame_direct_at(const QuatField& f, const LameParams& params,
                                             const Coords& p, const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::lame_direct, f, p, cfg, params).vector_part();
}

inline std::array<Complex, 3> lame_factorized_at(const QuatField& f, const LameParams& params,
                                                 const Coords& p, const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::lame_factorized, f, p, cfg, params).vector_part();
}

inline Quaternion graddiv_via_mt_at(const QuatField& f, const Coords& p,
                                    const OperatorConfig& cfg = {}) {
    return apply_at(OpKind::graddiv, f, p, cfg);
}

} // namespace mtcurv
