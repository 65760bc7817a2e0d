#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

#include "mtcurv/errors.hpp"

namespace mtcurv {

using Complex = std::complex<double>;

/// Complex quaternion a = a0 + a1 i1 + a2 i2 + a3 i3 with components in C.
/// The commuting complex unit lives inside each component, so H(C) has zero
/// divisors (a != 0 with a*conj(a) = 0) and not every nonzero element is
/// invertible. Values are immutable in spirit: every operation returns a new
/// quaternion, and constructors reject non-finite components.
class Quaternion {
public:
    Quaternion() = default;

    Quaternion(Complex s, Complex v1, Complex v2, Complex v3) : s_(s), v_{v1, v2, v3} {
        check_finite();
    }

    Quaternion(Complex s, const std::array<Complex, 3>& v) : s_(s), v_(v) { check_finite(); }

    static Quaternion scalar(Complex s) { return Quaternion(s, 0.0, 0.0, 0.0); }
    static Quaternion vector(Complex v1, Complex v2, Complex v3) {
        return Quaternion(0.0, v1, v2, v3);
    }
    static Quaternion vector(const std::array<Complex, 3>& v) { return Quaternion(0.0, v); }

    /// Basis element i_k, k = 0..3 (i_0 is the unit).
    static Quaternion basis(int k) {
        Quaternion q;
        if (k == 0)
            q.s_ = 1.0;
        else
            q.v_[static_cast<std::size_t>(k - 1)] = 1.0;
        return q;
    }

    Complex scalar_part() const noexcept { return s_; }
    const std::array<Complex, 3>& vector_part() const noexcept { return v_; }

    /// Component a_k, k = 0..3.
    Complex operator[](int k) const noexcept {
        return k == 0 ? s_ : v_[static_cast<std::size_t>(k - 1)];
    }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return raw(a.s_ + b.s_, {a.v_[0] + b.v_[0], a.v_[1] + b.v_[1], a.v_[2] + b.v_[2]});
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return raw(a.s_ - b.s_, {a.v_[0] - b.v_[0], a.v_[1] - b.v_[1], a.v_[2] - b.v_[2]});
    }
    friend Quaternion operator-(const Quaternion& a) {
        return raw(-a.s_, {-a.v_[0], -a.v_[1], -a.v_[2]});
    }
    friend Quaternion operator*(Complex c, const Quaternion& a) {
        return raw(c * a.s_, {c * a.v_[0], c * a.v_[1], c * a.v_[2]});
    }
    friend Quaternion operator*(const Quaternion& a, Complex c) { return c * a; }
    friend Quaternion operator*(double c, const Quaternion& a) { return Complex(c) * a; }

    /// Full quaternionic product
    ///   a b = a0 b0 - <a_vec, b_vec> + a0 b_vec + b0 a_vec + [a_vec, b_vec].
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        const Complex s = a.s_ * b.s_ - (a.v_[0] * b.v_[0] + a.v_[1] * b.v_[1] + a.v_[2] * b.v_[2]);
        std::array<Complex, 3> v{
            a.s_ * b.v_[0] + b.s_ * a.v_[0] + (a.v_[1] * b.v_[2] - a.v_[2] * b.v_[1]),
            a.s_ * b.v_[1] + b.s_ * a.v_[1] + (a.v_[2] * b.v_[0] - a.v_[0] * b.v_[2]),
            a.s_ * b.v_[2] + b.s_ * a.v_[2] + (a.v_[0] * b.v_[1] - a.v_[1] * b.v_[0])};
        return raw(s, v);
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.s_ == b.s_ && a.v_ == b.v_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << "(" << q.s_ << ", " << q.v_[0] << ", " << q.v_[1] << ", " << q.v_[2] << ")";
    }

private:
    static Quaternion raw(Complex s, const std::array<Complex, 3>& v) {
        Quaternion q;
        q.s_ = s;
        q.v_ = v;
        return q;
    }

    void check_finite() const {
        const auto finite = [](Complex c) {
            return std::isfinite(c.real()) && std::isfinite(c.imag());
        };
        if (!finite(s_) || !finite(v_[0]) || !finite(v_[1]) || !finite(v_[2]))
            throw DomainError("quaternion components must be finite");
    }

    Complex s_{};
    std::array<Complex, 3> v_{};
};

/// Quaternionic conjugation: scalar part kept, vector part negated.
/// Anti-homomorphism: conj(a b) = conj(b) conj(a).
inline Quaternion conj(const Quaternion& a) {
    return Quaternion(a.scalar_part(),
                      {-a.vector_part()[0], -a.vector_part()[1], -a.vector_part()[2]});
}

/// Euclidean norm sqrt(sum_k |a_k|^2) with |.| the complex modulus.
inline double norm(const Quaternion& a) {
    double acc = std::norm(a.scalar_part());
    for (const Complex& c : a.vector_part()) acc += std::norm(c);
    return std::sqrt(acc);
}

/// The complex scalar a*conj(a) = sum_k a_k^2 (no complex conjugation inside;
/// vanishes exactly on zero divisors).
inline Complex conj_product(const Quaternion& a) {
    Complex acc = a.scalar_part() * a.scalar_part();
    for (const Complex& c : a.vector_part()) acc += c * c;
    return acc;
}

/// Bilinear form <a_vec, b_vec> = sum_k a_k b_k on the vector parts. This is
/// the bilinear (not Hermitian) product. Scalar parts are ignored.
inline Complex dot(const Quaternion& a, const Quaternion& b) {
    Complex acc = 0.0;
    for (int k = 0; k < 3; ++k)
        acc += a.vector_part()[static_cast<std::size_t>(k)] *
               b.vector_part()[static_cast<std::size_t>(k)];
    return acc;
}

/// Vector cross product [a_vec, b_vec] as a pure-vector quaternion. Scalar
/// parts are ignored; for pure vectors, a b = -dot(a,b) + cross(a,b).
inline Quaternion cross(const Quaternion& a, const Quaternion& b) {
    const auto& u = a.vector_part();
    const auto& v = b.vector_part();
    return Quaternion::vector(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                              u[0] * v[1] - u[1] * v[0]);
}

namespace detail {
// a*conj(a) scales quadratically with a, hence the (1 + |a|^2) scaling.
inline bool conj_product_vanishes(const Quaternion& a) {
    const double n = norm(a);
    return std::abs(conj_product(a)) <= 1e-12 * (1.0 + n * n);
}
} // namespace detail

/// True iff a is a nonzero element with a*conj(a) = 0 (to tolerance). Zero
/// itself is not a zero divisor.
inline bool is_zero_divisor(const Quaternion& a) {
    if (a == Quaternion()) return false;
    return detail::conj_product_vanishes(a);
}

/// Inverse conj(a) / (a*conj(a)). Throws NotInvertibleError for zero and for
/// zero divisors, consistently with is_zero_divisor.
inline Quaternion inverse(const Quaternion& a) {
    if (detail::conj_product_vanishes(a))
        throw NotInvertibleError("quaternion is zero or a zero divisor");
    const Complex d = conj_product(a);
    const Quaternion c = conj(a);
    return Quaternion(c.scalar_part() / d,
                      {c.vector_part()[0] / d, c.vector_part()[1] / d, c.vector_part()[2] / d});
}

} // namespace mtcurv
