#include <catch2/catch_amalgamated.hpp>

#include "mtcurv/quaternion.hpp"
#include "test_util.hpp"

using namespace mtcurv;
using mtcurv::test::comp_dist;
using mtcurv::test::random_quaternion;

namespace {
const Complex I(0.0, 1.0);
const Quaternion one = Quaternion::basis(0);
const Quaternion i1 = Quaternion::basis(1);
const Quaternion i2 = Quaternion::basis(2);
const Quaternion i3 = Quaternion::basis(3);
} // namespace

TEST_CASE("basis products") {
    CHECK(comp_dist(i1 * i2, i3) == 0.0);
    CHECK(comp_dist(i2 * i3, i1) == 0.0);
    CHECK(comp_dist(i3 * i1, i2) == 0.0);
    CHECK(comp_dist(i2 * i1, -i3) == 0.0);
    CHECK(comp_dist(i1 * i1, -one) == 0.0);
}

TEST_CASE("product formula on simple values") {
    const Quaternion a = one + i1;
    const Quaternion b = one - i1;
    CHECK(comp_dist(a * b, 2.0 * one) == 0.0);

    // pure vectors: a b = -<a,b> + [a,b]
    CHECK(comp_dist(i1 * i2, -Quaternion::scalar(dot(i1, i2)) + cross(i1, i2)) == 0.0);
}

TEST_CASE("conjugation") {
    const Quaternion a = one + 2.0 * i1;
    CHECK(comp_dist(conj(a), one - 2.0 * i1) == 0.0);
    CHECK(comp_dist(conj(Quaternion::scalar(3.5)), Quaternion::scalar(3.5)) == 0.0);
    // anti-homomorphism on a concrete case: conj(i1 i2) = (-i2)(-i1)
    CHECK(comp_dist(conj(i1 * i2), (-i2) * (-i1)) == 0.0);
    CHECK(comp_dist(conj(i1 * i2), -i3) == 0.0);
}

TEST_CASE("norm") {
    CHECK(norm(one + i1 + i2 + i3) == Catch::Approx(2.0));
    CHECK(norm(I * i1) == Catch::Approx(1.0));
    CHECK(norm(Quaternion()) == 0.0);
}

TEST_CASE("dot and cross use vector parts only") {
    CHECK(dot(i1, i1) == Complex(1.0));
    CHECK(dot(I * i1, I * i1) == Complex(-1.0));   // bilinear, not Hermitian
    CHECK(dot(i1, i2) == Complex(0.0));
    CHECK(comp_dist(cross(i1, i2), i3) == 0.0);
    CHECK(comp_dist(cross(i1, i1), Quaternion()) == 0.0);
    CHECK(comp_dist(cross(i2, i1), -i3) == 0.0);
    // scalar parts are ignored
    CHECK(dot(one + i1, one + i1) == Complex(1.0));
}

TEST_CASE("inverse") {
    CHECK(comp_dist(inverse(i1), -i1) == 0.0);
    CHECK(comp_dist(inverse(2.0 * one), 0.5 * one) == 0.0);
    CHECK_THROWS_AS(inverse(one + I * i1), NotInvertibleError);
    CHECK_THROWS_AS(inverse(Quaternion()), NotInvertibleError);
}

TEST_CASE("zero divisors") {
    CHECK(is_zero_divisor(one + I * i1));
    CHECK_FALSE(is_zero_divisor(one + i1));
    CHECK_FALSE(is_zero_divisor(Quaternion()));   // zero itself is excluded
}

TEST_CASE("constructors reject non-finite components") {
    CHECK_THROWS_AS(Quaternion(Complex(std::nan(""), 0.0), 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Quaternion(0.0, Complex(0.0, INFINITY), 0.0, 0.0), DomainError);
}

TEST_CASE("associativity") {
    SECTION("exact for integer components") {
        Rng rng(7);
        for (int n = 0; n < 200; ++n) {
            const auto c = [&] {
                return Complex(static_cast<double>(rng.below(7) - 3),
                               static_cast<double>(rng.below(7) - 3));
            };
            const Quaternion a(c(), c(), c(), c());
            const Quaternion b(c(), c(), c(), c());
            const Quaternion d(c(), c(), c(), c());
            CHECK(comp_dist((a * b) * d, a * (b * d)) == 0.0);
        }
    }
    SECTION("1e-12 relative for random samples") {
        Rng rng(11);
        for (int n = 0; n < 500; ++n) {
            const Quaternion a = random_quaternion(rng);
            const Quaternion b = random_quaternion(rng);
            const Quaternion d = random_quaternion(rng);
            const Quaternion lhs = (a * b) * d;
            const Quaternion rhs = a * (b * d);
            const double scale = std::max(1.0, mtcurv::test::comp_mag(lhs));
            CHECK(comp_dist(lhs, rhs) / scale < 1e-12);
        }
    }
}

TEST_CASE("conjugation anti-homomorphism over 1000 random quaternions") {
    Rng rng(13);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        worst = std::max(worst, comp_dist(conj(a * b), conj(b) * conj(a)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("pure-vector product law is exact") {
    Rng rng(17);
    for (int n = 0; n < 500; ++n) {
        const Quaternion a = Quaternion::vector(random_quaternion(rng).vector_part());
        const Quaternion b = Quaternion::vector(random_quaternion(rng).vector_part());
        const Quaternion expected = -Quaternion::scalar(dot(a, b)) + cross(a, b);
        CHECK(comp_dist(a * b, expected) == 0.0);
    }
}

TEST_CASE("norm is multiplicative on the real subalgebra") {
    Rng rng(19);
    for (int n = 0; n < 500; ++n) {
        const Quaternion a = random_quaternion(rng, /*complex_parts=*/false);
        const Quaternion b = random_quaternion(rng, /*complex_parts=*/false);
        const double lhs = norm(a * b);
        const double rhs = norm(a) * norm(b);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("inverse round trip whenever invertible") {
    Rng rng(23);
    int checked = 0;
    for (int n = 0; n < 500; ++n) {
        const Quaternion a = random_quaternion(rng);
        if (a == Quaternion() || is_zero_divisor(a)) continue;
        CHECK(comp_dist(a * inverse(a), one) <= 1e-10);
        ++checked;
    }
    CHECK(checked > 400);
}
