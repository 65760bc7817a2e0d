#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "mtcurv/errors.hpp"

namespace mtcurv {

enum class FdScheme { central2, central4, richardson };

inline const char* to_string(FdScheme s) noexcept {
    switch (s) {
    case FdScheme::central2: return "central2";
    case FdScheme::central4: return "central4";
    case FdScheme::richardson: return "richardson";
    }
    return "?";
}

/// Numerical derivative of a scalar function of one variable. `central2` and
/// `central4` are fixed stencils at the given step; `richardson` runs a
/// Neville tableau over halved steps and keeps the entry with the smallest
/// error estimate.
template <class F>
double fd_derivative(F&& f, double x, double step, FdScheme scheme) {
    if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
    switch (scheme) {
    case FdScheme::central2:
        return (f(x + step) - f(x - step)) / (2.0 * step);
    case FdScheme::central4:
        return (-f(x + 2.0 * step) + 8.0 * f(x + step) - 8.0 * f(x - step) + f(x - 2.0 * step)) /
               (12.0 * step);
    case FdScheme::richardson: {
        constexpr std::size_t kRounds = 10;
        std::array<std::array<double, kRounds>, kRounds> tableau{};
        double h = step;
        tableau[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
        double best = tableau[0][0];
        double best_err = 1e300;
        for (std::size_t i = 1; i < kRounds; ++i) {
            h *= 0.5;
            tableau[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
            double factor = 4.0;
            for (std::size_t j = 1; j <= i; ++j) {
                tableau[j][i] =
                    (factor * tableau[j - 1][i] - tableau[j - 1][i - 1]) / (factor - 1.0);
                factor *= 4.0;
                const double err = std::fabs(tableau[j][i] - tableau[j - 1][i]) +
                                   std::fabs(tableau[j][i] - tableau[j - 1][i - 1]);
                if (err <= best_err) {
                    best_err = err;
                    best = tableau[j][i];
                }
            }
            // Stop once roundoff starts to dominate.
            if (std::fabs(tableau[i][i] - tableau[i - 1][i - 1]) >= 2.0 * best_err + 1e-300) break;
        }
        return best;
    }
    }
    throw DomainError("unknown finite-difference scheme");
}

} // namespace mtcurv
