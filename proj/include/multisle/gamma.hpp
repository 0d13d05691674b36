#pragma once

// Gamma and beta functions on the complex plane via the Lanczos approximation
// (g = 7, 9-term coefficient set, the standard published one).  Reflection
// handles Re z < 1/2.  Values are deterministic across platforms because the
// coefficient set is fixed.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "errors.hpp"

namespace multisle {

namespace detail {
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline bool is_nonpositive_integer(const cplx& z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol;
}
} // namespace detail

inline cplx gamma_fn(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw std::invalid_argument("gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    }
    z -= 1.0;
    cplx x = detail::lanczos_coef[0];
    for (int i = 1; i < 9; ++i) x += detail::lanczos_coef[i] / (z + cplx(i, 0));
    cplx t = z + (detail::lanczos_g + 0.5);
    const double sqrt2pi = 2.5066282746310002;
    return sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline double gamma_fn(double x) {
    cplx v = gamma_fn(cplx(x, 0.0));
    return v.real();
}

// log|Gamma| with the same coefficients, real argument x > 0.
inline double lgamma_fn(double x) {
    if (x <= 0.0) throw std::invalid_argument("lgamma: requires x > 0");
    if (x < 0.5) {
        const double pi = 3.14159265358979323846;
        return std::log(pi / std::sin(pi * x)) - lgamma_fn(1.0 - x);
    }
    double z = x - 1.0;
    double s = detail::lanczos_coef[0];
    for (int i = 1; i < 9; ++i) s += detail::lanczos_coef[i] / (z + i);
    double t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * 3.14159265358979323846) + (z + 0.5) * std::log(t) - t + std::log(s);
}

inline double beta_fn(double a, double b) {
    return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

} // namespace multisle
