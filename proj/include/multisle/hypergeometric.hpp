#pragma once

// Gauss 2F1 for real parameters and argument z < 1, a 3F2(...;1) evaluator,
// and the chordal crossing-probability function built from them.

#include <cmath>
#include <cstdlib>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"

namespace multisle {

namespace detail {

inline bool is_nonpositive_int(double x) {
    return x <= 0.5 && std::abs(x - std::round(x)) < 1e-13;
}

// Plain power series, valid for |z| < 1 (use only for |z| <= ~0.6) or for
// terminating cases at any z.
inline double hyp2f1_series(double a, double b, double c, double z) {
    if (is_nonpositive_int(c) &&
        !(is_nonpositive_int(a) && a > c - 0.5) &&
        !(is_nonpositive_int(b) && b > c - 0.5))
        throw invalid_argument("hyp2f1: c is a non-positive integer");
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 2) return sum;
        if (term == 0.0) return sum;
    }
    throw numerical_error("hyp2f1: series did not converge");
}

} // namespace detail

// 2F1(a,b;c;1-u), the Euler connection series in u = 1 - z.  Taking the
// distance from 1 as the argument lets callers that know it exactly (say
// u = sin^2 of something small) keep full precision where forming 1 - u
// would cancel.  Needs 0 < u <= 0.6 and non-integer c-a-b.
inline double hyp2f1_near_one(double a, double b, double c, double u) {
    if (!(u > 0.0 && u <= 0.6))
        throw invalid_argument("hyp2f1_near_one: need 0 < 1-z <= 0.6");
    double s = c - a - b;
    if (std::abs(s - std::round(s)) < 1e-10)
        throw numerical_error("hyp2f1: z near 1 with integer c-a-b not supported");
    double p = gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b));
    double q = gamma_fn(c) * gamma_fn(-s) / (gamma_fn(a) * gamma_fn(b));
    return p * detail::hyp2f1_series(a, b, 1.0 - s, u) +
           q * std::pow(u, s) * detail::hyp2f1_series(c - a, c - b, 1.0 + s, u);
}

// 2F1(a,b;c;z) for real parameters, z < 1.  Handles terminating series at any
// z, direct series for moderate |z|, the Euler connection formula for
// z in (0.6, 1) when c-a-b is not an integer, and a Pfaff map for z < -0.6.
inline double hyp2f1(double a, double b, double c, double z) {
    using detail::is_nonpositive_int;
    if (z >= 1.0) throw invalid_argument("hyp2f1: need z < 1");
    if (is_nonpositive_int(a) || is_nonpositive_int(b))
        return detail::hyp2f1_series(a, b, c, z);
    if (std::abs(z) <= 0.6) return detail::hyp2f1_series(a, b, c, z);
    if (z < 0.0) {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), argument lands in (0,1)
        return std::pow(1.0 - z, -a) * hyp2f1(a, c - b, c, z / (z - 1.0));
    }
    return hyp2f1_near_one(a, b, c, 1.0 - z);
}

// 3F2(a1,a2,a3; b1,b2; 1).  Convergent iff s = b1+b2-a1-a2-a3 > 0; the tail
// of the partial sums behaves like N^{-s}, so a Richardson ladder on
// geometrically spaced partial sums converges fast.
inline double hyp3f2_at_one(double a1, double a2, double a3, double b1, double b2) {
    using detail::is_nonpositive_int;
    if (is_nonpositive_int(b1) || is_nonpositive_int(b2))
        throw invalid_argument("hyp3f2_at_one: pole in lower parameter");
    double s = b1 + b2 - a1 - a2 - a3;
    bool terminating = is_nonpositive_int(a1) || is_nonpositive_int(a2) || is_nonpositive_int(a3);
    if (!terminating && s <= 0.0)
        throw invalid_argument("hyp3f2_at_one: series diverges at z=1");

    if (terminating) {
        double term = 1.0, sum = 1.0;
        for (int k = 0; term != 0.0; ++k) {
            term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1.0));
            sum += term;
            if (k > 1000000) throw numerical_error("hyp3f2_at_one: runaway terminating series");
        }
        return sum;
    }

    const int N0 = 32, M = 6;
    const int Nmax = N0 << M;
    double term = 1.0, sum = 1.0;
    std::vector<double> T(M + 1);
    int next = N0, idx = 0;
    for (int k = 0; k < Nmax; ++k) {
        term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1.0));
        sum += term;
        if (k + 1 == next) {
            T[idx++] = sum;
            next *= 2;
        }
    }
    // partial sums T[m] = S_{N0 2^m}; eliminate N^{-s}, N^{-s-1}, ...
    for (int j = 0; j < M; ++j) {
        double fac = std::pow(2.0, s + j) - 1.0;
        for (int m = 0; m + j + 1 <= M; ++m)
            T[m] = T[m + 1] + (T[m + 1] - T[m]) / fac;
    }
    return T[0];
}

// Probability that chordal SLE(kappa) started between two boundary marks hits
// the boundary interval parameterised by the cross-ratio r in [0,1].
inline double chordal_crossing(double r, double kappa) {
    if (!(kappa > 0.0 && kappa < 8.0))
        throw invalid_argument("chordal_crossing: kappa must lie in (0,8)");
    if (r < 0.0 || r > 1.0)
        throw invalid_argument("chordal_crossing: r must lie in [0,1]");
    if (r == 0.0) return 0.0;
    if (r == 1.0) return 1.0;
    double u = 4.0 / kappa;
    double pref = gamma_fn(u) * gamma_fn(3.0 * u - 1.0) /
                  (gamma_fn(2.0 * u) * gamma_fn(2.0 * u - 1.0));
    return pref * std::pow(r, u / 2.0) * hyp2f1(u, 1.0 - u, 2.0 * u, r);
}

} // namespace multisle
