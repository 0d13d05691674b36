#pragma once

// Crossing quantities at kappa = 6 for the threefold-symmetric six-point
// configuration: unit disc with marked boundary points 1, u, j, ju, j^2, j^2u
// where j = e^{2 i pi / 3} and u = e^{i theta} runs over the arc from 1 to j.
// Everything is a function of one variable w = sin^2(3 theta / 2), built from
// two hypergeometric densities h1, h2, their tail integrals g1, g2, and the
// constants c1, c2, c3 fixed by the boundary behaviour as w -> 0.

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "gamma.hpp"
#include "hypergeometric.hpp"
#include "quadrature.hpp"

namespace multisle {

struct HexDensities {
    double h1, h2;
};

struct HexIntegrals {
    double g1, g2;
};

struct HexConstants {
    double c1, c2, c3;
};

// Event probabilities for the colouring with three alternating "open" sides.
// two_side is the probability of each single rotation (there are three of
// them, all equal by symmetry), so the five elementary probabilities are
// mercedes, none, and two_side three times.
struct HexEvents {
    double w;
    double mercedes; // all three open sides joined through one cluster
    double two_side; // a given pair of open sides joined, the third one not
    double none;     // no two open sides joined
};

namespace detail {

inline constexpr double hex_half_pi = 1.57079632679489661923;
inline constexpr double hex_arc_end = 2.09439510239319549231; // 2 pi / 3

// 2F1(A,B;C;1-w) with the argument given through its distance w from 1;
// small w goes through the connection series directly so no precision is
// lost forming 1 - w.
inline double hexF(double A, double B, double C, double w) {
    return (w <= 0.5) ? hyp2f1_near_one(A, B, C, w)
                      : hyp2f1(A, B, C, 1.0 - w);
}

} // namespace detail

// The two densities
//   h1(w) = w^{-1/2} 2F1(5/6,5/6;3/2;1-w)
//   h2(w) = w^{-1/2} (1-w)^{-1/2} 2F1(1/3,1/3;1/2;1-w)
// on (0,1).  Both blow up like w^{-2/3} at 0; h2 also like (1-w)^{-1/2} at 1,
// while the hypergeometric factors themselves tend to 1 there.
inline HexDensities h_functions(double w) {
    if (!(w > 0.0 && w < 1.0))
        throw invalid_argument("h_functions: need w in (0,1)");
    double pw = std::pow(w, -0.5);
    double h1 = pw * detail::hexF(5.0 / 6.0, 5.0 / 6.0, 1.5, w);
    double h2 = pw * std::pow(1.0 - w, -0.5) * detail::hexF(1.0 / 3.0, 1.0 / 3.0, 0.5, w);
    return {h1, h2};
}

// Tail integrals g_i(w) = int_w^1 h_i(s) ds on [0,1].  The substitution
// s = sin^2(alpha) absorbs both square-root factors:
//   g1 = int 2 cos(alpha) 2F1(5/6,5/6;3/2;cos^2 alpha) d alpha
//   g2 = int 2            2F1(1/3,1/3;1/2;cos^2 alpha) d alpha
// over [asin sqrt w, pi/2], leaving only an integrable alpha^{-1/3} blow-up
// at alpha = 0 which is hit when w = 0.
inline HexIntegrals g_functions(double w, double rel_tol = 1e-12) {
    if (!(w >= 0.0 && w <= 1.0))
        throw invalid_argument("g_functions: need w in [0,1]");
    if (w == 1.0) return {0.0, 0.0};
    double a0 = std::asin(std::sqrt(w));

    // 1 - cos^2(alpha) = sin^2(alpha) evaluated from the endpoint offset, so
    // the hypergeometric argument keeps full precision at the singular end
    auto sin2 = [a0](double alpha, double ac) {
        double sn = (ac >= 0.0) ? std::sin(a0 + ac) : std::sin(alpha);
        return sn * sn;
    };
    auto f1 = [&](double alpha, double ac) {
        double u = sin2(alpha, ac);
        if (u == 0.0) return 0.0; // offset underflow; the node weight there is ~1e-290
        double ca = (ac < 0.0) ? std::sin(-ac) : std::cos(alpha);
        return 2.0 * ca * detail::hexF(5.0 / 6.0, 5.0 / 6.0, 1.5, u);
    };
    auto f2 = [&](double alpha, double ac) {
        double u = sin2(alpha, ac);
        if (u == 0.0) return 0.0;
        return 2.0 * detail::hexF(1.0 / 3.0, 1.0 / 3.0, 0.5, u);
    };
    return {tanh_sinh(f1, a0, detail::hex_half_pi, rel_tol),
            tanh_sinh(f2, a0, detail::hex_half_pi, rel_tol)};
}

// The matching constants:
//   c2 = sqrt(3) Gamma(2/3)^3 / (2 pi^2)
//   c1 = (sqrt(3) / (2^{2/3} pi))^5 Gamma(2/3)^9
//   c3 = 1 - c1 g1(0)          (normalisation at the degenerate corner w = 0)
// The identities c1/c2 = 2 Gamma(5/6)^2 / Gamma(1/3)^2 and c2 g2(0) = 1 are
// consequences, exercised in the tests rather than assumed here.
inline HexConstants hex_constants(double rel_tol = 1e-12) {
    const double pi = 3.14159265358979323846;
    double g23 = gamma_fn(2.0 / 3.0);
    double c2 = std::sqrt(3.0) * g23 * g23 * g23 / (2.0 * pi * pi);
    double c1 = std::pow(std::sqrt(3.0) / (std::pow(2.0, 2.0 / 3.0) * pi), 5.0) *
                std::pow(g23, 9.0);
    double c3 = 1.0 - c1 * g_functions(0.0, rel_tol).g1;
    return {c1, c2, c3};
}

namespace detail {

inline const HexConstants& hex_constants_cached() {
    static const HexConstants k = hex_constants();
    return k;
}

} // namespace detail

// All five elementary crossing events at u = e^{i theta}, theta in
// (0, 2 pi / 3).  With g+ = c1 g1(w) + c3 (even under u <-> j/u) and
// g- = c2 g2(w) (odd), the probability that all three open sides meet is
// (g+ - g-)/2 on the first half of the arc and (g+ + g-)/2 on the second;
// "none" is the mirror value, and each single-pair event takes an equal
// share of the remainder 1 - g+.
inline HexEvents hex_event_probabilities(double theta, double rel_tol = 1e-12) {
    if (!(theta > 0.0 && theta < detail::hex_arc_end))
        throw invalid_argument("hex_event_probabilities: need theta in (0, 2 pi / 3)");
    double sn = std::sin(1.5 * theta);
    double w = sn * sn;
    const HexConstants& k = detail::hex_constants_cached();
    HexIntegrals g = g_functions(w, rel_tol);
    double gp = k.c1 * g.g1 + k.c3;
    double gm = k.c2 * g.g2;
    double sign = (theta <= detail::hex_arc_end / 2.0) ? 1.0 : -1.0;
    return {w,
            0.5 * (gp - sign * gm),
            (1.0 - gp) / 3.0,
            0.5 * (gp + sign * gm)};
}

inline double mercedes_probability(double theta, double rel_tol = 1e-12) {
    return hex_event_probabilities(theta, rel_tol).mercedes;
}

inline double mercedes_probability(cplx u, double rel_tol = 1e-12) {
    if (std::abs(std::abs(u) - 1.0) > 1e-9)
        throw invalid_argument("mercedes_probability: u must lie on the unit circle");
    return mercedes_probability(std::arg(u), rel_tol);
}

// Probability that a given pair of the three open sides of the regular
// hexagon is joined without the third: (2/3) (sqrt3 / (2^{2/3} pi))^5
// Gamma(2/3)^9 3F2(1,5/6,5/6;3/2,3/2;1).  Also reachable as (1 - c3)/3;
// the two routes are independent and compared in the tests.
inline double regular_hexagon_two_side_probability() {
    const double pi = 3.14159265358979323846;
    double g23 = gamma_fn(2.0 / 3.0);
    return (2.0 / 3.0) *
           std::pow(std::sqrt(3.0) / (std::pow(2.0, 2.0 / 3.0) * pi), 5.0) *
           std::pow(g23, 9.0) * hyp3f2_at_one(1.0, 5.0 / 6.0, 5.0 / 6.0, 1.5, 1.5);
}

} // namespace multisle
