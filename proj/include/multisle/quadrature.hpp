#pragma once

// Real-axis quadrature building blocks: adaptive Gauss-Kronrod (7-15) and
// tanh-sinh for integrands with algebraic endpoint singularities.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace multisle {

namespace gk {
// Kronrod-15 abscissae (positive half) and weights, Gauss-7 embedded.
inline constexpr double xk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};
} // namespace gk

namespace detail {

template <typename F, typename R>
inline void gk15_panel(F&& f, double a, double b, R& result, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    R acc_k{}, acc_g{};
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            R v = f(c);
            acc_k += gk::wk[7] * v;
            acc_g += gk::wg[3] * v;
        } else {
            R v1 = f(c - h * gk::xk[i]);
            R v2 = f(c + h * gk::xk[i]);
            acc_k += gk::wk[i] * (v1 + v2);
            if (i % 2 == 1) acc_g += gk::wg[i / 2] * (v1 + v2);
        }
    }
    result = h * acc_k;
    err = std::abs(h) * std::abs(acc_k - acc_g);
}

template <typename F, typename R>
inline R gk_adaptive_rec(F& f, double a, double b, double tol_abs, int depth) {
    R v;
    double err;
    gk15_panel(f, a, b, v, err);
    if (err <= tol_abs || depth >= 60) {
        if (depth >= 60 && err > 1e3 * tol_abs)
            throw numerical_error("gk_adaptive: subdivision limit reached");
        return v;
    }
    double m = 0.5 * (a + b);
    return gk_adaptive_rec<F, R>(f, a, m, 0.5 * tol_abs, depth + 1) +
           gk_adaptive_rec<F, R>(f, m, b, 0.5 * tol_abs, depth + 1);
}

} // namespace detail

// Adaptive Gauss-Kronrod on [a,b] for smooth-ish integrands.  R is double or
// std::complex<double>.
template <typename R = double, typename F>
inline R gk_adaptive(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0) {
    R first;
    double err;
    detail::gk15_panel(f, a, b, first, err);
    double tol = std::max(abs_tol, rel_tol * std::abs(first));
    if (tol == 0.0) tol = 1e-300;
    return detail::gk_adaptive_rec<std::remove_reference_t<F>, R>(f, a, b, tol, 0);
}

// Tanh-sinh quadrature over (a,b).  Tolerates integrable algebraic
// singularities at either endpoint; nodes never touch the endpoints.
//
// The integrand may take either f(x) or f(x, xc), where xc is the exact
// distance to the nearer endpoint, signed like boost's tanh_sinh: xc = x - a
// on the left half, xc = x - b (negative) on the right.  Use the two-argument
// form when a singular endpoint sits away from zero, where x alone rounds
// onto the endpoint and loses the tail.
template <typename R = double, typename F>
inline R tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-12, int max_level = 12) {
    const double pi_half = 1.57079632679489661923;
    const double c = 0.5 * (b - a);
    const double tmax = 6.1; // beyond this the weights underflow in double

    auto eval = [&](double t, R& acc) {
        double sh = std::sinh(t);
        double u = pi_half * sh;
        double ch = std::cosh(u);
        double w = pi_half * std::cosh(t) / (ch * ch);
        if (w < 1e-290) return;
        // abscissa via its distance from the nearer endpoint; computing
        // mid + c*tanh(u) directly rounds onto the endpoint once t > ~3
        // and silently drops the tail of a singular integrand there
        double e2 = std::exp(-2.0 * std::abs(u));
        double d = c * (2.0 * e2 / (1.0 + e2)); // c * (1 - |tanh u|)
        if (d == 0.0) return;
        double xa = (u >= 0.0) ? b - d : a + d;
        if constexpr (std::is_invocable_v<F&, double, double>) {
            acc += R(w) * f(xa, (u >= 0.0) ? -d : d);
        } else {
            if (xa <= a || xa >= b) return;
            acc += R(w) * f(xa);
        }
    };

    double h = 1.0;
    R sum{};
    eval(0.0, sum);
    for (double t = h; t <= tmax; t += h) {
        eval(t, sum);
        eval(-t, sum);
    }
    R prev = c * h * sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            eval(t, sum);
            eval(-t, sum);
        }
        R cur = c * h * sum;
        if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::abs(cur))
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace multisle
