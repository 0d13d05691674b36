#pragma once

// The master integrand phi_n(x,u), integration cycles indexed by pairings,
// the collapse constant, and the non-intersection probability built from
// the Euler-type integral.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "contour.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "pairings.hpp"

namespace multisle {

// 2n marked boundary points in increasing order plus the diffusion parameter.
struct Configuration {
    std::vector<double> x;
    double kappa = 0.0;

    Configuration(std::vector<double> pts, double kap) : x(std::move(pts)), kappa(kap) {
        if (!(kappa > 0.0)) throw invalid_argument("Configuration: kappa must be positive");
        if (x.size() < 2 || x.size() % 2 != 0)
            throw invalid_argument("Configuration: need an even number (2n >= 2) of points");
        for (size_t j = 1; j < x.size(); ++j)
            if (!(x[j - 1] < x[j]))
                throw invalid_argument("Configuration: points must be strictly increasing");
    }

    int n() const { return static_cast<int>(x.size()) / 2; }

    double min_gap() const {
        double g = x[1] - x[0];
        for (size_t j = 2; j < x.size(); ++j) g = std::min(g, x[j] - x[j - 1]);
        return g;
    }
};

// Constant-in-u prefactor of phi_n: the last point is distinguished.
inline double phi_prefactor(const Configuration& cfg) {
    const int m = 2 * cfg.n();
    const double a = 2.0 / cfg.kappa, b = 1.0 - 6.0 / cfg.kappa;
    double lg = 0.0;
    for (int j2 = 1; j2 < m - 1; ++j2)
        for (int j1 = 0; j1 < j2; ++j1) lg += a * std::log(cfg.x[j2] - cfg.x[j1]);
    for (int j = 0; j < m - 1; ++j) lg += b * std::log(cfg.x[m - 1] - cfg.x[j]);
    return std::exp(lg);
}

// The u-dependent part of phi_n as a multivariate power-product integrand,
// with the x prefactor folded in.  n-1 integration variables; every variable
// sees exponent -4/kappa at the first 2n-1 points, 12/kappa-2 at the last,
// and 8/kappa between variables.
inline ProductPowerIntegrand phi_integrand(const Configuration& cfg) {
    const int n = cfg.n(), m = 2 * n, V = n - 1;
    ProductPowerIntegrand phi;
    phi.points.reserve(m);
    for (double xx : cfg.x) phi.points.emplace_back(xx, 0.0);
    std::vector<double> row(m, -4.0 / cfg.kappa);
    row[m - 1] = 12.0 / cfg.kappa - 2.0;
    phi.point_exponents.assign(V, row);
    phi.cross_exponents.assign(V, std::vector<double>(V, 0.0));
    for (int i = 0; i < V; ++i)
        for (int j = i + 1; j < V; ++j) phi.cross_exponents[i][j] = 8.0 / cfg.kappa;
    phi.prefactor = phi_prefactor(cfg);
    return phi;
}

// Principal determination of phi_n at an explicit u tuple.
inline cplx phi_n(const Configuration& cfg, const std::vector<cplx>& u) {
    const int n = cfg.n(), m = 2 * n;
    if (static_cast<int>(u.size()) != n - 1)
        throw invalid_argument("phi_n: expected n-1 integration variables");
    const double pe = -4.0 / cfg.kappa, le = 12.0 / cfg.kappa - 2.0, ce = 8.0 / cfg.kappa;
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < u.size(); ++i) {
        for (int j = 0; j < m; ++j) {
            cplx d = u[i] - cfg.x[j];
            if (d == cplx(0.0, 0.0)) throw invalid_argument("phi_n: u hits a marked point");
            acc += (j == m - 1 ? le : pe) * std::log(d);
        }
        for (size_t i2 = i + 1; i2 < u.size(); ++i2) {
            cplx d = u[i2] - u[i];
            if (d == cplx(0.0, 0.0)) throw invalid_argument("phi_n: coincident u variables");
            acc += ce * std::log(d);
        }
    }
    return phi_prefactor(cfg) * std::exp(acc);
}

// Component i of the vector field whose u-divergence equals -L_k phi, where
// L_k is the second-order operator of the commutation system at point k
// (1-based).  Two shapes: a plain 2/(u_i-x_k) factor for k < 2n, and the
// rational correction at the distinguished point k = 2n.
inline cplx phi_flux(const Configuration& cfg, const std::vector<cplx>& u, int i, int k) {
    const int n = cfg.n(), m = 2 * n;
    if (i < 1 || i > n - 1) throw invalid_argument("phi_flux: variable index out of range");
    if (k < 1 || k > m) throw invalid_argument("phi_flux: point index out of range");
    cplx ui = u[i - 1];
    cplx f = 2.0 / (ui - cfg.x[k - 1]);
    if (k == m) {
        cplx g = (cfg.kappa - 8.0) / (ui - cfg.x[m - 1]);
        for (int j = 0; j < m - 1; ++j) g *= (ui - cfg.x[j]) / (cfg.x[m - 1] - cfg.x[j]);
        for (int j = 1; j <= n - 1; ++j) {
            if (j == i) continue;
            cplx ratio = (cfg.x[m - 1] - u[j - 1]) / (ui - u[j - 1]);
            g *= ratio * ratio;
        }
        f += g;
    }
    return f * phi_n(cfg, u);
}

// Which family of integration cycles to use.
struct CycleSpec {
    enum class Kind { pairing_product, nested };
    Kind kind = Kind::pairing_product;
    NonCrossingPairing pairing; // pairing_product only

    static CycleSpec product(NonCrossingPairing p) {
        return CycleSpec{Kind::pairing_product, std::move(p)};
    }
    static CycleSpec nested_family() { return CycleSpec{Kind::nested, {}}; }
};

// One commutator loop per pair not containing the last point.  Balloon
// clearance is a quarter of the smallest gap; strap height grows with the
// pair's width so nested pairs stack without touching.
inline Cycle pairing_cycle(const Configuration& cfg, const NonCrossingPairing& pr) {
    const int m = 2 * cfg.n();
    if (pr.points() != m) throw invalid_argument("pairing_cycle: pairing size mismatch");
    const double r = cfg.min_gap() / 4.0;
    Cycle cyc;
    for (auto [a, b] : pr.pair_list()) {
        if (b == m) continue; // the distinguished pair carries no loop
        double xa = cfg.x[a - 1], xb = cfg.x[b - 1];
        cyc.factors.push_back(pochhammer_cycle(xa, xb, r, (xb - xa) / 3.0));
    }
    return cyc;
}

// Lassos from the last point around x_{2n-1}, x_{2n-2}, ...: the nearer the
// target, the lower the cruise and the steeper the string, so the fan stays
// pairwise disjoint.
inline Cycle nested_cycle(const Configuration& cfg) {
    using std::numbers::pi;
    const int n = cfg.n(), m = 2 * n;
    const double g = cfg.min_gap(), r = g / 4.0;
    const double anchor = cfg.x[m - 1];
    const double delta = 0.9 / std::max(1, n - 2);
    Cycle cyc;
    for (int i = 1; i <= n - 1; ++i) {
        double target = cfg.x[m - 1 - i];
        double H = 0.5 * i * g;
        double phi = 0.5 * pi - (i - 1) * delta;
        cyc.factors.push_back(lasso_loop(anchor, target, r, H, phi));
    }
    return cyc;
}

inline Cycle build_cycle(const Configuration& cfg, const CycleSpec& spec) {
    if (spec.kind == CycleSpec::Kind::nested) return nested_cycle(cfg);
    return pairing_cycle(cfg, spec.pairing);
}

// Integral of phi_n over the product cycle; for n = 1 there is nothing to
// integrate and the value is the x prefactor itself.
inline cplx euler_solution(const Configuration& cfg, const CycleSpec& spec, double tol = 1e-10) {
    return integrate_product_cycle(phi_integrand(cfg), build_cycle(cfg, spec), tol);
}

// The collapse constant, in its Gamma-quotient form.  Undefined whenever
// 8/kappa is a positive integer.
inline double c_kappa(double kappa) {
    if (!(kappa > 0.0)) throw invalid_argument("c_kappa: kappa must be positive");
    double e = 8.0 / kappa;
    if (std::round(e) >= 1.0 && std::abs(e - std::round(e)) < 1e-12)
        throw invalid_argument("c_kappa: 8/kappa must not be a positive integer");
    const double pi = std::numbers::pi;
    return 4.0 * pi * pi / (gamma_fn(2.0 - e) * gamma_fn(4.0 / kappa) * gamma_fn(4.0 / kappa));
}

// Numerical check that collapsing a paired adjacent gap reproduces the
// one-pair-fewer integral times the collapse constant (in modulus).
struct CollapseReport {
    std::vector<double> gaps;
    std::vector<double> scaled; // gap^{6/kappa-1} |integral| per gap
    double extrapolated = 0.0;
    double reference = 0.0;
    double rel_error = 0.0;
    bool pass = false;
};

inline CollapseReport collapse_limit_check(const Configuration& cfg, const NonCrossingPairing& pr,
                                           int k, double tol = 1e-3, double quad_tol = 1e-10) {
    const int n = cfg.n(), m = 2 * n;
    if (pr.points() != m) throw invalid_argument("collapse_limit_check: pairing size mismatch");
    if (k < 1 || k + 1 >= m)
        throw invalid_argument("collapse_limit_check: need k with k+1 < 2n");
    if (pr.match[k] != k + 1)
        throw invalid_argument("collapse_limit_check: points k, k+1 are not paired");

    // reduced configuration and pairing with the collapsing pair removed
    std::vector<double> rx;
    for (int j = 0; j < m; ++j)
        if (j != k - 1 && j != k) rx.push_back(cfg.x[j]);
    Configuration reduced(rx, cfg.kappa);
    std::vector<std::pair<int, int>> rpairs;
    for (auto [a, b] : pr.pair_list()) {
        if (a == k) continue;
        auto shift = [k](int p) { return p > k + 1 ? p - 2 : p; };
        rpairs.emplace_back(shift(a), shift(b));
    }
    NonCrossingPairing rpr = make_pairing_from_pairs(n - 1, rpairs);

    CollapseReport rep;
    rep.reference = std::abs(c_kappa(cfg.kappa)) *
                    std::abs(euler_solution(reduced, CycleSpec::product(rpr), quad_tol));

    const double ex = 6.0 / cfg.kappa - 1.0;
    const double room = cfg.x[k + 1] - cfg.x[k - 1]; // k+1 < 2n, so x_{k+2} exists
    double eps = std::min(1e-2, 0.1 * room);
    const double rho = std::pow(10.0, -0.5);
    for (int s = 0; s < 5; ++s, eps *= rho) {
        std::vector<double> xs = cfg.x;
        xs[k] = xs[k - 1] + eps;
        Configuration moved(xs, cfg.kappa);
        cplx I = euler_solution(moved, CycleSpec::product(pr), quad_tol);
        rep.gaps.push_back(eps);
        rep.scaled.push_back(std::pow(eps, ex) * std::abs(I));
    }

    // iterated Aitken acceleration of the geometric-gap sequence
    std::vector<double> acc = rep.scaled;
    while (acc.size() >= 3) {
        std::vector<double> next;
        for (size_t j = 0; j + 2 < acc.size(); ++j) {
            double d1 = acc[j + 1] - acc[j], d2 = acc[j + 2] - acc[j + 1];
            double den = d2 - d1;
            next.push_back(std::abs(den) > 0.0 ? acc[j + 2] - d2 * d2 / den : acc[j + 2]);
        }
        acc = std::move(next);
    }
    rep.extrapolated = acc.empty() ? rep.scaled.back() : acc.back();
    rep.rel_error = std::abs(rep.extrapolated - rep.reference) / std::abs(rep.reference);
    rep.pass = rep.rel_error <= tol;
    return rep;
}

// Probability that loop-soup-decorated excursion bundles hook up the given
// pairing without collisions: the modulus of the Euler integral, gap-scaled
// and normalized by the collapse constant.  The fully nested pairing is
// integrated over the anchored-loop family, which carries the solution with
// the right decay as unpaired neighbours collide; every other pairing gets
// one commutator loop per pair.
inline double psi_nonintersection(const Configuration& cfg, const NonCrossingPairing& pr,
                                  double tol = 1e-10) {
    if (!(cfg.kappa < 8.0 / 3.0))
        throw invalid_argument("psi_nonintersection: kappa must lie in (0, 8/3)");
    const int n = cfg.n();
    if (pr.points() != 2 * n) throw invalid_argument("psi_nonintersection: pairing size mismatch");
    bool rainbow = true;
    for (int i = 1; i <= 2 * n && rainbow; ++i)
        if (pr.match[i] != 2 * n + 1 - i) rainbow = false;
    double c = std::abs(c_kappa(cfg.kappa));
    double lg = 0.0;
    const double ex = 6.0 / cfg.kappa - 1.0;
    for (auto [a, b] : pr.pair_list()) lg += ex * std::log(cfg.x[b - 1] - cfg.x[a - 1]);
    cplx I = euler_solution(cfg, rainbow ? CycleSpec::nested_family() : CycleSpec::product(pr),
                            tol);
    return std::pow(c, 1 - n) * std::exp(lg) * std::abs(I);
}

} // namespace multisle
