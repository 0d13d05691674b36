#pragma once

// Period determinants on the hyperelliptic curve t^2 = prod_j (s - x_j) and
// the kappa = 8 partition function built from them, together with the two
// finite-difference identities that certify the period matrix.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "contour.hpp"
#include "errors.hpp"

namespace multisle {

// Which polynomial family multiplies du / sqrt(prod (u - x_j)):
// monomial uses u^{i-1}, shifted uses (u - x_1)^{i-1}.
enum class PeriodBasis { shifted, monomial };

namespace detail {

inline void check_marked_points(const std::vector<double>& x, const char* who) {
    if (x.size() < 4 || x.size() % 2 != 0)
        throw invalid_argument(std::string(who) + ": need an even number (>= 4) of marked points");
    for (size_t k = 1; k < x.size(); ++k)
        if (!(x[k] > x[k - 1]))
            throw invalid_argument(std::string(who) + ": points must be strictly increasing");
}

// Loop radius for the cycle round (x_{2j-1}, x_{2j}): a quarter of the gap to
// the nearest neighbouring marked point.
inline double cycle_radius(const std::vector<double>& x, int j) {
    int m = static_cast<int>(x.size());
    int lo = 2 * j - 2, hi = 2 * j - 1;
    double g = std::numeric_limits<double>::infinity();
    if (lo - 1 >= 0) g = std::min(g, x[lo] - x[lo - 1]);
    if (hi + 1 < m) g = std::min(g, x[hi + 1] - x[hi]);
    return 0.25 * g;
}

inline double min_gap(const std::vector<double>& x) {
    double g = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < x.size(); ++k) g = std::min(g, x[k] - x[k - 1]);
    return g;
}

} // namespace detail

// One period: the i-th differential integrated over the clockwise cycle round
// the segment (x_{2j-1}, x_{2j}).  i and j are 1-based and run to n-1.  The
// square root keeps one determination, continued from the principal value at
// the loop's start; scale widens or tightens the loop for deformation checks.
inline cplx period_entry(const std::vector<double>& x, int i, int j,
                         PeriodBasis basis = PeriodBasis::shifted, double tol = 1e-12,
                         double scale = 1.0) {
    detail::check_marked_points(x, "period_entry");
    int n = static_cast<int>(x.size()) / 2;
    if (i < 1 || i > n - 1 || j < 1 || j > n - 1)
        throw invalid_argument("period_entry: indices must lie in 1..n-1");
    if (!(scale > 0.0)) throw invalid_argument("period_entry: scale must be positive");
    double a = x[2 * j - 2], b = x[2 * j - 1];
    Path C = stadium_loop(a, b, scale * detail::cycle_radius(x, j), true);
    MultiPowerIntegrand f;
    if (basis == PeriodBasis::monomial && i > 1) {
        f.singularities.push_back(cplx(0.0, 0.0));
        f.exponents.push_back(double(i - 1));
    }
    for (size_t k = 0; k < x.size(); ++k) {
        double e = (basis == PeriodBasis::shifted && k == 0) ? double(i - 1) - 0.5 : -0.5;
        f.singularities.push_back(cplx(x[k], 0.0));
        f.exponents.push_back(e);
    }
    f.base_point = C.front().at(0.0);
    f.base_phase = principal_phase(f.singularities, f.exponents, f.base_point);
    return integrate_branch_tracked(f, C, tol);
}

// (n-1) x (n-1) matrix of periods; rows run over differentials, columns over
// cycles.  All entries in one column share the determination anchored at that
// column's loop start, so the two bases give the same determinant exactly.
inline Eigen::MatrixXcd period_matrix(const std::vector<double>& x,
                                      PeriodBasis basis = PeriodBasis::shifted,
                                      double tol = 1e-12, double scale = 1.0) {
    detail::check_marked_points(x, "period_matrix");
    int n = static_cast<int>(x.size()) / 2;
    Eigen::MatrixXcd P(n - 1, n - 1);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j) P(i - 1, j - 1) = period_entry(x, i, j, basis, tol, scale);
    if (!P.allFinite()) throw numerical_error("period_matrix: quadrature produced a non-finite entry");
    return P;
}

// Partition function at kappa = 8: prod_{i<j} (x_j - x_i)^{1/4} |det P|.
// Annihilated by the full commutation system; no further pair factor applies.
inline double psi_ust(const std::vector<double>& x, double tol = 1e-12) {
    detail::check_marked_points(x, "psi_ust");
    double pref = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) pref *= x[j] - x[i];
    return std::pow(pref, 0.25) * std::abs(period_matrix(x, PeriodBasis::shifted, tol).determinant());
}

struct OmegaRecursionReport {
    double h = 0.0;
    // residuals[i-1] = max_j |d/dx1 P_{i+1,j} - (1/2 - i) P_{i,j}|, i = 1..n-2
    std::vector<double> residuals;
    double max_residual = 0.0;
    bool pass = true;
};

// Differentiating the shifted family in x_1 steps the row index down:
// d/dx1 P_{i+1,j} = (1/2 - i) P_{i,j}.  Central difference with step
// h = h_rel * (min gap).  n = 2 has no applicable rows and passes vacuously.
inline OmegaRecursionReport verify_omega_recursion(const std::vector<double>& x,
                                                   double h_rel = 1e-4, double tol = 1e-5,
                                                   double quad_tol = 1e-12) {
    detail::check_marked_points(x, "verify_omega_recursion");
    if (!(h_rel > 0.0) || !(tol > 0.0))
        throw invalid_argument("verify_omega_recursion: steps and tolerances must be positive");
    int n = static_cast<int>(x.size()) / 2;
    OmegaRecursionReport rep;
    rep.h = h_rel * detail::min_gap(x);
    if (n == 2) return rep;
    std::vector<double> xp(x), xm(x);
    xp[0] += rep.h;
    xm[0] -= rep.h;
    Eigen::MatrixXcd P = period_matrix(x, PeriodBasis::shifted, quad_tol);
    Eigen::MatrixXcd D = (period_matrix(xp, PeriodBasis::shifted, quad_tol) -
                          period_matrix(xm, PeriodBasis::shifted, quad_tol)) /
                         (2.0 * rep.h);
    for (int i = 1; i <= n - 2; ++i) {
        double worst = 0.0;
        for (int j = 1; j <= n - 1; ++j)
            worst = std::max(worst, std::abs(D(i, j - 1) - (0.5 - i) * P(i - 1, j - 1)));
        rep.residuals.push_back(worst);
        rep.max_residual = std::max(rep.max_residual, worst);
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

struct DriftIdentityReport {
    double h = 0.0;
    Eigen::MatrixXcd companion;  // (d/dx1 P) P^{-1}
    Eigen::VectorXcd lhs;        // 8 Tr(P^{-1} dP) e1 + 8 P d(P^{-1}) e1
    double residual = 0.0;       // max |lhs - 4 e2|
    double companion_residual = 0.0;
    bool pass = false;
};

// The periods feed the drift computation through the vector identity
//   8 Tr(P^{-1} dP) e1 + 8 P d(P^{-1}) e1 = 4 e2,   d = d/dx1,
// which needs at least two rows (n >= 3).  Both derivatives are literal
// central differences; d(P^{-1}) differences the inverse matrices.  The
// report also checks (dP) P^{-1} below its first row: subdiagonal 1/2 - i,
// zero elsewhere.
inline DriftIdentityReport verify_drift_identity(const std::vector<double>& x,
                                                 double h_rel = 1e-4, double tol = 1e-5,
                                                 double quad_tol = 1e-12) {
    detail::check_marked_points(x, "verify_drift_identity");
    if (!(h_rel > 0.0) || !(tol > 0.0))
        throw invalid_argument("verify_drift_identity: steps and tolerances must be positive");
    int n = static_cast<int>(x.size()) / 2;
    if (n < 3) throw invalid_argument("verify_drift_identity: need n >= 3 (at least 6 points)");
    DriftIdentityReport rep;
    rep.h = h_rel * detail::min_gap(x);
    std::vector<double> xp(x), xm(x);
    xp[0] += rep.h;
    xm[0] -= rep.h;
    Eigen::MatrixXcd P = period_matrix(x, PeriodBasis::shifted, quad_tol);
    Eigen::MatrixXcd Pp = period_matrix(xp, PeriodBasis::shifted, quad_tol);
    Eigen::MatrixXcd Pm = period_matrix(xm, PeriodBasis::shifted, quad_tol);
    Eigen::MatrixXcd D = (Pp - Pm) / (2.0 * rep.h);
    Eigen::MatrixXcd dPinv = (Pp.inverse() - Pm.inverse()) / (2.0 * rep.h);
    Eigen::MatrixXcd Pinv = P.inverse();
    cplx tr = (Pinv * D).trace();
    rep.lhs = 8.0 * tr * Eigen::VectorXcd::Unit(n - 1, 0) + 8.0 * (P * dPinv).col(0);
    Eigen::VectorXcd rhs = 4.0 * Eigen::VectorXcd::Unit(n - 1, 1);
    rep.residual = (rep.lhs - rhs).cwiseAbs().maxCoeff();
    rep.companion = D * Pinv;
    for (int r = 2; r <= n - 1; ++r)
        for (int c = 1; c <= n - 1; ++c) {
            cplx want = (c == r - 1) ? cplx(0.5 - (r - 1), 0.0) : cplx(0.0, 0.0);
            rep.companion_residual =
                std::max(rep.companion_residual, std::abs(rep.companion(r - 1, c - 1) - want));
        }
    rep.pass = rep.residual <= tol && rep.companion_residual <= tol;
    return rep;
}

} // namespace multisle
