#pragma once

// Inverse-square pair determinants: the exceptionally rational crossing
// solutions and the continuum walk-bundle density they normalize to.

#include <multisle/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace multisle {

// det of the n x n matrix (x_i - y_j)^{-2}
inline double fomin_determinant(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n == 0 || y.size() != x.size())
        throw invalid_argument("fomin_determinant: need equally many sources and targets");
    for (double a : x)
        for (double b : y)
            if (a == b) throw invalid_argument("fomin_determinant: coincident points");
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d = x[static_cast<size_t>(i)] - y[static_cast<size_t>(j)];
            M(i, j) = 1.0 / (d * d);
        }
    return M.determinant();
}

namespace detail {

inline void check_nested(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw invalid_argument("fomin: need equally many sources and targets");
    for (size_t i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1]) || !(y[i] < y[i - 1]))
            throw invalid_argument("fomin: pairs must be nested");
    if (!(y[n - 1] > x[n - 1])) throw invalid_argument("fomin: pairs must be nested");
}

} // namespace detail

// Determinant scaled by the diagonal pair gaps: the probability that the n
// nested source-to-target strands stay disjoint.  Requires the nested
// boundary order x_1 < ... < x_n < y_n < ... < y_1.
inline double fomin_density(const std::vector<double>& x, const std::vector<double>& y) {
    detail::check_nested(x, y);
    double scale = 1.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        scale *= d * d;
    }
    return fomin_determinant(x, y) * scale;
}

struct FominCollapseReport {
    std::vector<double> gaps;
    std::vector<double> values;
    double extrapolated = 0.0;
    double reference = 0.0;
    double rel_error = 0.0;
    bool pass = false;
};

// Shrink the innermost pair onto its midpoint and extrapolate the density to
// zero gap; the limit must match the density of the remaining pairs.
inline FominCollapseReport fomin_collapse_check(const std::vector<double>& x,
                                                const std::vector<double>& y, int i,
                                                double tol = 1e-8) {
    detail::check_nested(x, y);
    const int n = static_cast<int>(x.size());
    if (i != n)
        throw invalid_argument("fomin_collapse_check: only the innermost pair can collapse");

    FominCollapseReport rep;
    if (n == 1) {
        rep.gaps = {y[0] - x[0]};
        rep.values = {fomin_density(x, y)};
        rep.extrapolated = rep.values[0];
        rep.reference = 1.0;
        rep.rel_error = std::abs(rep.extrapolated - rep.reference);
        rep.pass = rep.rel_error <= tol;
        return rep;
    }

    std::vector<double> xs = x, ys = y;
    const double mid = 0.5 * (x[static_cast<size_t>(n - 1)] + y[static_cast<size_t>(n - 1)]);
    double g = 0.1 * (y[static_cast<size_t>(n - 1)] - x[static_cast<size_t>(n - 1)]);
    const int J = 7;
    for (int j = 0; j < J; ++j, g *= 0.5) {
        xs[static_cast<size_t>(n - 1)] = mid - 0.5 * g;
        ys[static_cast<size_t>(n - 1)] = mid + 0.5 * g;
        rep.gaps.push_back(g);
        rep.values.push_back(fomin_density(xs, ys));
    }
    // Neville to g = 0
    std::vector<double> T = rep.values;
    for (int s = 1; s < J; ++s)
        for (int j = 0; j + s < J; ++j)
            T[static_cast<size_t>(j)] =
                (rep.gaps[static_cast<size_t>(j)] * T[static_cast<size_t>(j + 1)] -
                 rep.gaps[static_cast<size_t>(j + s)] * T[static_cast<size_t>(j)]) /
                (rep.gaps[static_cast<size_t>(j)] - rep.gaps[static_cast<size_t>(j + s)]);
    rep.extrapolated = T[0];

    std::vector<double> xr(x.begin(), x.end() - 1), yr(y.begin(), y.end() - 1);
    rep.reference = fomin_density(xr, yr);
    rep.rel_error = std::abs(rep.extrapolated - rep.reference) /
                    std::max(std::abs(rep.reference), 1e-300);
    rep.pass = rep.rel_error <= tol;
    return rep;
}

} // namespace multisle
