#pragma once

// The linear system each crossing quantity must satisfy: one second-order
// operator per marked point plus the three global vector fields (translation,
// dilation, special conformal).  Solutions are checked numerically by central
// finite differences with a fitted convergence order, and the large-kappa
// polynomial solution space is built exactly in integer arithmetic.

#include <multisle/errors.hpp>
#include <multisle/pairings.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace multisle {

using RealField = std::function<double(const std::vector<double>&)>;

enum class OperatorKind { second_order, translation, dilation, special_conformal };

struct SystemOperator {
    OperatorKind kind;
    int k = 0; // 1-based marked point, second_order only
    double kappa;
    int n;

    std::string name() const {
        switch (kind) {
            case OperatorKind::second_order: return "L" + std::to_string(k);
            case OperatorKind::translation: return "l[-1]";
            case OperatorKind::dilation: return "l[0]";
            default: return "l[1]";
        }
    }
};

inline std::vector<SystemOperator> system_operators(int n, double kappa) {
    if (n < 1) throw invalid_argument("system_operators: n must be positive");
    if (!(kappa > 0.0)) throw invalid_argument("system_operators: kappa must be positive");
    std::vector<SystemOperator> ops;
    for (int k = 1; k <= 2 * n; ++k)
        ops.push_back({OperatorKind::second_order, k, kappa, n});
    ops.push_back({OperatorKind::translation, 0, kappa, n});
    ops.push_back({OperatorKind::dilation, 0, kappa, n});
    ops.push_back({OperatorKind::special_conformal, 0, kappa, n});
    return ops;
}

namespace detail {

struct FdTable {
    double f0;
    std::vector<double> d1, d2; // central first/second differences per coordinate
};

inline FdTable fd_table(const RealField& f, std::vector<double> x, double h) {
    FdTable t;
    t.f0 = f(x);
    const int m = static_cast<int>(x.size());
    t.d1.resize(m);
    t.d2.resize(m);
    for (int k = 0; k < m; ++k) {
        double xs = x[k];
        x[k] = xs + h;
        double fp = f(x);
        x[k] = xs - h;
        double fm = f(x);
        x[k] = xs;
        t.d1[k] = (fp - fm) / (2.0 * h);
        t.d2[k] = (fp - 2.0 * t.f0 + fm) / (h * h);
    }
    return t;
}

// residual and the sum of absolute term magnitudes (cancellation scale)
inline std::pair<double, double> operator_terms(const SystemOperator& op,
                                                const std::vector<double>& x, const FdTable& t) {
    const int m = static_cast<int>(x.size());
    double acc = 0.0, mag = 0.0;
    auto add = [&](double v) { acc += v; mag += std::abs(v); };
    switch (op.kind) {
        case OperatorKind::second_order: {
            const int k = op.k - 1;
            add(0.5 * op.kappa * t.d2[k]);
            for (int l = 0; l < m; ++l) {
                if (l == k) continue;
                double d = x[l] - x[k];
                add(2.0 * t.d1[l] / d);
                add((op.kappa - 6.0) / op.kappa * t.f0 / (d * d));
            }
            break;
        }
        case OperatorKind::translation:
            for (int k = 0; k < m; ++k) add(t.d1[k]);
            break;
        case OperatorKind::dilation: {
            for (int k = 0; k < m; ++k) add(x[k] * t.d1[k]);
            add(-op.n * (1.0 - 6.0 / op.kappa) * t.f0);
            break;
        }
        case OperatorKind::special_conformal: {
            double sx = 0.0;
            for (int k = 0; k < m; ++k) {
                add(x[k] * x[k] * t.d1[k]);
                sx += x[k];
            }
            add(-(1.0 - 6.0 / op.kappa) * sx * t.f0);
            break;
        }
    }
    return {acc, mag};
}

inline void check_ordered(const std::vector<double>& x) {
    for (size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw invalid_argument("marked points must be strictly increasing");
}

inline double min_gap_of(const std::vector<double>& x) {
    double g = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < x.size(); ++i) g = std::min(g, x[i] - x[i - 1]);
    return g;
}

} // namespace detail

// One operator applied through central differences, O(h^2) consistent.
inline double apply_operator(const SystemOperator& op, const RealField& f,
                             const std::vector<double>& x, double h) {
    detail::check_ordered(x);
    if (static_cast<int>(x.size()) != 2 * op.n)
        throw invalid_argument("apply_operator: expected 2n coordinates");
    if (!(h > 0.0) || !(h < detail::min_gap_of(x) / 10.0))
        throw invalid_argument("apply_operator: step too large");
    detail::FdTable t = detail::fd_table(f, x, h);
    return detail::operator_terms(op, x, t).first;
}

// Residual table over a decreasing step ladder.  An operator passes when its
// residuals shrink with fitted order >= 1.8, or when they already sit at the
// cancellation floor (ten digits below the summed term magnitudes), which is
// how identically-zero residuals are recognized.
struct AnnihilationReport {
    std::vector<SystemOperator> ops;
    std::vector<double> steps;                   // absolute steps
    std::vector<std::vector<double>> residuals;  // [op][step]
    std::vector<double> scale;                   // per-op term magnitude
    std::vector<double> order;                   // NaN when floored
    std::vector<bool> floored, op_pass;
    bool pass = false;
};

inline AnnihilationReport verify_annihilation(const RealField& f, const std::vector<double>& x,
                                              double kappa,
                                              std::vector<double> rel_steps = {1e-2, 1e-3}) {
    detail::check_ordered(x);
    if (x.size() % 2 != 0 || x.empty())
        throw invalid_argument("verify_annihilation: expected 2n coordinates");
    if (rel_steps.size() < 2)
        throw invalid_argument("verify_annihilation: need at least two steps");
    for (size_t i = 1; i < rel_steps.size(); ++i)
        if (!(rel_steps[i] < rel_steps[i - 1] && rel_steps.back() > 0.0))
            throw invalid_argument("verify_annihilation: steps must decrease");

    const int n = static_cast<int>(x.size()) / 2;
    AnnihilationReport rep;
    rep.ops = system_operators(n, kappa);
    const double g = detail::min_gap_of(x);
    const int S = static_cast<int>(rel_steps.size());
    const int O = static_cast<int>(rep.ops.size());
    for (double rs : rel_steps) rep.steps.push_back(rs * g);
    rep.residuals.assign(O, std::vector<double>(S, 0.0));
    rep.scale.assign(O, 0.0);

    for (int s = 0; s < S; ++s) {
        detail::FdTable t = detail::fd_table(f, x, rep.steps[s]);
        for (int o = 0; o < O; ++o) {
            auto [r, mag] = detail::operator_terms(rep.ops[o], x, t);
            rep.residuals[o][s] = r;
            rep.scale[o] = std::max(rep.scale[o], mag);
        }
    }

    rep.order.assign(O, std::numeric_limits<double>::quiet_NaN());
    rep.floored.assign(O, false);
    rep.op_pass.assign(O, false);
    rep.pass = true;
    for (int o = 0; o < O; ++o) {
        double floor = 1e-10 * rep.scale[o];
        bool under = true;
        for (int s = 0; s < S; ++s) under = under && std::abs(rep.residuals[o][s]) <= floor;
        rep.floored[o] = under;
        if (!under) {
            // least-squares slope of log|r| against log h
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (int s = 0; s < S; ++s) {
                double lx = std::log(rep.steps[s]);
                double ly = std::log(std::max(std::abs(rep.residuals[o][s]), 1e-300));
                sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            }
            rep.order[o] = (S * sxy - sx * sy) / (S * sxx - sx * sx);
        }
        rep.op_pass[o] = under || rep.order[o] >= 1.8;
        rep.pass = rep.pass && rep.op_pass[o];
    }
    return rep;
}

// ---- the large-kappa polynomial space --------------------------------------

// Exact polynomials in up to 16 variables, exponent packed four bits per
// variable, integer coefficients.  Only what the degenerate system needs.
struct ExactPoly {
    int vars = 0;
    std::map<std::uint64_t, long long> coef;

    static std::uint64_t bump(std::uint64_t key, int v, int by) {
        return key + (static_cast<std::uint64_t>(by) << (4 * v));
    }
    static int expo(std::uint64_t key, int v) { return static_cast<int>(key >> (4 * v) & 0xf); }

    void add_term(std::uint64_t key, long long c) {
        if (c == 0) return;
        auto it = coef.find(key);
        if (it == coef.end()) coef.emplace(key, c);
        else if ((it->second += c) == 0) coef.erase(it);
    }
    bool zero() const { return coef.empty(); }

    ExactPoly diff(int v) const {
        ExactPoly r;
        r.vars = vars;
        for (auto& [key, c] : coef) {
            int e = expo(key, v);
            if (e > 0) r.add_term(bump(key, v, -1), c * e);
        }
        return r;
    }
    ExactPoly mul_var(int v, int times = 1) const {
        ExactPoly r;
        r.vars = vars;
        for (auto& [key, c] : coef) r.add_term(bump(key, v, times), c);
        return r;
    }
    ExactPoly scaled(long long s) const {
        ExactPoly r;
        r.vars = vars;
        if (s != 0)
            for (auto& [key, c] : coef) r.coef.emplace(key, c * s);
        return r;
    }
    ExactPoly plus(const ExactPoly& other) const {
        ExactPoly r = *this;
        for (auto& [key, c] : other.coef) r.add_term(key, c);
        return r;
    }
    double eval(const std::vector<double>& x) const {
        double acc = 0.0;
        for (auto& [key, c] : coef) {
            double t = static_cast<double>(c);
            for (int v = 0; v < vars; ++v)
                for (int e = 0; e < expo(key, v); ++e) t *= x[static_cast<size_t>(v)];
            acc += t;
        }
        return acc;
    }
};

// product of (x_b - x_a) over the matching pairs, 0-based indices
inline ExactPoly matching_product(int vars, const std::vector<std::pair<int, int>>& pairs) {
    ExactPoly p;
    p.vars = vars;
    p.coef.emplace(0, 1);
    for (auto [a, b] : pairs) {
        ExactPoly q;
        q.vars = vars;
        for (auto& [key, c] : p.coef) {
            q.add_term(ExactPoly::bump(key, b, 1), c);
            q.add_term(ExactPoly::bump(key, a, 1), -c);
        }
        p = std::move(q);
    }
    return p;
}

// residuals of the degenerate system: d_kk, sum d_k, sum x_k d_k - n,
// sum x_k^2 d_k - (x_1 + ... + x_{2n}); all must vanish identically
inline std::vector<ExactPoly> kappa_inf_residuals(const ExactPoly& p, int n) {
    const int m = 2 * n;
    std::vector<ExactPoly> out;
    for (int k = 0; k < m; ++k) out.push_back(p.diff(k).diff(k));
    ExactPoly s1, s2, s3;
    s1.vars = s2.vars = s3.vars = p.vars;
    for (int k = 0; k < m; ++k) {
        ExactPoly d = p.diff(k);
        s1 = s1.plus(d);
        s2 = s2.plus(d.mul_var(k));
        s3 = s3.plus(d.mul_var(k, 2));
    }
    out.push_back(s1);
    out.push_back(s2.plus(p.scaled(-n)));
    for (int k = 0; k < m; ++k) s3 = s3.plus(p.mul_var(k).scaled(-1));
    out.push_back(s3);
    return out;
}

namespace detail {

// emits matchings in canonical order; sink returns false to stop enumeration
inline bool gen_matchings(int m, std::vector<int>& partner,
                          const std::function<bool(const std::vector<int>&)>& sink) {
    int a = -1;
    for (int i = 0; i < m; ++i)
        if (partner[i] < 0) { a = i; break; }
    if (a < 0) return sink(partner);
    for (int b = a + 1; b < m; ++b) {
        if (partner[b] >= 0) continue;
        partner[a] = b;
        partner[b] = a;
        bool more = gen_matchings(m, partner, sink);
        partner[a] = -1;
        partner[b] = -1;
        if (!more) return false;
    }
    return true;
}

inline std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// colex rank of an n-subset given as a bitmask
inline int subset_rank(std::uint32_t mask) {
    int r = 0, j = 1;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) r += static_cast<int>(binom(i, j++));
    return r;
}

} // namespace detail

// Independent matching products spanning the degenerate solution space.  The
// span is reduced by fraction-free integer elimination; for n <= 6 every
// matching is processed so the reported dimension is the certified rank of
// the whole generating set, while for larger n enumeration stops as soon as
// the Catalan count is reached.
struct KappaInfBasis {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> matchings; // 1-based pairs per element
    std::vector<ExactPoly> polys;
    long long matchings_processed = 0;
    bool span_certified = false; // true when the full generating set was reduced

    int dimension() const { return static_cast<int>(polys.size()); }
};

inline KappaInfBasis kappa_inf_basis(int n) {
    if (n < 1 || n > 8) throw invalid_argument("kappa_inf_basis: n must lie in 1..8");
    const int m = 2 * n;
    const int cols = static_cast<int>(detail::binom(m, n));
    const std::int64_t want = catalan(n);
    const bool full = n <= 6;

    KappaInfBasis out;
    out.n = n;
    out.span_certified = full;

    std::vector<std::vector<long long>> pivots;
    std::vector<int> pivcol;

    auto consume = [&](const std::vector<int>& partner) -> bool {
        ++out.matchings_processed;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m; ++i)
            if (partner[i] > i) pairs.emplace_back(i, partner[i]);
        // expand prod (x_b - x_a) over the 2^n sign choices
        std::vector<long long> row(static_cast<size_t>(cols), 0);
        for (std::uint32_t choice = 0; choice < (1u << n); ++choice) {
            std::uint32_t mask = 0;
            int sgn = 1;
            for (int i = 0; i < n; ++i) {
                if (choice >> i & 1) mask |= 1u << pairs[static_cast<size_t>(i)].second;
                else {
                    mask |= 1u << pairs[static_cast<size_t>(i)].first;
                    sgn = -sgn;
                }
            }
            row[static_cast<size_t>(detail::subset_rank(mask))] += sgn;
        }
        for (size_t p = 0; p < pivots.size(); ++p) {
            long long c = row[static_cast<size_t>(pivcol[p])];
            if (c == 0) continue;
            long long lead = pivots[p][static_cast<size_t>(pivcol[p])];
            long long g = std::gcd(c, lead);
            long long mr = lead / g, mc = c / g;
            for (int j = 0; j < cols; ++j)
                row[static_cast<size_t>(j)] =
                    row[static_cast<size_t>(j)] * mr - pivots[p][static_cast<size_t>(j)] * mc;
        }
        int lead = -1;
        for (int j = 0; j < cols; ++j)
            if (row[static_cast<size_t>(j)] != 0) { lead = j; break; }
        if (lead < 0) return true;
        long long g = 0;
        for (long long v : row) g = std::gcd(g, v < 0 ? -v : v);
        if (row[static_cast<size_t>(lead)] < 0) g = -g;
        for (auto& v : row) v /= g;
        pivots.push_back(std::move(row));
        pivcol.push_back(lead);

        std::vector<std::pair<int, int>> one_based;
        for (auto [a, b] : pairs) one_based.emplace_back(a + 1, b + 1);
        out.matchings.push_back(one_based);
        out.polys.push_back(matching_product(m, pairs));
        return full || static_cast<std::int64_t>(pivots.size()) < want;
    };

    std::vector<int> partner(static_cast<size_t>(m), -1);
    detail::gen_matchings(m, partner, consume);
    return out;
}

} // namespace multisle
