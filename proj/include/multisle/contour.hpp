#pragma once

// Piecewise line/arc paths in the complex plane, contour integration of
// products of complex powers with continuous branch tracking along the path,
// and the loop constructions (balloon, double-loop commutator, stadium,
// lasso) used by the cycle integrals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace multisle {

struct Segment {
    bool is_arc = false;
    cplx p0{}, p1{};          // line endpoints
    cplx center{};            // arc data
    double radius = 0.0, ang0 = 0.0, ang1 = 0.0;

    static Segment line(cplx a, cplx b) {
        Segment s;
        s.is_arc = false;
        s.p0 = a;
        s.p1 = b;
        return s;
    }
    static Segment arc(cplx c, double r, double a0, double a1) {
        Segment s;
        s.is_arc = true;
        s.center = c;
        s.radius = r;
        s.ang0 = a0;
        s.ang1 = a1;
        return s;
    }

    cplx at(double t) const {
        if (!is_arc) return p0 + t * (p1 - p0);
        double a = ang0 + t * (ang1 - ang0);
        return center + radius * cplx(std::cos(a), std::sin(a));
    }
    cplx deriv(double t) const {
        if (!is_arc) return p1 - p0;
        double a = ang0 + t * (ang1 - ang0);
        return cplx(0.0, 1.0) * (ang1 - ang0) * radius * cplx(std::cos(a), std::sin(a));
    }
    cplx start() const { return at(0.0); }
    cplx end() const { return at(1.0); }

    Segment reversed() const {
        Segment s = *this;
        if (is_arc) {
            s.ang0 = ang1;
            s.ang1 = ang0;
        } else {
            s.p0 = p1;
            s.p1 = p0;
        }
        return s;
    }
};

using Path = std::vector<Segment>;

inline Path reversed(const Path& p) {
    Path r;
    r.reserve(p.size());
    for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back(it->reversed());
    return r;
}

inline void append(Path& dst, const Path& src) { dst.insert(dst.end(), src.begin(), src.end()); }

inline double path_length(const Path& p) {
    double L = 0;
    for (const auto& s : p)
        L += s.is_arc ? std::abs(s.ang1 - s.ang0) * s.radius : std::abs(s.p1 - s.p0);
    return L;
}

// One multivalued factor (z - s)^alpha.  alpha == 0 entries carry no value
// but their argument is still threaded along the path (used to hand a
// consistent branch to nested integrals).
struct TrackedFactor {
    cplx s;
    double alpha;
};

struct BranchState {
    std::vector<double> theta; // continuous arg(z - s_l), one per factor
};

namespace detail {

inline double chain_arg(double prev, cplx w) {
    constexpr double twopi = 2.0 * std::numbers::pi;
    double raw = std::arg(w);
    return raw + twopi * std::round((prev - raw) / twopi);
}

inline const std::array<double, 15>& gk_sorted() {
    static const std::array<double, 15> nodes = [] {
        std::array<double, 15> a{};
        for (int i = 0; i < 7; ++i) a[i] = -gk::xk[i];
        a[7] = 0.0;
        for (int i = 8; i < 15; ++i) a[i] = gk::xk[14 - i];
        return a;
    }();
    return nodes;
}

} // namespace detail

inline BranchState principal_state(const std::vector<TrackedFactor>& fac, cplx z0) {
    BranchState st;
    st.theta.reserve(fac.size());
    for (const auto& f : fac) {
        cplx w = z0 - f.s;
        if (w == cplx(0.0, 0.0)) throw invalid_argument("branch state: path starts at a singularity");
        st.theta.push_back(std::arg(w));
    }
    return st;
}

// Integrates f(z, theta) dz along `path` with the branch arguments of every
// tracked factor threaded continuously through the quadrature nodes.  The
// callback receives the point and the per-factor continuous arguments and
// returns the integrand value (the dz jacobian is applied here).  `state`
// holds the arguments at the path start; empty means principal values.  On
// return it holds the arguments at the path end.
template <typename F>
class TrackedIntegrator {
  public:
    TrackedIntegrator(F& f, const std::vector<TrackedFactor>& fac, double rel_tol)
        : f_(f), fac_(fac), rel_tol_(rel_tol) {}

    cplx run(const Path& path, BranchState& state) {
        if (state.theta.empty() && !fac_.empty())
            state = principal_state(fac_, path.front().start());
        if (state.theta.size() != fac_.size())
            throw invalid_argument("branch state size mismatch");
        cplx total = 0.0;
        for (const auto& seg : path) total += segment(seg, 0.0, 1.0, state.theta, 0);
        return total;
    }

    long long evaluations() const { return evals_; }

  private:
    static constexpr int max_depth_ = 48;

    cplx segment(const Segment& seg, double t0, double t1, std::vector<double>& th, int depth) {
        const int nf = static_cast<int>(fac_.size());
        const auto& nodes = detail::gk_sorted();

        double tt[17];
        cplx zz[17];
        tt[0] = t0;
        tt[16] = t1;
        double mid = 0.5 * (t0 + t1), hw = 0.5 * (t1 - t0);
        for (int i = 0; i < 15; ++i) tt[i + 1] = mid + hw * nodes[i];
        for (int i = 0; i < 17; ++i) zz[i] = seg.at(tt[i]);

        // thread the branch arguments through all 17 points
        thbuf_.resize(static_cast<size_t>(nf) * 17);
        double max_step = 0.0;
        for (int l = 0; l < nf; ++l) {
            double prev = th[static_cast<size_t>(l)];
            for (int i = 0; i < 17; ++i) {
                double cur = detail::chain_arg(prev, zz[i] - fac_[static_cast<size_t>(l)].s);
                thbuf_[static_cast<size_t>(i) * nf + l] = cur;
                max_step = std::max(max_step, std::abs(cur - prev));
                prev = cur;
            }
        }

        bool need_split = max_step > 0.5 * std::numbers::pi;
        cplx K = 0.0, G = 0.0;
        double L1 = 0.0;
        if (!need_split) {
            for (int i = 1; i <= 15; ++i) {
                int a = (i - 1) < 7 ? (i - 1) : 14 - (i - 1);
                cplx v = f_(zz[i], &thbuf_[static_cast<size_t>(i) * nf]) * seg.deriv(tt[i]);
                ++evals_;
                K += gk::wk[a] * v;
                L1 += gk::wk[a] * std::abs(v);
                if (a % 2 == 1 || a == 7) G += gk::wg[(a - 1) / 2] * v;
            }
            K *= hw;
            G *= hw;
            L1 *= std::abs(hw);
            double err = std::abs(K - G);
            if (err <= rel_tol_ * L1 + 1e-305) {
                for (int l = 0; l < nf; ++l) th[static_cast<size_t>(l)] = thbuf_[16 * static_cast<size_t>(nf) + l];
                return K;
            }
            need_split = true;
        }

        if (depth >= max_depth_) {
            if (max_step > 0.5 * std::numbers::pi)
                throw numerical_error("contour integration: branch step unresolved, path too close to a singularity");
            for (int l = 0; l < nf; ++l) th[static_cast<size_t>(l)] = thbuf_[16 * static_cast<size_t>(nf) + l];
            return K; // give back the best estimate we have
        }
        if (evals_ > 200000000LL) throw numerical_error("contour integration: evaluation budget exceeded");

        (void)need_split;
        cplx left = segment(seg, t0, mid, th, depth + 1);
        cplx right = segment(seg, mid, t1, th, depth + 1);
        return left + right;
    }

    F& f_;
    const std::vector<TrackedFactor>& fac_;
    double rel_tol_;
    long long evals_ = 0;
    std::vector<double> thbuf_;
};

template <typename F>
inline cplx integrate_tracked(F&& f, const std::vector<TrackedFactor>& fac, const Path& path,
                              BranchState& state, double rel_tol = 1e-12) {
    TrackedIntegrator<std::remove_reference_t<F>> integ(f, fac, rel_tol);
    return integ.run(path, state);
}

// Product of complex powers with a constant prefactor.
struct PowerProduct {
    std::vector<TrackedFactor> factors;
    cplx prefactor = 1.0;

    cplx eval(cplx z, const double* theta) const {
        cplx lg = 0.0;
        for (size_t l = 0; l < factors.size(); ++l) {
            if (factors[l].alpha == 0.0) continue;
            double m = std::abs(z - factors[l].s);
            lg += factors[l].alpha * cplx(std::log(m), theta[l]);
        }
        return prefactor * std::exp(lg);
    }
};

inline cplx contour_integral(const PowerProduct& pp, const Path& path, double rel_tol = 1e-12,
                             BranchState* state = nullptr) {
    auto f = [&pp](cplx z, const double* th) { return pp.eval(z, th); };
    BranchState local;
    BranchState& st = state ? *state : local;
    return integrate_tracked(f, pp.factors, path, st, rel_tol);
}

// ---- loop constructions ------------------------------------------------

// Loop from `base` (somewhere above the real axis) around the real point cx:
// cruise horizontally at the base height, drop vertically to distance r above
// cx, run the full circle, climb back and return to base.
inline Path balloon_loop(cplx base, double cx, double r, bool ccw) {
    using std::numbers::pi;
    double H = base.imag();
    if (!(H > r) || !(r > 0.0)) throw invalid_argument("balloon_loop: need base height > clearance > 0");
    Path p;
    cplx over(cx, H), top(cx, r);
    if (std::abs(base - over) > 0.0) p.push_back(Segment::line(base, over));
    p.push_back(Segment::line(over, top));
    p.push_back(Segment::arc(cplx(cx, 0.0), r, 0.5 * pi, 0.5 * pi + (ccw ? 2.0 * pi : -2.0 * pi)));
    p.push_back(Segment::line(top, over));
    if (std::abs(base - over) > 0.0) p.push_back(Segment::line(over, base));
    return p;
}

// Commutator loop around the pair a < b: encircle b, then a, then each again
// with reversed orientation.  Closed in the branched cover for arbitrary
// exponents at a and b.
inline Path pochhammer_cycle(double a, double b, double r, double H) {
    if (!(a < b)) throw invalid_argument("pochhammer_cycle: need a < b");
    cplx base(0.5 * (a + b), H);
    Path p = balloon_loop(base, b, r, true);
    append(p, balloon_loop(base, a, r, true));
    append(p, balloon_loop(base, b, r, false));
    append(p, balloon_loop(base, a, r, false));
    return p;
}

inline cplx pochhammer_base(double a, double b, double H) { return cplx(0.5 * (a + b), H); }

// Stadium-shaped simple loop around the real interval [a,b] with cap radius d.
inline Path stadium_loop(double a, double b, double d, bool clockwise) {
    using std::numbers::pi;
    if (!(a < b) || !(d > 0.0)) throw invalid_argument("stadium_loop: need a < b and d > 0");
    Path p;
    p.push_back(Segment::line(cplx(a, -d), cplx(b, -d)));
    p.push_back(Segment::arc(cplx(b, 0.0), d, -0.5 * pi, 0.5 * pi));
    p.push_back(Segment::line(cplx(b, d), cplx(a, d)));
    p.push_back(Segment::arc(cplx(a, 0.0), d, 0.5 * pi, 1.5 * pi));
    return clockwise ? reversed(p) : p;
}

// ---- single-integrand interface -----------------------------------------

// f(z) = prod_j (z - s_j)^{e_j}, with the branch fixed by declaring the value
// of Im sum_j e_j log(base_point - s_j).
struct MultiPowerIntegrand {
    std::vector<cplx> singularities;
    std::vector<double> exponents;
    cplx base_point;
    double base_phase = 0.0;
};

// The principal determination of sum_j e_j arg(base - s_j), handy when
// constructing a MultiPowerIntegrand.
inline double principal_phase(const std::vector<cplx>& sing, const std::vector<double>& expo,
                              cplx base) {
    double ph = 0.0;
    for (size_t j = 0; j < sing.size(); ++j) {
        cplx w = base - sing[j];
        if (w == cplx(0.0, 0.0)) throw invalid_argument("principal_phase: base point at singularity");
        ph += expo[j] * std::arg(w);
    }
    return ph;
}

inline bool path_is_closed(const Path& p, double tol = 1e-9) {
    if (p.empty()) return false;
    double scale = 1.0 + path_length(p);
    return std::abs(p.back().end() - p.front().start()) <= tol * scale;
}

namespace detail {

inline void check_path_clearance(const Path& path, const std::vector<cplx>& sing) {
    for (const auto& seg : path) {
        for (int i = 0; i <= 64; ++i) {
            cplx z = seg.at(i / 64.0);
            for (const auto& s : sing)
                if (std::abs(z - s) < 1e-8 * (1.0 + std::abs(s)))
                    throw invalid_argument("contour: singularity on or too close to the path");
        }
    }
}

} // namespace detail

// Commutator loop around a < b sized from a single clearance parameter; the
// other marked points are assumed at distance > clearance and stay outside.
inline Path pochhammer_loop(double a, double b, double clearance) {
    if (!(a < b)) throw invalid_argument("pochhammer_loop: need a < b");
    if (!(clearance > 0.0) || clearance >= 0.5 * (b - a))
        throw invalid_argument("pochhammer_loop: need 0 < clearance < (b-a)/2");
    return pochhammer_cycle(a, b, 0.5 * clearance, (b - a) / 3.0);
}

// Closed-path integral of f with the branch continued from f's declared
// determination at its base point.  The argument bookkeeping runs with
// principal values at the path start; the declared base_phase only shifts the
// result by a constant unimodular factor.
inline cplx integrate_branch_tracked(const MultiPowerIntegrand& f, const Path& path, double tol) {
    if (!(tol > 0.0)) throw invalid_argument("integrate_branch_tracked: tol must be positive");
    if (!path_is_closed(path)) throw invalid_argument("integrate_branch_tracked: path is not closed");
    if (f.singularities.size() != f.exponents.size())
        throw invalid_argument("integrate_branch_tracked: size mismatch");
    detail::check_path_clearance(path, f.singularities);
    PowerProduct pp;
    for (size_t j = 0; j < f.singularities.size(); ++j)
        pp.factors.push_back(TrackedFactor{f.singularities[j], f.exponents[j]});
    double delta = f.base_phase - principal_phase(f.singularities, f.exponents, f.base_point);
    pp.prefactor = std::exp(cplx(0.0, delta));
    return contour_integral(pp, path, tol);
}

// ---- product cycles ------------------------------------------------------

struct Cycle {
    std::vector<Path> factors; // one closed path per integration variable
};

// Multivariate integrand
//   prefactor * prod_{v,p} (u_v - points[p])^{point_exponents[v][p]}
//             * prod_{i<j} (u_j - u_i)^{cross_exponents[i][j]}
struct ProductPowerIntegrand {
    std::vector<cplx> points;
    std::vector<std::vector<double>> point_exponents;
    std::vector<std::vector<double>> cross_exponents;
    cplx prefactor = 1.0;

    int vars() const { return static_cast<int>(point_exponents.size()); }
};

namespace detail {

// Iterated integral over a product of closed loops.  Each level integrates
// one variable with branch tracking; the arguments of the cross factors
// (u_level - u_outer) are handed down from the outer level so that the full
// integrand is continued continuously from the all-base-points tuple, where
// every factor sits on its principal determination.
class ProductCycleDriver {
  public:
    ProductCycleDriver(const ProductPowerIntegrand& phi, const Cycle& cyc, double tol)
        : phi_(phi), cyc_(cyc), tol_(tol) {
        const int V = phi.vars();
        const int P = static_cast<int>(phi.points.size());
        base_.resize(V);
        for (int v = 0; v < V; ++v) {
            if (cyc.factors[static_cast<size_t>(v)].empty())
                throw invalid_argument("product cycle: empty factor path");
            base_[static_cast<size_t>(v)] = cyc.factors[static_cast<size_t>(v)].front().start();
        }
        for (int v = 0; v < V; ++v)
            for (int w = v + 1; w < V; ++w)
                if (std::abs(base_[static_cast<size_t>(v)] - base_[static_cast<size_t>(w)]) == 0.0)
                    throw invalid_argument("product cycle: factor paths share a base point");

        // factor list per level: the fixed points, then (u - z_j) for outer
        // levels j < v, then zero-exponent trackers (u - base_l) for l > v
        fac_.resize(V);
        init_point_arg_.resize(V);
        for (int v = 0; v < V; ++v) {
            auto& fl = fac_[static_cast<size_t>(v)];
            for (int p = 0; p < P; ++p)
                fl.push_back(TrackedFactor{phi.points[static_cast<size_t>(p)],
                                           phi.point_exponents[static_cast<size_t>(v)][static_cast<size_t>(p)]});
            for (int j = 0; j < v; ++j)
                fl.push_back(TrackedFactor{cplx(0.0, 0.0),
                                           phi.cross_exponents[static_cast<size_t>(j)][static_cast<size_t>(v)]});
            for (int l = v + 1; l < V; ++l) fl.push_back(TrackedFactor{base_[static_cast<size_t>(l)], 0.0});
            auto& ia = init_point_arg_[static_cast<size_t>(v)];
            for (int p = 0; p < P; ++p) {
                cplx w = base_[static_cast<size_t>(v)] - phi.points[static_cast<size_t>(p)];
                if (w == cplx(0.0, 0.0)) throw invalid_argument("product cycle: path starts at a singularity");
                ia.push_back(std::arg(w));
            }
        }
        z_.resize(V);
        handed_.assign(static_cast<size_t>(V), std::vector<double>(static_cast<size_t>(V), 0.0));
    }

    cplx run() { return phi_.prefactor * integrate_level(0); }

  private:
    cplx integrate_level(int v) {
        const int V = phi_.vars();
        const int P = static_cast<int>(phi_.points.size());
        auto& fl = fac_[static_cast<size_t>(v)];
        // refresh the moving singularities (u_v - z_j)
        for (int j = 0; j < v; ++j) fl[static_cast<size_t>(P + j)].s = z_[static_cast<size_t>(j)];

        BranchState st;
        st.theta.reserve(fl.size());
        for (int p = 0; p < P; ++p) st.theta.push_back(init_point_arg_[static_cast<size_t>(v)][static_cast<size_t>(p)]);
        for (int j = 0; j < v; ++j) st.theta.push_back(handed_[static_cast<size_t>(j)][static_cast<size_t>(v)] + std::numbers::pi);
        for (int l = v + 1; l < V; ++l) {
            cplx w = base_[static_cast<size_t>(l)] - base_[static_cast<size_t>(v)];
            st.theta.push_back(std::arg(w) - std::numbers::pi);
        }

        auto cb = [this, v](cplx u, const double* th) { return this->node(v, u, th); };
        TrackedIntegrator<decltype(cb)> integ(cb, fl, tol_);
        return integ.run(cyc_.factors[static_cast<size_t>(v)], st);
    }

    cplx node(int v, cplx u, const double* th) {
        const int V = phi_.vars();
        const int P = static_cast<int>(phi_.points.size());
        cplx lg = 0.0;
        for (int p = 0; p < P; ++p) {
            double al = phi_.point_exponents[static_cast<size_t>(v)][static_cast<size_t>(p)];
            if (al == 0.0) continue;
            lg += al * cplx(std::log(std::abs(u - phi_.points[static_cast<size_t>(p)])), th[p]);
        }
        for (int j = 0; j < v; ++j) {
            double al = phi_.cross_exponents[static_cast<size_t>(j)][static_cast<size_t>(v)];
            if (al == 0.0) continue;
            lg += al * cplx(std::log(std::abs(u - z_[static_cast<size_t>(j)])), th[P + j]);
        }
        cplx val = std::exp(lg);
        if (v + 1 == V) return val;
        z_[static_cast<size_t>(v)] = u;
        for (int l = v + 1; l < V; ++l)
            handed_[static_cast<size_t>(v)][static_cast<size_t>(l)] = th[P + v + (l - v - 1)];
        return val * integrate_level(v + 1);
    }

    const ProductPowerIntegrand& phi_;
    const Cycle& cyc_;
    double tol_;
    std::vector<cplx> base_;
    std::vector<std::vector<TrackedFactor>> fac_;
    std::vector<std::vector<double>> init_point_arg_;
    std::vector<cplx> z_;
    std::vector<std::vector<double>> handed_; // handed_[j][l]: arg(u_j - base_l) at the current node of level j
};

// Minimum distance between two path segments: coarse grid then local shrink
// refinement.  Converges to ~0 when the segments genuinely cross.
inline double segment_min_distance(const Segment& A, const Segment& B) {
    auto d = [&](double s, double t) { return std::abs(A.at(s) - B.at(t)); };
    const int N = 24;
    double bs = 0, bt = 0, best = d(0, 0);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            double v = d(i / double(N), j / double(N));
            if (v < best) { best = v; bs = i / double(N); bt = j / double(N); }
        }
    double hs = 1.0 / N, ht = 1.0 / N;
    for (int it = 0; it < 60 && best > 0.0; ++it) {
        double cbs = bs, cbt = bt;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                double s = std::clamp(cbs + di * hs, 0.0, 1.0);
                double t = std::clamp(cbt + dj * ht, 0.0, 1.0);
                double v = d(s, t);
                if (v < best) { best = v; bs = s; bt = t; }
            }
        hs *= 0.6;
        ht *= 0.6;
    }
    return best;
}

inline double path_min_distance(const Path& a, const Path& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sa : a)
        for (const auto& sb : b) best = std::min(best, segment_min_distance(sa, sb));
    return best;
}

inline void check_cycle_disjoint(const Cycle& cyc) {
    const int V = static_cast<int>(cyc.factors.size());
    for (int v = 0; v < V; ++v)
        for (int w = v + 1; w < V; ++w)
            if (path_min_distance(cyc.factors[static_cast<size_t>(v)], cyc.factors[static_cast<size_t>(w)]) < 1e-9)
                throw invalid_argument("product cycle: factor paths intersect");
}

} // namespace detail

inline cplx integrate_product_cycle(const ProductPowerIntegrand& phi, const Cycle& cyc,
                                    double tol = 1e-10) {
    const int V = phi.vars();
    if (V == 0) return phi.prefactor;
    if (static_cast<int>(cyc.factors.size()) != V)
        throw invalid_argument("integrate_product_cycle: one factor path per variable required");
    for (const auto& p : cyc.factors)
        if (!path_is_closed(p)) throw invalid_argument("integrate_product_cycle: factor path not closed");
    for (const auto& p : cyc.factors) detail::check_path_clearance(p, phi.points);
    detail::check_cycle_disjoint(cyc);
    detail::ProductCycleDriver driver(phi, cyc, tol);
    return driver.run();
}

// Lasso anchored next to `anchor`: rise along direction `phi` to height H,
// cruise to the target, encircle it counterclockwise at clearance r, and
// retrace.  The string stops just short of the anchor point; the integrand is
// expected to vanish there (positive local exponent), so the omitted stub is
// far below quadrature tolerance while the path itself never touches the
// singularity.
inline Path lasso_loop(double anchor, double target, double r, double H, double phi) {
    using std::numbers::pi;
    if (!(target < anchor)) throw invalid_argument("lasso_loop: target must lie left of anchor");
    if (!(H > r) || !(r > 0.0)) throw invalid_argument("lasso_loop: need H > r > 0");
    double sp = std::sin(phi);
    if (!(sp > 0.1)) throw invalid_argument("lasso_loop: rise direction too shallow");
    cplx dir(std::cos(phi), sp);
    double off = std::max(1e-4 * r, 1e-7 * (1.0 + std::abs(anchor)));
    cplx s0 = cplx(anchor, 0.0) + off * dir;
    cplx ztop = cplx(anchor, 0.0) + (H / sp) * dir;
    cplx over(target, H), top(target, r);
    Path p;
    p.push_back(Segment::line(s0, ztop));
    p.push_back(Segment::line(ztop, over));
    p.push_back(Segment::line(over, top));
    p.push_back(Segment::arc(cplx(target, 0.0), r, 0.5 * pi, 2.5 * pi));
    p.push_back(Segment::line(top, over));
    p.push_back(Segment::line(over, ztop));
    p.push_back(Segment::line(ztop, s0));
    return p;
}

} // namespace multisle
