#include <catch2/catch_amalgamated.hpp>

#include <multisle/euler.hpp>
#include <multisle/holonomy.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace multisle;

namespace {

// det of (x_i - x_{n+j})^{-2} by Leibniz, enough for n <= 3
double pairing_det(const std::vector<double>& x) {
    int n = static_cast<int>(x.size()) / 2;
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    double acc = 0.0;
    do {
        int sgn = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[static_cast<size_t>(i)] > p[static_cast<size_t>(j)]) sgn = -sgn;
        double t = sgn;
        for (int i = 0; i < n; ++i) {
            double d = x[static_cast<size_t>(i)] - x[static_cast<size_t>(n + p[static_cast<size_t>(i)])];
            t /= d * d;
        }
        acc += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

} // namespace

TEST_CASE("system operator roster") {
    auto ops = system_operators(3, 2.5);
    REQUIRE(ops.size() == 9);
    CHECK(ops[0].name() == "L1");
    CHECK(ops[5].name() == "L6");
    CHECK(ops[6].name() == "l[-1]");
    CHECK(ops[8].name() == "l[1]");
    CHECK_THROWS_AS(system_operators(0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(system_operators(2, 0.0), std::invalid_argument);
}

TEST_CASE("apply_operator validates its inputs") {
    RealField f = [](const std::vector<double>& x) { return x[1] - x[0]; };
    SystemOperator op{OperatorKind::translation, 0, 3.0, 1};
    std::vector<double> x{0.0, 1.0};
    CHECK_THROWS_AS(apply_operator(op, f, x, 0.2), std::invalid_argument);   // h >= gap/10
    CHECK_THROWS_AS(apply_operator(op, f, x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_operator(op, f, {1.0, 0.0}, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(apply_operator(op, f, {0.0, 1.0, 2.0, 3.0}, 1e-3), std::invalid_argument);
}

TEST_CASE("translation residual decays quadratically on difference functions") {
    // exp of a zero-sum linear form is translation invariant; the residual of
    // the centered scheme is h^2/6 times the third-derivative sum
    const double c[4] = {-2.0, 1.0, 0.5, 0.5};
    RealField f = [&c](const std::vector<double>& x) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += c[k] * x[static_cast<size_t>(k)];
        return std::exp(s);
    };
    SystemOperator op{OperatorKind::translation, 0, 6.0, 2};
    std::vector<double> x{0.0, 0.9, 2.1, 3.4};
    double r1 = apply_operator(op, f, x, 8e-3);
    double r2 = apply_operator(op, f, x, 8e-4);
    double order = std::log(std::abs(r1) / std::abs(r2)) / std::log(10.0);
    CHECK(std::abs(order - 2.0) < 0.05);
    double c3 = 0.0;
    for (double v : c) c3 += v * v * v;
    double predicted = 8e-3 * 8e-3 / 6.0 * c3 * f(x);
    CHECK(std::abs(r1 - predicted) < 0.02 * std::abs(predicted));
}

TEST_CASE("two-point power law solves the full system") {
    double kappa = 2.7;
    RealField f = [kappa](const std::vector<double>& x) {
        return std::pow(x[1] - x[0], 1.0 - 6.0 / kappa);
    };
    auto rep = verify_annihilation(f, {0.3, 1.7}, kappa);
    REQUIRE(rep.ops.size() == 5);
    CHECK(rep.pass);
    for (size_t o = 0; o < rep.ops.size(); ++o)
        CHECK((rep.floored[o] || rep.order[o] >= 1.8));
}

TEST_CASE("inverse-square pairing determinant is annihilated at kappa=2") {
    auto rep2 = verify_annihilation(pairing_det, {0.0, 1.0, 2.3, 4.0}, 2.0);
    CHECK(rep2.pass);
    auto rep3 = verify_annihilation(pairing_det, {0.0, 1.0, 2.3, 4.0, 5.1, 7.0}, 2.0);
    CHECK(rep3.pass);
    // the non-floored operators switch on with clean second order
    for (size_t o = 0; o < rep3.ops.size(); ++o)
        if (!rep3.floored[o]) CHECK(std::abs(rep3.order[o] - 2.0) < 0.1);
}

TEST_CASE("constants solve the kappa=6 system at the cancellation floor") {
    RealField f = [](const std::vector<double>&) { return 3.7; };
    auto rep = verify_annihilation(f, {0.0, 1.0, 2.3, 4.0}, 6.0);
    CHECK(rep.pass);
    for (size_t o = 0; o < rep.ops.size(); ++o) CHECK(rep.floored[o]);
}

TEST_CASE("smooth non-solutions are rejected") {
    RealField f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += std::sin(v);
        return std::exp(0.3 * s);
    };
    auto rep = verify_annihilation(f, {0.0, 1.0, 2.3, 4.0}, 3.0);
    CHECK_FALSE(rep.pass);
    // scale invariance of the verdict: shrinking f must not sneak it under the floor
    RealField g = [&f](const std::vector<double>& x) { return 1e-12 * f(x); };
    CHECK_FALSE(verify_annihilation(g, {0.0, 1.0, 2.3, 4.0}, 3.0).pass);
}

TEST_CASE("euler integral passes annihilation at several kappas") {
    NonCrossingPairing pr{{0, 2, 1, 4, 3}};
    for (double kappa : {2.5, 3.0, 5.0}) {
        for (int part = 0; part < 2; ++part) {
            RealField f = [kappa, &pr, part](const std::vector<double>& x) {
                Configuration cfg{x, kappa};
                cplx v = euler_solution(cfg, CycleSpec::product(pr), 1e-12);
                return part == 0 ? v.real() : v.imag();
            };
            auto rep = verify_annihilation(f, {0.0, 1.0, 2.3, 4.0}, kappa);
            INFO("kappa " << kappa << " part " << part);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("verify_annihilation validates the step ladder") {
    RealField f = [](const std::vector<double>&) { return 1.0; };
    CHECK_THROWS_AS(verify_annihilation(f, {0.0, 1.0}, 6.0, {1e-3}), std::invalid_argument);
    CHECK_THROWS_AS(verify_annihilation(f, {0.0, 1.0}, 6.0, {1e-3, 1e-2}), std::invalid_argument);
    CHECK_THROWS_AS(verify_annihilation(f, {0.0, 1.0, 2.0}, 6.0), std::invalid_argument);
}

TEST_CASE("matching products expand exactly") {
    ExactPoly p = matching_product(2, {{0, 1}});
    REQUIRE(p.coef.size() == 2);
    CHECK(p.eval({2.0, 5.0}) == 3.0);
    ExactPoly q = matching_product(4, {{0, 2}, {1, 3}});
    CHECK(q.eval({0.0, 1.0, 2.0, 4.0}) == 6.0); // (x3-x1)(x4-x2)
}

TEST_CASE("degenerate system annihilates matching products exactly") {
    for (int n = 1; n <= 5; ++n) {
        auto basis = kappa_inf_basis(n);
        for (const auto& poly : basis.polys) {
            bool all_zero = true;
            for (const auto& r : kappa_inf_residuals(poly, n)) all_zero = all_zero && r.zero();
            CHECK(all_zero);
        }
    }
}

TEST_CASE("degenerate system rejects non-solutions") {
    ExactPoly bad;
    bad.vars = 4;
    bad.coef.emplace(ExactPoly::bump(ExactPoly::bump(0, 0, 1), 1, 1), 1); // x1*x2
    auto res = kappa_inf_residuals(bad, 2);
    bool some_nonzero = false;
    for (const auto& r : res) some_nonzero = some_nonzero || !r.zero();
    CHECK(some_nonzero);
}

TEST_CASE("large-kappa solution space has Catalan dimension") {
    std::vector<long long> expect{1, 2, 5, 14, 42, 132};
    for (int n = 1; n <= 6; ++n) {
        auto basis = kappa_inf_basis(n);
        CHECK(basis.dimension() == expect[static_cast<size_t>(n - 1)]);
        CHECK(basis.dimension() == catalan(n));
        CHECK(basis.span_certified);
        // every matching of 2n points was fed through the elimination
        long long dfac = 1;
        for (int k = 2 * n - 1; k > 1; k -= 2) dfac *= k;
        CHECK(basis.matchings_processed == dfac);
    }
    CHECK_THROWS_AS(kappa_inf_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(kappa_inf_basis(9), std::invalid_argument);
}

TEST_CASE("n=1 basis is the plain difference") {
    auto basis = kappa_inf_basis(1);
    REQUIRE(basis.dimension() == 1);
    ExactPoly want = matching_product(2, {{0, 1}});
    CHECK(basis.polys[0].coef == want.coef);
    REQUIRE(basis.matchings.size() == 1);
    CHECK(basis.matchings[0] == std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("basis elements are multilinear and homogeneous of degree n") {
    for (int n : {2, 4}) {
        auto basis = kappa_inf_basis(n);
        for (const auto& poly : basis.polys)
            for (const auto& [key, c] : poly.coef) {
                int total = 0;
                for (int v = 0; v < poly.vars; ++v) {
                    int e = ExactPoly::expo(key, v);
                    CHECK(e <= 1);
                    total += e;
                }
                CHECK(total == n);
            }
    }
}
