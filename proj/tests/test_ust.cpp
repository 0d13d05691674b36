#include <catch2/catch_amalgamated.hpp>

#include <multisle/holonomy.hpp>
#include <multisle/ust.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace multisle;

TEST_CASE("single period matches the real elliptic integral") {
    // loop integral collapses onto twice the segment integral, rotated by the
    // square root's pure-imaginary values between the two branch points
    std::vector<double> x{0, 1, 3, 7};
    Eigen::MatrixXcd P = period_matrix(x);
    REQUIRE(P.rows() == 1);
    double oracle = 1.575438019905948837950572; // 2 * int_0^1 ds/sqrt(s(1-s)(3-s)(7-s))
    CHECK(std::abs(std::abs(P(0, 0)) - oracle) < 1e-13 * oracle);
    CHECK(std::abs(P(0, 0).real()) < 1e-12);
    CHECK(P(0, 0).imag() > 0.0);
}

TEST_CASE("partition function values at two point sets") {
    CHECK(std::abs(psi_ust({0, 1, 3, 7}) - 8.877004807440148892691615) < 1e-12);
    CHECK(std::abs(psi_ust({0, 2, 5, 6}) - 7.470712853833227312751167) < 1e-12);
}

TEST_CASE("entries do not move when the loops are deformed") {
    std::vector<double> x{0, 1, 3, 7};
    cplx a = period_entry(x, 1, 1, PeriodBasis::shifted, 1e-12, 1.0);
    cplx b = period_entry(x, 1, 1, PeriodBasis::shifted, 1e-12, 0.5);
    cplx c = period_entry(x, 1, 1, PeriodBasis::shifted, 1e-12, 1.7);
    CHECK(std::abs(a - b) < 1e-11);
    CHECK(std::abs(a - c) < 1e-11);
}

TEST_CASE("monomial and shifted bases give the same determinant") {
    for (std::vector<double> x : {std::vector<double>{1, 2, 3, 4, 5, 6},
                                  std::vector<double>{0, 2, 5, 6},
                                  std::vector<double>{0.5, 1, 2, 3.5, 4, 5.5, 7, 7.8}}) {
        cplx ds = period_matrix(x, PeriodBasis::shifted).determinant();
        cplx dm = period_matrix(x, PeriodBasis::monomial).determinant();
        CHECK(std::abs(ds - dm) <= 1e-10 * std::abs(ds));
    }
}

TEST_CASE("scaling all points rescales each row") {
    std::vector<double> x{0.5, 1, 2, 3.5, 4, 5.5};
    double lam = 2.0;
    std::vector<double> xl(x);
    for (auto& v : xl) v *= lam;
    Eigen::MatrixXcd P = period_matrix(x);
    Eigen::MatrixXcd Pl = period_matrix(xl);
    int n = 3;
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j) {
            cplx want = std::pow(lam, double(i - n)) * P(i - 1, j - 1);
            CHECK(std::abs(Pl(i - 1, j - 1) - want) <= 1e-12 * std::abs(want));
        }
}

TEST_CASE("row recursion under d/dx1") {
    auto r3 = verify_omega_recursion({0, 1, 2, 3, 4, 5});
    CHECK(r3.pass);
    CHECK(r3.residuals.size() == 1);
    CHECK(r3.max_residual < 1e-7);

    auto r4 = verify_omega_recursion({0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(r4.pass);
    CHECK(r4.residuals.size() == 2);
    CHECK(r4.max_residual < 1e-7);
}

TEST_CASE("row recursion is vacuous with a single row") {
    auto rep = verify_omega_recursion({0, 1, 3, 7});
    CHECK(rep.pass);
    CHECK(rep.residuals.empty());
    CHECK(rep.max_residual == 0.0);
    CHECK(rep.h > 0.0);
}

TEST_CASE("drift vector identity") {
    auto d3 = verify_drift_identity({0, 1, 2, 3, 4, 5});
    CHECK(d3.pass);
    CHECK(d3.residual < 1e-6);
    CHECK(d3.companion_residual < 1e-6);
    CHECK(std::abs(d3.lhs(1) - cplx(4.0, 0.0)) < 1e-6);

    auto d4 = verify_drift_identity({0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(d4.pass);
    CHECK(d4.residual < 1e-6);
    CHECK(d4.companion_residual < 1e-6);
}

TEST_CASE("drift identity needs at least three curves") {
    CHECK_THROWS_AS(verify_drift_identity({0, 1, 3, 7}), std::invalid_argument);
}

TEST_CASE("partition function solves the commutation system") {
    auto f = [](const std::vector<double>& z) { return psi_ust(z); };
    for (std::vector<double> x : {std::vector<double>{0, 1, 3, 7},
                                  std::vector<double>{0, 0.7, 2, 3.4, 4, 5.5}}) {
        auto rep = verify_annihilation(f, x, 8.0);
        CHECK(rep.pass);
        for (size_t o = 0; o < rep.ops.size(); ++o)
            if (!rep.floored[o]) CHECK(std::abs(rep.order[o] - 2.0) < 0.3);
    }
}

TEST_CASE("an extra pair factor spoils the system") {
    auto f = [](const std::vector<double>& z) {
        return psi_ust(z) * std::pow((z[2] - z[1]) * (z[3] - z[0]), 0.25);
    };
    auto rep = verify_annihilation(f, {0, 1, 3, 7}, 8.0);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(period_matrix({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(period_matrix({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(period_matrix({0, 2, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(psi_ust({}), std::invalid_argument);
    CHECK_THROWS_AS(period_entry({0, 1, 3, 7}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(period_entry({0, 1, 3, 7}, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(period_entry({0, 1, 3, 7}, 1, 1, PeriodBasis::shifted, 1e-12, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_omega_recursion({0, 1, 3, 7}, -1.0), std::invalid_argument);
}
