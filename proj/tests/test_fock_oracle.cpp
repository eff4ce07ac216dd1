#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magest/errors.hpp"
#include "magest/fock.hpp"

using namespace magest;
using namespace magest::fock;

TEST_CASE("truncated state moments match the analytic pair") {
    for (double nbar : {0.1, 1.0})
        for (double r : {0.0, 0.4}) {
            TruncatedState st = build_gaussian_fock(nbar, r, 0.0, {0.3, -0.2}, 80);
            Eigen::Matrix2d C;
            Eigen::Vector2d d;
            moments_from_rho(st.rho, C, d);
            CHECK((C - st.C).norm() <= 1e-8 * st.C.norm());
            CHECK((d - st.d).norm() <= 1e-8);
        }
}

TEST_CASE("vacuum in the truncated basis") {
    TruncatedState st = build_gaussian_fock(0.0, 0.0, 0.0, 0.0, 30);
    CHECK(st.rho(0, 0).real() == doctest::Approx(1.0));
    CHECK((st.C - 0.5 * Eigen::Matrix2d::Identity()).norm() <= 1e-14);
}

TEST_CASE("excessive truncation leakage is reported") {
    CHECK_THROWS_AS(build_gaussian_fock(5.0, 1.5, 0.0, 0.0, 20), TruncationLeak);
}

TEST_CASE("thermal SLD QFI from the density matrix") {
    const double nbar = 0.5;
    RhoFamily fam = thermal_family(0.0, 0.0, 0.0, 60);
    const double qfi = fock_sld_qfi(fam, nbar, 1e-5);
    // the eigenvalue floor inside the estimator biases the tail by ~3e-6
    CHECK(qfi == doctest::Approx(1.0 / (nbar * (nbar + 1))).epsilon(1e-5));
}

TEST_CASE("thermal displacement RLD QFI from the density matrix") {
    const double nbar = 0.5, nu = 2.0;
    RhoFamily fam = displacement_family(nbar, 0.0, 0.0, 60);
    const double qfi = fock_rld_qfi(fam, 0.0, 1e-5);
    CHECK(qfi == doctest::Approx(2 * nu / (nu * nu - 1)).epsilon(1e-6));
}

TEST_CASE("squeeze-parameter QFI of a squeezed thermal state") {
    // exact values derived by summing the number-basis series:
    // sld = 2 nu^2/(nu^2+1) sums to 50/13 for nu = 5 (nbar = 2) at any r;
    // rld = (1/2)(1+q)^2 (1+q^2)/q^2 with q = (nu-1)/(nu+1) -> 325/72
    const double nbar = 2.0;
    RhoFamily fam = squeeze_family(nbar, 0.0, 0.0, 240);
    CHECK(fock_sld_qfi(fam, 0.8, 1e-5) == doctest::Approx(50.0 / 13.0).epsilon(1e-5));
    CHECK(fock_rld_qfi(fam, 0.8, 1e-5) == doctest::Approx(325.0 / 72.0).epsilon(1e-5));
}

TEST_CASE("RLD refuses a near-pure truncated state") {
    RhoFamily fam = displacement_family(1e-9, 0.0, 0.0, 40);
    CHECK_THROWS_AS(fock_rld_qfi(fam, 0.0, 1e-5), RankDeficient);
}

TEST_CASE("validation suite passes on a reduced dimension") {
    // the suite auto-scales the basis per state; the requested floor only
    // affects the cheap low-excitation cases
    auto cases = run_validation_suite(40);
    int failures = 0;
    for (const auto& c : cases)
        if (!c.pass) ++failures;
    CHECK(cases.size() >= 45);
    CHECK(failures == 0);
}
