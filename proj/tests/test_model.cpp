#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magest/constants.hpp"
#include "magest/model.hpp"
#include "magest/params.hpp"

using namespace magest;
using magest::constants::pi;

TEST_CASE("thermal occupation against frozen reference values") {
    // Bose-Einstein factor evaluated independently (frozen)
    CHECK(thermal_occupation(2 * pi * 1e10, 0.1) ==
          doctest::Approx(0.008304373388861993).epsilon(1e-12));
    CHECK(thermal_occupation(2 * pi * 1e10, 0.0) == 0.0);
    // 10 mK at the baseline cavity frequency: essentially vacuum
    CHECK(thermal_occupation(2 * pi * 1.004e10, 0.01) < 1e-20);
    // classical limit kT >> hbar w
    const double w = 2 * pi * 1e6, T = 1.0;
    const double kT_over_hw = 1.380649e-23 * T / (1.054571817e-34 * w);
    CHECK(thermal_occupation(w, T) == doctest::Approx(kT_over_hw).epsilon(1e-3));
}

TEST_CASE("drive rate against frozen reference value") {
    CHECK(drive_rate(0.5, 2 * pi * 5e6, 2 * pi * 1e10) ==
          doctest::Approx(2177443635123239.2).epsilon(1e-12));
    // scaling: eps ~ sqrt(P), sqrt(gamma_c)
    CHECK(drive_rate(2.0, 1.0, 1.0) == doctest::Approx(2.0 * drive_rate(0.5, 1.0, 1.0)));
}

TEST_CASE("drift matrix entries match the linearized equations") {
    PhysicalParams p = baseline_params();
    LinearModel m = build_model(p);
    const double gc = p.gamma_c, gm = p.gamma_m, g = p.g_mc;
    const double la = p.lambda_opa, th = p.theta;
    Eigen::Matrix4d A;
    A << -gc + 2 * la * std::cos(th), p.delta_c + 2 * la * std::sin(th), 0, g,
        -p.delta_c + 2 * la * std::sin(th), -gc - 2 * la * std::cos(th), -g, 0,
        0, g, -gm, p.delta_m,
        -g, 0, -p.delta_m, -gm;
    CHECK((m.drift - A).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("diffusion matrix is diagonal with thermal factors") {
    PhysicalParams p = baseline_params();
    p.temperature = 0.1;
    LinearModel m = build_model(p);
    const double nbar = thermal_occupation(p.omega_c, 0.1);
    CHECK(m.nbar == doctest::Approx(nbar).epsilon(1e-12));
    Eigen::Vector4d expect(p.gamma_c * (2 * nbar + 1), p.gamma_c * (2 * nbar + 1),
                           p.gamma_m * (2 * nbar + 1), p.gamma_m * (2 * nbar + 1));
    CHECK((m.diffusion - Eigen::Matrix4d(expect.asDiagonal())).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("nbar overrides feed the diffusion matrix per mode") {
    PhysicalParams p = baseline_params();
    ModelOptions opts;
    opts.nbar_cavity_override = 0.25;
    opts.nbar_magnon_override = 0.5;
    LinearModel m = build_model(p, opts);
    CHECK(m.diffusion(0, 0) == doctest::Approx(p.gamma_c * 1.5).epsilon(1e-12));
    CHECK(m.diffusion(2, 2) == doctest::Approx(p.gamma_m * 2.0).epsilon(1e-12));
}

TEST_CASE("drive vector feeds the cavity X quadrature only") {
    PhysicalParams p = baseline_params();
    LinearModel m = build_model(p);
    CHECK(m.drive(0) == doctest::Approx(std::sqrt(2.0) * m.epsilon_l).epsilon(1e-12));
    CHECK(m.drive(1) == 0.0);
    CHECK(m.drive(2) == 0.0);
    CHECK(m.drive(3) == 0.0);
}

TEST_CASE("steady means solve A d + b = 0") {
    PhysicalParams p = baseline_params();
    LinearModel m = build_model(p);
    Eigen::Vector4d d = steady_means(m);
    CHECK((m.drift * d + m.drive).norm() <= 1e-10 * m.drive.norm());
}

TEST_CASE("mode amplitudes recover complex means") {
    Eigen::Vector4d d(std::sqrt(2.0) * 1.5, std::sqrt(2.0) * (-0.5),
                      std::sqrt(2.0) * 2.0, std::sqrt(2.0) * 0.25);
    ModeAmplitudes amps = mode_amplitudes(d);
    CHECK(amps.cavity.real() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(amps.cavity.imag() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(amps.magnon.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(amps.magnon.imag() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("theta periodicity of the drift matrix") {
    PhysicalParams p = baseline_params();
    LinearModel a = build_model(p);
    p.theta += 2 * pi;
    LinearModel b = build_model(p);
    CHECK((a.drift - b.drift).norm() <= 1e-6);
}
