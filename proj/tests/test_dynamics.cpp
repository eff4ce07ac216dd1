#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magest/constants.hpp"
#include "magest/dynamics.hpp"
#include "magest/errors.hpp"
#include "magest/model.hpp"
#include "magest/stability.hpp"

using namespace magest;
using magest::constants::pi;

namespace {

// random stable operating points near the baseline regime
std::vector<PhysicalParams> stable_samples(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PhysicalParams> out;
    while (static_cast<int>(out.size()) < count) {
        PhysicalParams p = baseline_params();
        p.gamma_c = 2 * pi * (2.0 + 8.0 * u(rng)) * 1e6;
        p.gamma_m = 2 * pi * (10.0 + 60.0 * u(rng)) * 1e6;
        p.delta_c = 2 * pi * (u(rng) * 80.0) * 1e6;
        p.delta_m = 2 * pi * (u(rng) * 20.0 - 10.0) * 1e6;
        p.g_mc = 2 * pi * (10.0 + 50.0 * u(rng)) * 1e6;
        p.lambda_opa = (u(rng) * 0.8) * p.gamma_c;
        p.theta = u(rng) * 2.0 * pi;
        p.temperature = 0.01 + 0.29 * u(rng);
        LinearModel m = build_model(p);
        if (routh_hurwitz(m.drift).stable) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("lyapunov residual below 1e-10 on 50 random stable sets") {
    for (const PhysicalParams& p : stable_samples(50, 101)) {
        LinearModel m = build_model(p);
        Eigen::Matrix4d C = lyapunov_steady(m.drift, m.diffusion);
        const double res =
            (m.drift * C + C * m.drift.transpose() + m.diffusion).norm();
        CHECK(res <= 1e-10 * m.diffusion.norm());
        CHECK((C - C.transpose()).norm() == 0.0);
        CHECK(is_physical(C, 1e-8));
    }
}

TEST_CASE("lyapunov solver rejects non-Hurwitz drift") {
    PhysicalParams p = baseline_params();
    p.lambda_opa = 3.0 * p.gamma_c;
    p.theta = 0.0;
    p.delta_c = 0.0;
    p.delta_m = 0.0;
    p.g_mc = 0.0;
    LinearModel m = build_model(p);
    CHECK_THROWS_AS(lyapunov_steady(m.drift, m.diffusion), NotHurwitz);
}

TEST_CASE("integrator converges to the algebraic steady state") {
    PhysicalParams p = baseline_params();
    GaussianState ss = steady_state(p);
    // ~20 cavity decay times
    const double t_end = 20.0 / p.gamma_c;
    Trajectory traj = integrate(p, {0.0, t_end / 2.0, t_end});
    const GaussianState& last = traj.states.back();
    CHECK((last.C - ss.C).norm() <= 1e-6 * ss.C.norm());
    CHECK((last.d - ss.d).norm() <= 1e-6 * ss.d.norm());
}

TEST_CASE("trajectory starts at vacuum and stays physical") {
    PhysicalParams p = baseline_params();
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i * 1.25e-9);
    Trajectory traj = integrate(p, grid);
    REQUIRE(traj.states.size() == grid.size());
    CHECK((traj.states[0].C - Eigen::Matrix4d::Identity() * 0.5).norm() == 0.0);
    CHECK(traj.states[0].d.norm() == 0.0);
    for (const GaussianState& s : traj.states) CHECK(is_physical(s.C, 1e-8));
}

TEST_CASE("thermal initial condition is honored") {
    PhysicalParams p = baseline_params();
    IntegrateOptions io;
    const double nbar = 0.3;
    io.initial.C = Eigen::Matrix4d::Identity() * (2 * nbar + 1) / 2.0;
    Trajectory traj = integrate(p, {0.0, 1e-9}, io);
    CHECK(traj.states[0].C(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("analytic steady sensitivities match finite differences") {
    const std::vector<ParamId> ids = {ParamId::GMc, ParamId::GammaC};
    for (const PhysicalParams& p : stable_samples(50, 202)) {
        SensitivityBundle an = steady_sensitivities(p, ids);
        SensitivityBundle fd;
        try {
            fd = fd_sensitivities(p, ids);
        } catch (const UnstablePerturbation&) {
            continue;  // point sits against the stability boundary
        }
        for (std::size_t a = 0; a < ids.size(); ++a) {
            CHECK((an.dC[a] - fd.dC[a]).norm() <=
                  1e-5 * std::max(fd.dC[a].norm(), 1e-30));
            CHECK((an.dd[a] - fd.dd[a]).norm() <=
                  1e-5 * std::max(fd.dd[a].norm(), 1e-30));
        }
    }
}

TEST_CASE("dynamic sensitivities approach the steady sensitivities") {
    PhysicalParams p = baseline_params();
    const std::vector<ParamId> ids = {ParamId::GMc, ParamId::GammaC};
    SensitivityBundle ss = steady_sensitivities(p, ids);
    IntegrateOptions io;
    io.with_sensitivities = true;
    io.sens_params = ids;
    const double t_end = 25.0 / p.gamma_c;
    Trajectory traj = integrate(p, {0.0, t_end}, io);
    const SensitivityBundle& last = traj.sensitivities.back();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        CHECK((last.dC[a] - ss.dC[a]).norm() <= 1e-5 * ss.dC[a].norm());
        CHECK((last.dd[a] - ss.dd[a]).norm() <= 1e-5 * ss.dd[a].norm());
    }
}

TEST_CASE("drive_couples_gamma switches the gamma_c mean sensitivity") {
    PhysicalParams p = baseline_params();
    ModelOptions coupled, fixed;
    fixed.drive_couples_gamma = false;
    SensitivityBundle a = steady_sensitivities(p, {ParamId::GammaC}, coupled);
    SensitivityBundle b = steady_sensitivities(p, {ParamId::GammaC}, fixed);
    // the db/dgamma term only exists in the coupled convention
    CHECK((a.dd[0] - b.dd[0]).norm() > 1e-12 * a.dd[0].norm());
    // FD cross-check in the fixed convention as well
    SensitivityBundle fd = fd_sensitivities(p, {ParamId::GammaC}, 1e-6, fixed);
    CHECK((b.dd[0] - fd.dd[0]).norm() <= 1e-5 * fd.dd[0].norm());
    CHECK((b.dC[0] - fd.dC[0]).norm() <= 1e-5 * fd.dC[0].norm());
}

TEST_CASE("unsupported sensitivity parameter raises ConfigError") {
    PhysicalParams p = baseline_params();
    CHECK_THROWS_AS(steady_sensitivities(p, {ParamId::Theta}), ConfigError);
}

TEST_CASE("integrate rejects a decreasing grid") {
    PhysicalParams p = baseline_params();
    CHECK_THROWS_AS(integrate(p, {0.0, 2e-9, 1e-9}), ConfigError);
}
