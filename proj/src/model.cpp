// model.cpp — drift/diffusion assembly and steady mean fields

#include "magest/model.hpp"

#include <cmath>

#include "magest/constants.hpp"
#include "magest/errors.hpp"
#include "magest/linalg.hpp"

namespace magest {

double thermal_occupation(double omega, double temperature) {
    if (temperature == 0.0) return 0.0;
    double x = constants::hbar * omega / (constants::k_B * temperature);
    if (x > 700.0) return 0.0;  // below double underflow anyway
    return 1.0 / std::expm1(x);
}

double drive_rate(double power, double gamma_c, double omega_laser) {
    return std::sqrt(2.0 * power * gamma_c / (constants::hbar * omega_laser));
}

LinearModel build_model(const PhysicalParams& p, const ModelOptions& opts) {
    LinearModel m;
    const double lc = 2.0 * p.lambda_opa * std::cos(p.theta);
    const double ls = 2.0 * p.lambda_opa * std::sin(p.theta);

    m.drift << -p.gamma_c + lc, p.delta_c + ls, 0.0, p.g_mc,
               -p.delta_c + ls, -p.gamma_c - lc, -p.g_mc, 0.0,
               0.0, p.g_mc, -p.gamma_m, p.delta_m,
               -p.g_mc, 0.0, -p.delta_m, -p.gamma_m;

    m.nbar = thermal_occupation(p.omega_c, p.temperature);
    const double nc = opts.nbar_cavity_override.value_or(m.nbar);
    const double nm = opts.nbar_magnon_override.value_or(m.nbar);
    m.diffusion = Eigen::Vector4d(p.gamma_c * (2.0 * nc + 1.0),
                                  p.gamma_c * (2.0 * nc + 1.0),
                                  p.gamma_m * (2.0 * nm + 1.0),
                                  p.gamma_m * (2.0 * nm + 1.0))
                      .asDiagonal();

    m.epsilon_l = drive_rate(p.power, p.gamma_c, p.omega_laser);
    m.drive = Eigen::Vector4d(std::sqrt(2.0) * m.epsilon_l, 0.0, 0.0, 0.0);
    return m;
}

Eigen::Vector4d steady_means(const LinearModel& model) {
    if (condition_number(model.drift) > 1e12)
        throw SingularDrift("drift matrix numerically singular; system on a stability boundary");
    Eigen::Vector4d d = model.drift.fullPivLu().solve(-model.drive);
    return d;
}

ModeAmplitudes mode_amplitudes(const Eigen::Vector4d& d) {
    const double s = 1.0 / std::sqrt(2.0);
    return {std::complex<double>(d(0), d(1)) * s, std::complex<double>(d(2), d(3)) * s};
}

}  // namespace magest
