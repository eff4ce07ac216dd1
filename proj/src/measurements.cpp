// measurements.cpp — heterodyne/homodyne classical Fisher information

#include "magest/measurements.hpp"

#include "magest/errors.hpp"
#include "magest/metrology.hpp"

namespace magest {

double heterodyne_cfi(const GaussianState& state, const SensitivityBundle& sens,
                      int param_index, double noise_scale) {
    const Eigen::Matrix4d sigma =
        state.C + noise_scale * Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d sigma_inv = sigma.inverse();
    const Eigen::Matrix4d& ds = sens.dC.at(param_index);
    const Eigen::Vector4d& dd = sens.dd.at(param_index);
    return 0.5 * (sigma_inv * ds * sigma_inv * ds).trace() + dd.dot(sigma_inv * dd);
}

double homodyne_cfi(const GaussianState& state, const SensitivityBundle& sens,
                    int param_index, int quadrature) {
    const int j = quadrature;
    const double cjj = state.C(j, j);
    if (cjj <= 0.0) throw Error("homodyne CFI requires C_jj > 0");
    const double ddj = sens.dd.at(param_index)(j);
    const double dcjj = sens.dC.at(param_index)(j, j);
    return (2.0 * cjj * ddj * ddj + dcjj * dcjj) / (2.0 * cjj * cjj);
}

std::vector<CfiProfileRow> cfi_vs_qfi_profile(const PhysicalParams& params,
                                              const std::vector<double>& t_grid,
                                              double het_noise, const ModelOptions& opts) {
    IntegrateOptions io;
    io.with_sensitivities = true;
    io.sens_params = {ParamId::GMc, ParamId::GammaC};
    io.model_opts = opts;
    Trajectory traj = integrate(params, t_grid, io);

    std::vector<CfiProfileRow> rows;
    rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const GaussianState& s = traj.states[i];
        const SensitivityBundle& b = traj.sensitivities[i];
        CfiProfileRow row;
        row.t = traj.times[i];

        // single-parameter SLD QFI: the other parameter held fixed
        for (int a = 0; a < 2; ++a) {
            Eigen::MatrixXd h = sld_qfim(s.C, s.d, {b.dC[a]}, {b.dd[a]});
            (a == 0 ? row.h_g : row.h_gamma) = h(0, 0);
        }
        row.f_het_g = heterodyne_cfi(s, b, 0, het_noise);
        row.f_het_gamma = heterodyne_cfi(s, b, 1, het_noise);
        row.f_hom_x_g = homodyne_cfi(s, b, 0, 0);
        row.f_hom_y_g = homodyne_cfi(s, b, 0, 1);
        row.f_hom_x_gamma = homodyne_cfi(s, b, 1, 0);
        row.f_hom_y_gamma = homodyne_cfi(s, b, 1, 1);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace magest
