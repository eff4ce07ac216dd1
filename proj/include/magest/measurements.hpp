// measurements.hpp — classical Fisher information for Gaussian detection schemes

#pragma once

#include <vector>

#include "magest/dynamics.hpp"
#include "magest/params.hpp"

namespace magest {

// Added-noise scale for heterodyne detection. Physical heterodyne adds half
// a vacuum unit per quadrature under this covariance convention (s = 1/2);
// s = 1 reproduces the sigma = C + I variant.
inline constexpr double kHeterodyneNoisePhysical = 0.5;
inline constexpr double kHeterodyneNoiseLiteral = 1.0;

// F = (1/2) Tr(sigma^-1 dsigma sigma^-1 dsigma) + dd^T sigma^-1 dd,
// sigma = C + s I, dsigma = dC (parameter index into sens).
double heterodyne_cfi(const GaussianState& state, const SensitivityBundle& sens,
                      int param_index, double noise_scale = kHeterodyneNoisePhysical);

// F^j = [2 C_jj (dd_j)^2 + (dC_jj)^2] / (2 C_jj^2), quadrature j in 0..3.
double homodyne_cfi(const GaussianState& state, const SensitivityBundle& sens,
                    int param_index, int quadrature);

// Per-time comparison of single-parameter SLD QFI against heterodyne and
// cavity-quadrature homodyne CFIs for the estimated parameters {g_mc, gamma_c}.
struct CfiProfileRow {
    double t = 0.0;
    double h_g = 0.0, h_gamma = 0.0;          // single-parameter SLD QFI diagonals
    double f_het_g = 0.0, f_het_gamma = 0.0;  // heterodyne CFI
    double f_hom_x_g = 0.0, f_hom_y_g = 0.0;  // homodyne on X_c / Y_c
    double f_hom_x_gamma = 0.0, f_hom_y_gamma = 0.0;
};

std::vector<CfiProfileRow> cfi_vs_qfi_profile(const PhysicalParams& params,
                                              const std::vector<double>& t_grid,
                                              double het_noise = kHeterodyneNoisePhysical,
                                              const ModelOptions& opts = {});

}  // namespace magest
