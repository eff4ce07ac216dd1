// metrology.hpp — phase-space SLD/RLD quantum Fisher information and CR bounds

#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "magest/dynamics.hpp"
#include "magest/params.hpp"

namespace magest {

// SLD QFIM  H_ab = 2 vec(dC_a)^T M^+ vec(dC_b) + dd_a^T C^-1 dd_b,
// with M = 4 (C (x) C) - (Ohm (x) Ohm) and a singular-value cutoff
// pseudoinverse (pure states make M singular). Works for any mode count;
// here the state is 2-mode (4x4 C) or 1-mode (2x2 C) in the oracle tests.
Eigen::MatrixXd sld_qfim(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                         const std::vector<Eigen::MatrixXd>& dC,
                         const std::vector<Eigen::VectorXd>& dd);

// RLD QFIM  J_ab = 2 vec(dC_a)^dag Sigma^-1 vec(dC_b) + 2 dd_a^T Gamma^-1 dd_b,
// Gamma = 2C + i Ohm, Sigma = Gamma (x) Gamma (Gamma is Hermitian).
// Throws SingularGamma for (near-)pure states.
Eigen::MatrixXcd rld_qfim(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                          const std::vector<Eigen::MatrixXd>& dC,
                          const std::vector<Eigen::VectorXd>& dd);

// 4x4-state convenience overloads
Eigen::MatrixXd sld_qfim(const GaussianState& state, const SensitivityBundle& sens);
Eigen::MatrixXcd rld_qfim(const GaussianState& state, const SensitivityBundle& sens);

enum class ChosenBound { SLD, RLD, Equal };

struct BoundsReport {
    double b_s = 0.0;
    double b_r = 0.0;   // +inf when the RLD matrix is unavailable
    double bmi = 0.0;
    double ratio = 0.0; // b_s / b_r
    ChosenBound chosen = ChosenBound::SLD;
};

std::string to_string(ChosenBound c);

// B_S = Tr[H^-1], B_R = Tr[Re J^-1] + Tr[|Im J^-1|], BMI = min (M = 1).
// Pass has_rld = false when the RLD matrix is unavailable (SingularGamma).
BoundsReport bounds(const Eigen::MatrixXd& H, const Eigen::MatrixXcd& J, bool has_rld = true);

struct Regime {
    bool steady = true;
    double time = 0.0;  // used when steady == false
};

// Full pipeline: model -> state + sensitivities for {g_mc, gamma_c} ->
// SLD/RLD QFIM -> most-informative bound.
BoundsReport bmi_at(const PhysicalParams& params, const Regime& regime = {},
                    const ModelOptions& opts = {});

}  // namespace magest
