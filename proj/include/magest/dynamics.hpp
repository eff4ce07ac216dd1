// dynamics.hpp — Gaussian moment dynamics, steady-state solvers, sensitivities

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "magest/model.hpp"
#include "magest/params.hpp"

namespace magest {

struct GaussianState {
    Eigen::Vector4d d = Eigen::Vector4d::Zero();       // quadrature means
    Eigen::Matrix4d C = Eigen::Matrix4d::Identity() / 2.0;  // symmetric covariance
};

// Smallest eigenvalue of C + (i/2) Ohm; >= -tol for a physical state.
double physicality_margin(const Eigen::Matrix4d& C);
bool is_physical(const Eigen::Matrix4d& C, double tol = 1e-10);

// Parameter sensitivities of the state, ordered as `params`.
struct SensitivityBundle {
    std::vector<ParamId> params;
    std::vector<Eigen::Matrix4d> dC;  // dC/d eps_alpha, symmetric
    std::vector<Eigen::Vector4d> dd;  // dd/d eps_alpha
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;
    std::vector<SensitivityBundle> sensitivities;  // empty unless requested
};

// Solves A C + C A^T + D = 0 via the 16x16 vectorized system; the result is
// symmetrized and satisfies ||A C + C A^T + D||_F <= 1e-10 ||D||_F.
// Throws NotHurwitz / IllConditioned.
Eigen::Matrix4d lyapunov_steady(const Eigen::Matrix4d& A, const Eigen::Matrix4d& D);

// Sylvester-type solve  A X + X A^T = -RHS  with RHS symmetric (the same
// linear operator as the Lyapunov equation).
Eigen::Matrix4d sylvester_steady(const Eigen::Matrix4d& A, const Eigen::Matrix4d& rhs);

struct IntegrateOptions {
    bool with_sensitivities = false;
    std::vector<ParamId> sens_params = {ParamId::GMc, ParamId::GammaC};
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    GaussianState initial;  // vacuum by default
    ModelOptions model_opts;
};

// Integrates d_dot = A d + b and C_dot = A C + C A^T + D (plus the forward
// sensitivity equations when requested) with an adaptive embedded RK pair,
// emitting states on the supplied grid. t_grid must be increasing with
// t_grid[0] = 0. Throws StepFailure on unmet tolerance.
Trajectory integrate(const PhysicalParams& params, const std::vector<double>& t_grid,
                     const IntegrateOptions& opts = {});

// Analytic steady-state sensitivities via differentiated Lyapunov/mean-field
// equations. Supported ids: GMc, GammaC.
SensitivityBundle steady_sensitivities(const PhysicalParams& params,
                                       const std::vector<ParamId>& ids,
                                       const ModelOptions& opts = {});

// Central-difference oracle for the steady-state sensitivities.
// Throws UnstablePerturbation if a perturbed model leaves the stable region.
SensitivityBundle fd_sensitivities(const PhysicalParams& params,
                                   const std::vector<ParamId>& ids, double rel_step = 1e-6,
                                   const ModelOptions& opts = {});

// Steady Gaussian state (lyapunov_steady + steady_means), stability-checked.
GaussianState steady_state(const PhysicalParams& params, const ModelOptions& opts = {});

// Analytic parameter derivatives of the model matrices (GMc, GammaC).
struct ModelDerivatives {
    Eigen::Matrix4d dA;
    Eigen::Matrix4d dD;
    Eigen::Vector4d db;
};
ModelDerivatives model_derivatives(const PhysicalParams& params, ParamId id,
                                   const ModelOptions& opts = {});

}  // namespace magest
