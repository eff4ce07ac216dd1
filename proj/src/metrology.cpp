// metrology.cpp — SLD/RLD QFIM assembly and scalar Cramer-Rao bounds

#include "magest/metrology.hpp"

#include <cmath>
#include <limits>

#include "magest/errors.hpp"
#include "magest/linalg.hpp"

namespace magest {

namespace {

using Cplx = std::complex<double>;

void check_physical(const Eigen::MatrixXd& C) {
    const int n = static_cast<int>(C.rows()) / 2;
    Eigen::MatrixXcd test = C.cast<Cplx>() +
                            Cplx(0.0, 0.5) * symplectic_form(n).cast<Cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, C.norm()))
        throw NonPhysicalState("covariance violates C + (i/2) Ohm >= 0");
}

}  // namespace

Eigen::MatrixXd sld_qfim(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                         const std::vector<Eigen::MatrixXd>& dC,
                         const std::vector<Eigen::VectorXd>& dd) {
    (void)d;
    check_physical(C);
    const int n_par = static_cast<int>(dC.size());
    const int n = static_cast<int>(C.rows()) / 2;
    Eigen::MatrixXd omega = symplectic_form(n);

    Eigen::MatrixXd M = 4.0 * kron(C, C) - kron(omega, omega);
    Eigen::MatrixXd Mpinv = pseudoinverse<double>(M, 1e-12);
    Eigen::MatrixXd Cinv = C.inverse();

    Eigen::MatrixXd H(n_par, n_par);
    for (int a = 0; a < n_par; ++a) {
        Eigen::VectorXd va = vec(dC[a]);
        for (int b = 0; b <= a; ++b) {
            double val = 2.0 * va.dot(Mpinv * vec(dC[b])) + dd[a].dot(Cinv * dd[b]);
            H(a, b) = val;
            H(b, a) = val;
        }
    }
    return H;
}

Eigen::MatrixXcd rld_qfim(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                          const std::vector<Eigen::MatrixXd>& dC,
                          const std::vector<Eigen::VectorXd>& dd) {
    (void)d;
    check_physical(C);
    const int n_par = static_cast<int>(dC.size());
    const int n = static_cast<int>(C.rows()) / 2;
    Eigen::MatrixXcd gamma =
        2.0 * C.cast<Cplx>() + Cplx(0.0, 1.0) * symplectic_form(n).cast<Cplx>();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gamma);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-10 * sv(0))
        throw SingularGamma("Gamma = 2C + i*Ohm singular (pure state); RLD unavailable",
                            sv(sv.size() - 1));

    // Sigma = Gamma (x) Gamma; Gamma is Hermitian, so this is Gamma^dag (x) Gamma
    Eigen::MatrixXcd sigma = kron(gamma, gamma);
    Eigen::PartialPivLU<Eigen::MatrixXcd> sigma_lu(sigma);
    Eigen::MatrixXcd gamma_inv = gamma.inverse();

    Eigen::MatrixXcd J(n_par, n_par);
    for (int a = 0; a < n_par; ++a) {
        Eigen::VectorXcd va = vec(dC[a]).cast<Cplx>();
        Eigen::VectorXcd da = dd[a].cast<Cplx>();
        for (int b = 0; b < n_par; ++b) {
            Eigen::VectorXcd vb = vec(dC[b]).cast<Cplx>();
            Eigen::VectorXcd db = dd[b].cast<Cplx>();
            J(a, b) = 2.0 * va.dot(sigma_lu.solve(vb)) + 2.0 * da.dot(gamma_inv * db);
        }
    }
    // Hermitize; assembly asymmetry must stay at round-off level
    Eigen::MatrixXcd Jh = 0.5 * (J + J.adjoint());
    if ((J - Jh).norm() > 1e-8 * std::max(1.0, Jh.norm()))
        throw Error("RLD QFIM assembly deviates from Hermitian beyond tolerance");
    return Jh;
}

Eigen::MatrixXd sld_qfim(const GaussianState& state, const SensitivityBundle& sens) {
    std::vector<Eigen::MatrixXd> dC(sens.dC.begin(), sens.dC.end());
    std::vector<Eigen::VectorXd> dd(sens.dd.begin(), sens.dd.end());
    return sld_qfim(state.C, state.d, dC, dd);
}

Eigen::MatrixXcd rld_qfim(const GaussianState& state, const SensitivityBundle& sens) {
    std::vector<Eigen::MatrixXd> dC(sens.dC.begin(), sens.dC.end());
    std::vector<Eigen::VectorXd> dd(sens.dd.begin(), sens.dd.end());
    return rld_qfim(state.C, state.d, dC, dd);
}

std::string to_string(ChosenBound c) {
    switch (c) {
        case ChosenBound::SLD: return "SLD";
        case ChosenBound::RLD: return "RLD";
        case ChosenBound::Equal: return "EQUAL";
    }
    return "?";
}

BoundsReport bounds(const Eigen::MatrixXd& H, const Eigen::MatrixXcd& J, bool has_rld) {
    if (condition_number(H) > 1e12)
        throw SingularQfim("SLD QFIM numerically singular; parameter not identifiable");

    BoundsReport r;
    r.b_s = H.inverse().trace();

    if (has_rld) {
        Eigen::MatrixXcd Jinv = J.inverse();
        Eigen::MatrixXd re = Jinv.real();
        Eigen::MatrixXd im = Jinv.imag();
        // Tr|A| with A = Im(J^-1): sum of singular values
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(im);
        r.b_r = re.trace() + svd.singularValues().sum();
    } else {
        r.b_r = std::numeric_limits<double>::infinity();
    }

    r.bmi = std::min(r.b_s, r.b_r);
    r.ratio = r.b_s / r.b_r;
    const double tol = 1e-12 * std::max(r.b_s, std::isfinite(r.b_r) ? r.b_r : r.b_s);
    if (std::abs(r.b_s - r.b_r) <= tol)
        r.chosen = ChosenBound::Equal;
    else
        r.chosen = (r.b_s < r.b_r) ? ChosenBound::SLD : ChosenBound::RLD;
    return r;
}

BoundsReport bmi_at(const PhysicalParams& params, const Regime& regime,
                    const ModelOptions& opts) {
    const std::vector<ParamId> est = {ParamId::GMc, ParamId::GammaC};
    GaussianState state;
    SensitivityBundle sens;
    if (regime.steady) {
        state = steady_state(params, opts);
        sens = steady_sensitivities(params, est, opts);
    } else {
        IntegrateOptions io;
        io.with_sensitivities = true;
        io.sens_params = est;
        io.model_opts = opts;
        std::vector<double> grid = {0.0};
        if (regime.time > 0.0) grid.push_back(regime.time);
        Trajectory traj = integrate(params, grid, io);
        state = traj.states.back();
        sens = traj.sensitivities.back();
    }

    Eigen::MatrixXd H = sld_qfim(state, sens);
    try {
        Eigen::MatrixXcd J = rld_qfim(state, sens);
        return bounds(H, J, true);
    } catch (const SingularGamma&) {
        return bounds(H, Eigen::MatrixXcd(), false);
    }
}

}  // namespace magest
