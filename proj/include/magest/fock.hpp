// fock.hpp — truncated-number-basis oracle for the phase-space QFI formulas

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace magest::fock {

// Single-mode Gaussian density matrix in a truncated number basis, together
// with the matching phase-space pair under the vacuum-1/2 convention.
struct TruncatedState {
    int dim = 0;
    Eigen::MatrixXcd rho;
    Eigen::Matrix2d C;
    Eigen::Vector2d d;
    double nbar = 0.0, r = 0.0, phi = 0.0;
    std::complex<double> alpha{0.0, 0.0};
};

// rho = D(alpha) S(r, phi) rho_th(nbar) S^dag D^dag with truncated ladder
// operators; S(r, phi) = exp((r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2)),
// which anti-squeezes X at phi = 0. Throws TruncationLeak if 1 - Tr rho > 1e-8.
TruncatedState build_gaussian_fock(double nbar, double r, double phi,
                                   std::complex<double> alpha, int dim);

// First and second quadrature moments computed directly from rho
// (convention cross-check against the analytic (C, d) pair).
void moments_from_rho(const Eigen::MatrixXcd& rho, Eigen::Matrix2d& C_out,
                      Eigen::Vector2d& d_out);

using RhoFamily = std::function<Eigen::MatrixXcd(double)>;

// SLD QFI by diagonalization: L_mn = 2 (drho)_mn / (p_m + p_n), QFI = Tr[drho L];
// drho by central difference with step h.
double fock_sld_qfi(const RhoFamily& family, double eps, double h);

// RLD QFI: Tr[drho rho^+ drho^dag] with spectral cutoff 1e-12.
// Throws RankDeficient for near-pure rho.
double fock_rld_qfi(const RhoFamily& family, double eps, double h);

// Parameter families over the generating parameters, used by the
// validation grid. Each returns rho(value) with the others held fixed.
RhoFamily thermal_family(double r, double phi, std::complex<double> alpha, int dim);
RhoFamily squeeze_family(double nbar, double phi, std::complex<double> alpha, int dim);
// displacement measured in quadrature units eps = d1 = sqrt(2) Re(alpha)
RhoFamily displacement_family(double nbar, double r, double phi, int dim);

// Full oracle validation suite (run by the `validate` CLI subcommand).
struct ValidationCase {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<ValidationCase> run_validation_suite(int dim = 60, double fd_step = 1e-5);

}  // namespace magest::fock
