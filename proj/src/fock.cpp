// fock.cpp — brute-force QFI in a truncated number basis

#include "magest/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "magest/errors.hpp"
#include "magest/linalg.hpp"
#include "magest/metrology.hpp"

namespace magest::fock {

namespace {

using Cplx = std::complex<double>;

constexpr double kEigFloor = 1e-8;

Eigen::MatrixXcd annihilation(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd thermal_rho(double nbar, int dim) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    for (int n = 0; n < dim; ++n)
        rho(n, n) = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
    return rho;
}

}  // namespace

TruncatedState build_gaussian_fock(double nbar, double r, double phi,
                                   std::complex<double> alpha, int dim) {
    if (dim < 20) throw ConfigError("truncation dim must be >= 20");
    if (nbar < 0.0) throw ConfigError("nbar must be >= 0");

    TruncatedState st;
    st.dim = dim;
    st.nbar = nbar;
    st.r = r;
    st.phi = phi;
    st.alpha = alpha;

    Eigen::MatrixXcd a = annihilation(dim);
    Eigen::MatrixXcd ad = a.adjoint();
    Eigen::MatrixXcd rho = thermal_rho(nbar, dim);

    if (r != 0.0) {
        Eigen::MatrixXcd gen =
            0.5 * r * (std::polar(1.0, phi) * ad * ad - std::polar(1.0, -phi) * a * a);
        Eigen::MatrixXcd S = gen.exp();
        rho = S * rho * S.adjoint();
    }
    if (alpha != Cplx(0.0, 0.0)) {
        Eigen::MatrixXcd gen = alpha * ad - std::conj(alpha) * a;
        Eigen::MatrixXcd D = gen.exp();
        rho = D * rho * D.adjoint();
    }
    st.rho = rho;

    const double leak = 1.0 - rho.trace().real();
    if (leak > 1e-8)
        throw TruncationLeak("truncation leakage " + std::to_string(leak) +
                             " exceeds 1e-8; raise dim");

    // phase-space pair: S(r,phi) maps u -> (cosh r) u + (sinh r) K u with the
    // reflection K = [[cos phi, sin phi], [sin phi, -cos phi]]
    const double nu = 2.0 * nbar + 1.0;
    Eigen::Matrix2d K;
    K << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    Eigen::Matrix2d Ssym = std::cosh(r) * Eigen::Matrix2d::Identity() + std::sinh(r) * K;
    st.C = 0.5 * nu * Ssym * Ssym.transpose();
    st.d = std::sqrt(2.0) * Eigen::Vector2d(alpha.real(), alpha.imag());
    return st;
}

void moments_from_rho(const Eigen::MatrixXcd& rho, Eigen::Matrix2d& C_out,
                      Eigen::Vector2d& d_out) {
    const int dim = static_cast<int>(rho.rows());
    Eigen::MatrixXcd a = annihilation(dim);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd X = s * (a + a.adjoint());
    Eigen::MatrixXcd P = Cplx(0.0, 1.0) * s * (a.adjoint() - a);
    const Eigen::MatrixXcd quad[2] = {X, P};

    for (int i = 0; i < 2; ++i) d_out(i) = (rho * quad[i]).trace().real();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Cplx sym = 0.5 * (rho * (quad[i] * quad[j] + quad[j] * quad[i])).trace();
            C_out(i, j) = sym.real() - d_out(i) * d_out(j);
        }
}

double fock_sld_qfi(const RhoFamily& family, double eps, double h) {
    Eigen::MatrixXcd rho = family(eps);
    Eigen::MatrixXcd drho = (family(eps + h) - family(eps - h)) / (2.0 * h);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd& p = es.eigenvalues();
    Eigen::MatrixXcd dr = es.eigenvectors().adjoint() * drho * es.eigenvectors();

    // Eigenvalues below kEigFloor sit in the truncation-corrupted sector;
    // for families generated by low-order polynomials in a, a^dag the exact
    // tail contribution dies off geometrically with the floor.
    double qfi = 0.0;
    for (Eigen::Index m = 0; m < p.size(); ++m) {
        if (p(m) <= kEigFloor) continue;
        for (Eigen::Index n = 0; n < p.size(); ++n)
            if (p(n) > kEigFloor)
                qfi += 2.0 * std::norm(dr(m, n)) / (p(m) + p(n));
    }
    return qfi;
}

double fock_rld_qfi(const RhoFamily& family, double eps, double h) {
    Eigen::MatrixXcd rho = family(eps);
    if ((rho * rho).trace().real() > 1.0 - 1e-6)
        throw RankDeficient("near-pure state; RLD undefined in the truncated basis");

    Eigen::MatrixXcd drho = (family(eps + h) - family(eps - h)) / (2.0 * h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd& p = es.eigenvalues();
    Eigen::MatrixXcd dr = es.eigenvectors().adjoint() * drho * es.eigenvectors();

    // Tr[drho rho^+ drho^dag] = sum_{mn} |drho_mn|^2 / p_m above the floor
    double qfi = 0.0;
    for (Eigen::Index m = 0; m < p.size(); ++m) {
        if (p(m) <= kEigFloor) continue;
        for (Eigen::Index n = 0; n < p.size(); ++n)
            if (p(n) > kEigFloor) qfi += std::norm(dr(m, n)) / p(m);
    }
    return qfi;
}

RhoFamily thermal_family(double r, double phi, std::complex<double> alpha, int dim) {
    return [=](double nbar) { return build_gaussian_fock(nbar, r, phi, alpha, dim).rho; };
}

RhoFamily squeeze_family(double nbar, double phi, std::complex<double> alpha, int dim) {
    return [=](double r) { return build_gaussian_fock(nbar, r, phi, alpha, dim).rho; };
}

RhoFamily displacement_family(double nbar, double r, double phi, int dim) {
    return [=](double eps) {
        return build_gaussian_fock(nbar, r, phi, Cplx(eps / std::sqrt(2.0), 0.0), dim).rho;
    };
}

// ---------------------------------------------------------------------------
// validation suite
// ---------------------------------------------------------------------------

namespace {

struct PhaseSpaceSens {
    Eigen::Matrix2d dC;
    Eigen::Vector2d dd;
};

// analytic parameter derivatives of the (C, d) pair at phi = 0
PhaseSpaceSens ps_sens_thermal(double r) {
    PhaseSpaceSens s;
    s.dC = Eigen::Vector2d(std::exp(2.0 * r), std::exp(-2.0 * r)).asDiagonal();
    s.dd.setZero();
    return s;
}

PhaseSpaceSens ps_sens_squeeze(double nbar, double r) {
    const double nu = 2.0 * nbar + 1.0;
    PhaseSpaceSens s;
    s.dC = Eigen::Vector2d(nu * std::exp(2.0 * r), -nu * std::exp(-2.0 * r)).asDiagonal();
    s.dd.setZero();
    return s;
}

PhaseSpaceSens ps_sens_displacement() {
    PhaseSpaceSens s;
    s.dC.setZero();
    s.dd = Eigen::Vector2d(1.0, 0.0);
    return s;
}

double ps_sld(const TruncatedState& st, const PhaseSpaceSens& s) {
    return sld_qfim(Eigen::MatrixXd(st.C), Eigen::VectorXd(st.d),
                    {Eigen::MatrixXd(s.dC)}, {Eigen::VectorXd(s.dd)})(0, 0);
}

double ps_rld(const TruncatedState& st, const PhaseSpaceSens& s) {
    return rld_qfim(Eigen::MatrixXd(st.C), Eigen::VectorXd(st.d),
                    {Eigen::MatrixXd(s.dC)}, {Eigen::VectorXd(s.dd)})(0, 0).real();
}

ValidationCase make_case(std::string name, double expected, double actual, double tol) {
    ValidationCase c;
    c.name = std::move(name);
    c.expected = expected;
    c.actual = actual;
    c.rel_error = std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
    c.tolerance = tol;
    c.pass = c.rel_error <= tol;
    return c;
}

}  // namespace

std::vector<ValidationCase> run_validation_suite(int dim, double fd_step) {
    std::vector<ValidationCase> cases;
    const double phi = 0.0;

    // analytic anchors (phase-space route against closed forms)
    {
        const double nbar = 0.5, nu = 2.0 * nbar + 1.0;
        TruncatedState st = build_gaussian_fock(nbar, 0.0, phi, 0.0, dim);
        cases.push_back(make_case("anchor sld thermal nbar=0.5 = 1/(n(n+1))",
                                  1.0 / (nbar * (nbar + 1.0)),
                                  ps_sld(st, ps_sens_thermal(0.0)), 1e-8));
        cases.push_back(make_case("anchor rld thermal displacement = 2v/(v^2-1)",
                                  2.0 * nu / (nu * nu - 1.0),
                                  ps_rld(st, ps_sens_displacement()), 1e-6));
    }
    {
        TruncatedState st = build_gaussian_fock(0.0, 0.3, phi, 0.0, dim);
        cases.push_back(make_case("anchor sld squeezed-vacuum H_r = 2", 2.0,
                                  ps_sld(st, ps_sens_squeeze(0.0, 0.3)), 1e-10));
    }

    // oracle grid: phase-space vs Fock, plus truncation convergence
    const double nbars[] = {0.05, 0.2, 0.5, 1.0, 2.0};
    const double rs[] = {0.0, 0.3, 0.8};
    const double alphas[] = {0.0, 0.5};

    for (double nbar : nbars)
        for (double r : rs)
            for (double a : alphas) {
                const Cplx alpha(a, 0.0);
                // the Fock tail of a squeezed thermal state decays on the
                // scale of its largest quadrature variance; size the basis
                // to it so the brute-force sums converge below tolerance
                const double spread = (2.0 * nbar + 1.0) * std::exp(2.0 * std::abs(r));
                const int dim_eff = std::max(dim, 40 + static_cast<int>(9.0 * spread));
                TruncatedState st = build_gaussian_fock(nbar, r, phi, alpha, dim_eff);
                char tag[96];

                struct Family {
                    const char* name;
                    RhoFamily fock;
                    double eps;
                    PhaseSpaceSens sens;
                };
                const double d1 = std::sqrt(2.0) * a;
                std::vector<Family> families = {
                    {"nbar", thermal_family(r, phi, alpha, dim_eff), nbar, ps_sens_thermal(r)},
                    {"r", squeeze_family(nbar, phi, alpha, dim_eff), r, ps_sens_squeeze(nbar, r)},
                    {"disp", displacement_family(nbar, r, phi, dim_eff), d1,
                     ps_sens_displacement()},
                };

                for (const auto& fam : families) {
                    const double h = fd_step * std::max(1.0, std::abs(fam.eps));
                    const double sld_fock = fock_sld_qfi(fam.fock, fam.eps, h);
                    const double rld_fock = fock_rld_qfi(fam.fock, fam.eps, h);

                    std::snprintf(tag, sizeof tag, "sld n=%.2f r=%.1f a=%.1f par=%s", nbar,
                                  r, a, fam.name);
                    cases.push_back(make_case(tag, sld_fock, ps_sld(st, fam.sens), 1e-4));
                    std::snprintf(tag, sizeof tag, "rld n=%.2f r=%.1f a=%.1f par=%s", nbar,
                                  r, a, fam.name);
                    cases.push_back(make_case(tag, rld_fock, ps_rld(st, fam.sens), 1e-4));

                    // dim -> dim_eff + 20 convergence of the Fock route
                    RhoFamily big = [&]() -> RhoFamily {
                        if (fam.name[0] == 'n') return thermal_family(r, phi, alpha, dim_eff + 20);
                        if (fam.name[0] == 'r') return squeeze_family(nbar, phi, alpha, dim_eff + 20);
                        return displacement_family(nbar, r, phi, dim_eff + 20);
                    }();
                    std::snprintf(tag, sizeof tag, "conv n=%.2f r=%.1f a=%.1f par=%s", nbar,
                                  r, a, fam.name);
                    cases.push_back(
                        make_case(tag, sld_fock, fock_sld_qfi(big, fam.eps, h), 1e-6));
                }
            }
    return cases;
}

}  // namespace magest::fock
