// dynamics.cpp — Lyapunov/Sylvester solvers, RK45 moment integrator, sensitivities

#include "magest/dynamics.hpp"

#include <cmath>
#include <complex>

#include "magest/errors.hpp"
#include "magest/linalg.hpp"
#include "magest/stability.hpp"

namespace magest {

double physicality_margin(const Eigen::Matrix4d& C) {
    Eigen::Matrix4cd test = C.cast<std::complex<double>>();
    Eigen::MatrixXd omega = symplectic_form(2);
    test += std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(test, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_physical(const Eigen::Matrix4d& C, double tol) {
    // tolerance scales with the state size so hot states are not rejected
    // on round-off
    return physicality_margin(C) >= -tol * std::max(1.0, C.norm());
}

namespace {

// vectorized Lyapunov operator L = I (x) A + A (x) I acting on vec(X)
Eigen::MatrixXd lyapunov_operator(const Eigen::Matrix4d& A) {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    return kron(I, A) + kron(A, I);
}

Eigen::Matrix4d unvec4(const Eigen::VectorXd& v) {
    Eigen::Matrix4d M;
    int k = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) M(i, j) = v(k++);
    return M;
}

Eigen::Matrix4d solve_lyapunov_like(const Eigen::Matrix4d& A, const Eigen::Matrix4d& rhs) {
    // solves A X + X A^T + rhs = 0 with one step of iterative refinement
    Eigen::MatrixXd L = lyapunov_operator(A);
    if (condition_number(L) > 1e12)
        throw IllConditioned("vectorized Lyapunov system condition number exceeds 1e12");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(L);
    Eigen::VectorXd x = lu.solve(-vec(rhs));
    Eigen::VectorXd r = L * x + vec(rhs);
    x -= lu.solve(r);
    Eigen::Matrix4d X = unvec4(x);
    return 0.5 * (X + X.transpose());
}

}  // namespace

Eigen::Matrix4d lyapunov_steady(const Eigen::Matrix4d& A, const Eigen::Matrix4d& D) {
    StabilityVerdict verdict = routh_hurwitz(A);
    if (!verdict.stable)
        throw NotHurwitz("drift matrix is not Hurwitz; no steady-state covariance");
    return solve_lyapunov_like(A, D);
}

Eigen::Matrix4d sylvester_steady(const Eigen::Matrix4d& A, const Eigen::Matrix4d& rhs) {
    return solve_lyapunov_like(A, rhs);
}

GaussianState steady_state(const PhysicalParams& params, const ModelOptions& opts) {
    LinearModel m = build_model(params, opts);
    GaussianState s;
    s.C = lyapunov_steady(m.drift, m.diffusion);
    s.d = steady_means(m);
    return s;
}

ModelDerivatives model_derivatives(const PhysicalParams& params, ParamId id,
                                   const ModelOptions& opts) {
    ModelDerivatives der;
    der.dA.setZero();
    der.dD.setZero();
    der.db.setZero();
    switch (id) {
        case ParamId::GMc:
            der.dA(0, 3) = 1.0;
            der.dA(1, 2) = -1.0;
            der.dA(2, 1) = 1.0;
            der.dA(3, 0) = -1.0;
            break;
        case ParamId::GammaC: {
            der.dA(0, 0) = -1.0;
            der.dA(1, 1) = -1.0;
            const double nc = opts.nbar_cavity_override.value_or(
                thermal_occupation(params.omega_c, params.temperature));
            der.dD(0, 0) = 2.0 * nc + 1.0;
            der.dD(1, 1) = 2.0 * nc + 1.0;
            if (opts.drive_couples_gamma && params.gamma_c > 0.0) {
                const double eps = drive_rate(params.power, params.gamma_c, params.omega_laser);
                der.db(0) = std::sqrt(2.0) * eps / (2.0 * params.gamma_c);
            }
            break;
        }
        default:
            throw ConfigError("analytic sensitivities implemented for g_mc and gamma_c only; got " +
                              to_string(id));
    }
    return der;
}

SensitivityBundle steady_sensitivities(const PhysicalParams& params,
                                       const std::vector<ParamId>& ids,
                                       const ModelOptions& opts) {
    LinearModel m = build_model(params, opts);
    Eigen::Matrix4d C = lyapunov_steady(m.drift, m.diffusion);
    Eigen::Vector4d d = steady_means(m);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(m.drift);

    SensitivityBundle out;
    out.params = ids;
    for (ParamId id : ids) {
        ModelDerivatives der = model_derivatives(params, id, opts);
        Eigen::Matrix4d rhs = der.dA * C + C * der.dA.transpose() + der.dD;
        out.dC.push_back(sylvester_steady(m.drift, rhs));
        out.dd.push_back(lu.solve(-(der.dA * d + der.db)));
    }
    return out;
}

SensitivityBundle fd_sensitivities(const PhysicalParams& params,
                                   const std::vector<ParamId>& ids, double rel_step,
                                   const ModelOptions& opts) {
    SensitivityBundle out;
    out.params = ids;
    for (ParamId id : ids) {
        const double base = get_param(params, id);
        const double h = rel_step * (base != 0.0 ? std::abs(base) : 1.0);

        auto eval = [&](double value) {
            PhysicalParams p = params;
            set_param(p, id, value);
            LinearModel m = build_model(p, opts);
            if (id == ParamId::GammaC && !opts.drive_couples_gamma) {
                // hold the drive rate at its unperturbed value
                m.epsilon_l = drive_rate(params.power, params.gamma_c, params.omega_laser);
                m.drive = Eigen::Vector4d(std::sqrt(2.0) * m.epsilon_l, 0, 0, 0);
            }
            if (!routh_hurwitz(m.drift).stable)
                throw UnstablePerturbation("perturbed model unstable for " + to_string(id));
            GaussianState s;
            s.C = solve_lyapunov_like(m.drift, m.diffusion);
            s.d = steady_means(m);
            return s;
        };

        GaussianState plus = eval(base + h);
        GaussianState minus = eval(base - h);
        out.dC.push_back((plus.C - minus.C) / (2.0 * h));
        out.dd.push_back((plus.d - minus.d) / (2.0 * h));
    }
    return out;
}

// ---------------------------------------------------------------------------
// adaptive Dormand-Prince RK45 over the packed moment + sensitivity state
// ---------------------------------------------------------------------------

namespace {

constexpr int kTri[10][2] = {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1},
                             {2, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 3}};

void pack_sym(const Eigen::Matrix4d& M, double* out) {
    for (int k = 0; k < 10; ++k) out[k] = M(kTri[k][0], kTri[k][1]);
}

Eigen::Matrix4d unpack_sym(const double* in) {
    Eigen::Matrix4d M;
    for (int k = 0; k < 10; ++k) {
        M(kTri[k][0], kTri[k][1]) = in[k];
        M(kTri[k][1], kTri[k][0]) = in[k];
    }
    return M;
}

struct MomentOde {
    Eigen::Matrix4d A, D;
    Eigen::Vector4d b;
    std::vector<ModelDerivatives> der;  // per sensitivity parameter

    int dim() const { return 14 + 14 * static_cast<int>(der.size()); }

    Eigen::VectorXd operator()(const Eigen::VectorXd& y) const {
        Eigen::VectorXd dy(y.size());
        Eigen::Vector4d d = y.segment<4>(0);
        Eigen::Matrix4d C = unpack_sym(y.data() + 4);

        dy.segment<4>(0) = A * d + b;
        Eigen::Matrix4d Cdot = A * C + C * A.transpose() + D;
        pack_sym(Cdot, dy.data() + 4);

        for (std::size_t a = 0; a < der.size(); ++a) {
            const int off = 14 + 14 * static_cast<int>(a);
            Eigen::Vector4d sd = y.segment<4>(off);
            Eigen::Matrix4d sC = unpack_sym(y.data() + off + 4);
            dy.segment<4>(off) = der[a].dA * d + A * sd + der[a].db;
            Eigen::Matrix4d sCdot = der[a].dA * C + A * sC + sC * A.transpose() +
                                    C * der[a].dA.transpose() + der[a].dD;
            pack_sym(sCdot, dy.data() + off + 4);
        }
        return dy;
    }
};

// Dormand-Prince 5(4) coefficients
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    // clang-format off
    static constexpr double a21 = 1.0/5;
    static constexpr double a31 = 3.0/40,       a32 = 9.0/40;
    static constexpr double a41 = 44.0/45,      a42 = -56.0/15,      a43 = 32.0/9;
    static constexpr double a51 = 19372.0/6561, a52 = -25360.0/2187, a53 = 64448.0/6561, a54 = -212.0/729;
    static constexpr double a61 = 9017.0/3168,  a62 = -355.0/33,     a63 = 46732.0/5247, a64 = 49.0/176,  a65 = -5103.0/18656;
    static constexpr double b1 = 35.0/384,      b3 = 500.0/1113,     b4 = 125.0/192,     b5 = -2187.0/6784, b6 = 11.0/84;
    static constexpr double e1 = 71.0/57600,    e3 = -71.0/16695,    e4 = 71.0/1920,     e5 = -17253.0/339200, e6 = 22.0/525, e7 = -1.0/40;
    // clang-format on
};

}  // namespace

Trajectory integrate(const PhysicalParams& params, const std::vector<double>& t_grid,
                     const IntegrateOptions& opts) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw ConfigError("time grid must start at t = 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] <= t_grid[i - 1]) throw ConfigError("time grid must be increasing");

    LinearModel m = build_model(params, opts.model_opts);
    MomentOde ode{m.drift, m.diffusion, m.drive, {}};
    if (opts.with_sensitivities)
        for (ParamId id : opts.sens_params)
            ode.der.push_back(model_derivatives(params, id, opts.model_opts));

    Eigen::VectorXd y = Eigen::VectorXd::Zero(ode.dim());
    y.segment<4>(0) = opts.initial.d;
    pack_sym(opts.initial.C, y.data() + 4);
    // sensitivities start at zero

    Trajectory traj;
    auto emit = [&](double t, const Eigen::VectorXd& yv) {
        traj.times.push_back(t);
        GaussianState s;
        s.d = yv.segment<4>(0);
        s.C = unpack_sym(yv.data() + 4);
        traj.states.push_back(s);
        if (opts.with_sensitivities) {
            SensitivityBundle sb;
            sb.params = opts.sens_params;
            for (std::size_t a = 0; a < ode.der.size(); ++a) {
                const int off = 14 + 14 * static_cast<int>(a);
                sb.dd.push_back(yv.segment<4>(off));
                sb.dC.push_back(unpack_sym(yv.data() + off + 4));
            }
            traj.sensitivities.push_back(std::move(sb));
        }
    };

    emit(0.0, y);

    double t = 0.0;
    const double t_end = t_grid.back();
    const double scale = std::max(m.drift.norm(), 1.0);
    double h = std::min(1e-2 / scale, t_end > 0 ? t_end : 1.0);
    const double h_min = 1e-16 * std::max(t_end, 1.0 / scale);
    Eigen::VectorXd k1 = ode(y);  // FSAL
    std::size_t next = 1;
    long steps = 0;

    while (next < t_grid.size()) {
        bool hit_grid = false;
        double h_try = h;
        if (t + h_try >= t_grid[next]) {
            h_try = t_grid[next] - t;
            hit_grid = true;
        }

        using D = Dopri5;
        Eigen::VectorXd k2 = ode(y + h_try * (D::a21 * k1));
        Eigen::VectorXd k3 = ode(y + h_try * (D::a31 * k1 + D::a32 * k2));
        Eigen::VectorXd k4 = ode(y + h_try * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
        Eigen::VectorXd k5 =
            ode(y + h_try * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
        Eigen::VectorXd k6 = ode(y + h_try * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 +
                                              D::a64 * k4 + D::a65 * k5));
        Eigen::VectorXd y5 =
            y + h_try * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
        Eigen::VectorXd k7 = ode(y5);
        Eigen::VectorXd err_v = h_try * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 +
                                         D::e6 * k6 + D::e7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            err = std::max(err, std::abs(err_v(i)) / sc);
        }

        if (err <= 1.0) {
            t += h_try;
            y = y5;
            k1 = k7;
            if (hit_grid) {
                emit(t_grid[next], y);
                ++next;
            }
        }
        double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h = h_try * std::clamp(factor, 0.2, 5.0);
        if (h < h_min || ++steps > 50'000'000)
            throw StepFailure("adaptive integrator cannot meet tolerance (stiff or unstable)");
    }
    return traj;
}

}  // namespace magest
