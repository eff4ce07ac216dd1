// stability.cpp — characteristic polynomial and Routh-Hurwitz conditions

#include "magest/stability.hpp"

#include <algorithm>
#include <cmath>

namespace magest {

CharPoly char_poly(const Eigen::Matrix4d& A) {
    // Leverrier-Faddeev: M1 = A, c1 = -tr M1, M_{k+1} = A(M_k + c_k I).
    CharPoly p;
    Eigen::Matrix4d M = A;
    p.f1 = -M.trace();
    M = A * (M + p.f1 * Eigen::Matrix4d::Identity());
    p.f2 = -M.trace() / 2.0;
    M = A * (M + p.f2 * Eigen::Matrix4d::Identity());
    p.f3 = -M.trace() / 3.0;
    M = A * (M + p.f3 * Eigen::Matrix4d::Identity());
    p.f4 = -M.trace() / 4.0;
    return p;
}

StabilityVerdict routh_hurwitz(const Eigen::Matrix4d& A) {
    StabilityVerdict v;
    v.poly = char_poly(A);
    const double f1 = v.poly.f1, f2 = v.poly.f2, f3 = v.poly.f3, f4 = v.poly.f4;

    v.hurwitz_values = {
        f1,
        f1 * f2 - f3,
        f1 * f2 * f3 - f1 * f1 * f4 - f3 * f3,
        f1 * f2 * f3 * f4 - f1 * f1 * f4 * f4 - f3 * f3 * f4 - f4 * f4,
    };

    // Tolerance band scales with the homogeneous dimension of each quantity
    // (rad/s to the powers 1, 3, 6, 10).
    const double scale = std::max(1.0, A.norm());
    const double powers[4] = {1.0, 3.0, 6.0, 10.0};
    bool all_positive = true;
    for (int i = 0; i < 4; ++i) {
        const double tol = 1e-9 * std::pow(scale, powers[i]);
        if (std::abs(v.hurwitz_values[i]) <= tol) v.marginal = true;
        if (v.hurwitz_values[i] <= tol) all_positive = false;
    }
    v.stable = all_positive && !v.marginal;

    Eigen::EigenSolver<Eigen::Matrix4d> es(A, false);
    v.max_real_eig = es.eigenvalues().real().maxCoeff();
    return v;
}

}  // namespace magest
