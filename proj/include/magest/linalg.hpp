// linalg.hpp — small dense-matrix helpers shared across modules

#pragma once

#include <Eigen/Dense>

namespace magest {

// Kronecker product A (x) B.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
    using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> K(A.rows() * B.rows(),
                                                            A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

// Column-stacking vectorization; satisfies vec(A X B) = (B^T (x) A) vec(X).
template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& M) {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(M.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i) v(k++) = M(i, j);
    return v;
}

// 2n x 2n symplectic form, block-diagonal repetition of [[0,1],[-1,0]].
inline Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

// Moore-Penrose pseudoinverse with relative singular-value cutoff.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pseudoinverse(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M,
    double rel_cutoff = 1e-12) {
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(
        M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double cutoff = rel_cutoff * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv_sv.asDiagonal() *
           svd.matrixU().adjoint();
}

// 2-norm condition number via SVD (intended for small dense systems).
template <typename Derived>
double condition_number(const Eigen::MatrixBase<Derived>& M) {
    Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>>
        svd(M);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

}  // namespace magest
