// stability.hpp — Routh-Hurwitz verdict for the 4x4 drift matrix

#pragma once

#include <array>

#include <Eigen/Dense>

namespace magest {

// Coefficients of det(A - x I) = x^4 + f1 x^3 + f2 x^2 + f3 x + f4.
struct CharPoly {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0;
};

struct StabilityVerdict {
    bool stable = false;
    bool marginal = false;  // some Hurwitz quantity within the tolerance band
    std::array<double, 4> hurwitz_values{};  // {f1, f1f2-f3, ..., fourth determinant}
    double max_real_eig = 0.0;
    CharPoly poly;
};

// Exact coefficients via the Leverrier-Faddeev recursion.
CharPoly char_poly(const Eigen::Matrix4d& A);

// Evaluates the four Hurwitz conditions and cross-checks against the
// eigenvalues of A. Quantities within +-1e-9 * (spectral scale power)
// are flagged marginal and treated as unstable.
StabilityVerdict routh_hurwitz(const Eigen::Matrix4d& A);

}  // namespace magest
