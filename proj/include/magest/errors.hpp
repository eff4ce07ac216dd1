// errors.hpp — exception hierarchy for numerical failure modes

#pragma once

#include <stdexcept>
#include <string>

namespace magest {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// drift matrix numerically singular (system on a stability boundary)
struct SingularDrift : Error {
    using Error::Error;
};

// steady-state solve requested for a non-Hurwitz drift matrix
struct NotHurwitz : Error {
    using Error::Error;
};

// linear system condition number above threshold
struct IllConditioned : Error {
    using Error::Error;
};

// adaptive integrator could not meet tolerance
struct StepFailure : Error {
    using Error::Error;
};

// a finite-difference perturbation left the stable region
struct UnstablePerturbation : Error {
    using Error::Error;
};

// covariance fails the physicality bound C + (i/2)Ohm >= 0
struct NonPhysicalState : Error {
    using Error::Error;
};

// Gamma = 2C + i*Ohm numerically singular (pure state); RLD unavailable
struct SingularGamma : Error {
    explicit SingularGamma(const std::string& what, double sv = 0.0)
        : Error(what), smallest_singular_value(sv) {}
    double smallest_singular_value;
};

// QFIM singular: parameter not identifiable at this operating point
struct SingularQfim : Error {
    using Error::Error;
};

// density matrix trace leaked past tolerance; raise the truncation dim
struct TruncationLeak : Error {
    using Error::Error;
};

// near-pure density matrix; RLD in the Fock basis unavailable
struct RankDeficient : Error {
    using Error::Error;
};

// malformed configuration input
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace magest
