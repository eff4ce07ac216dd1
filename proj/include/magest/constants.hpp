// constants.hpp — physical constants (CODATA 2018, exact SI values)

#pragma once

namespace magest::constants {

inline constexpr double hbar = 1.054571817e-34;  // reduced Planck constant [J s]
inline constexpr double k_B  = 1.380649e-23;     // Boltzmann constant [J/K]
inline constexpr double pi   = 3.14159265358979323846;

}  // namespace magest::constants
