// params.hpp — physical parameter set, estimated-parameter ids, config parsing

#pragma once

#include <string>
#include <vector>

namespace magest {

// All rates/detunings are angular frequencies [rad/s]. The config layer
// accepts "MHz_2pi"-style suffixes so values can be entered as quoted in
// the literature (gamma_c/2pi = 5 MHz etc.) without silent 2pi slips.
struct PhysicalParams {
    double delta_c = 0.0;       // cavity detuning [rad/s]
    double delta_m = 0.0;       // magnon detuning [rad/s]
    double gamma_c = 0.0;       // cavity decay [rad/s]
    double gamma_m = 0.0;       // magnon decay [rad/s]
    double g_mc = 0.0;          // magnon-photon coupling [rad/s]
    double lambda_opa = 0.0;    // OPA gain [rad/s]
    double theta = 0.0;         // OPA pump phase [rad]
    double power = 0.0;         // drive power [W]
    double omega_laser = 0.0;   // drive angular frequency [rad/s]
    double omega_c = 0.0;       // cavity angular frequency [rad/s], thermal occupancy only
    double temperature = 0.0;   // bath temperature [K]

    // throws ConfigError on violated invariants
    void validate() const;
};

// Baseline operating point used throughout the reported sweeps:
// P = 500 mW, omega_L/2pi = 10 GHz, T = 10 mK, gamma_c/2pi = 5 MHz,
// gamma_m/2pi = 40 MHz, Delta_c/2pi = 40 MHz, Delta_m = 0,
// g_mc/2pi = 41 MHz, lambda = 0.65*gamma_c, theta = 1.65*pi.
PhysicalParams baseline_params();

// Identifiers for parameters that can be estimated or swept.
enum class ParamId {
    GMc,
    GammaC,
    GammaM,
    DeltaC,
    DeltaM,
    Lambda,
    Theta,
    Power,
    Temperature,
    Time,  // sweep axis only (dynamics regime)
};

std::string to_string(ParamId id);
ParamId param_id_from_string(const std::string& name);  // throws ConfigError

double get_param(const PhysicalParams& p, ParamId id);
void set_param(PhysicalParams& p, ParamId id, double value);

// Flat key-value config text; keys match PhysicalParams field names,
// values carry explicit unit suffixes:
//   gamma_c = 5 MHz_2pi
//   theta = 1.65 pi
//   temperature = 10 mK
//   power = 500 mW
// Angular-frequency units: rad_s, Hz_2pi, kHz_2pi, MHz_2pi, GHz_2pi.
// Bare Hz/MHz/... are rejected to keep the 2pi convention explicit.
PhysicalParams parse_config(const std::string& text);
PhysicalParams load_config_file(const std::string& path);

}  // namespace magest
