// params.cpp — parameter validation, id mapping, config parsing

#include "magest/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "magest/constants.hpp"
#include "magest/errors.hpp"

namespace magest {

using constants::pi;

void PhysicalParams::validate() const {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(std::string("invalid parameters: ") + msg);
    };
    require(gamma_c > 0.0, "gamma_c must be > 0");
    require(gamma_m > 0.0, "gamma_m must be > 0");
    require(lambda_opa >= 0.0, "lambda_opa must be >= 0");
    require(power >= 0.0, "power must be >= 0");
    require(temperature >= 0.0, "temperature must be >= 0");
    require(omega_laser > 0.0, "omega_laser must be > 0");
    require(omega_c > 0.0, "omega_c must be > 0");
    require(std::isfinite(delta_c) && std::isfinite(delta_m), "detunings must be finite");
    require(std::isfinite(g_mc), "g_mc must be finite");
    require(std::isfinite(theta), "theta must be finite");
}

PhysicalParams baseline_params() {
    PhysicalParams p;
    p.gamma_c = 2.0 * pi * 5.0e6;
    p.gamma_m = 2.0 * pi * 40.0e6;
    p.delta_c = 2.0 * pi * 40.0e6;
    p.delta_m = 0.0;
    p.g_mc = 2.0 * pi * 41.0e6;
    p.lambda_opa = 0.65 * p.gamma_c;
    p.theta = 1.65 * pi;
    p.power = 0.5;
    p.omega_laser = 2.0 * pi * 10.0e9;
    p.omega_c = p.omega_laser + p.delta_c;
    p.temperature = 0.01;
    return p;
}

std::string to_string(ParamId id) {
    switch (id) {
        case ParamId::GMc: return "g_mc";
        case ParamId::GammaC: return "gamma_c";
        case ParamId::GammaM: return "gamma_m";
        case ParamId::DeltaC: return "delta_c";
        case ParamId::DeltaM: return "delta_m";
        case ParamId::Lambda: return "lambda_opa";
        case ParamId::Theta: return "theta";
        case ParamId::Power: return "power";
        case ParamId::Temperature: return "temperature";
        case ParamId::Time: return "time";
    }
    return "?";
}

ParamId param_id_from_string(const std::string& name) {
    static const std::map<std::string, ParamId> table = {
        {"g_mc", ParamId::GMc},         {"gamma_c", ParamId::GammaC},
        {"gamma_m", ParamId::GammaM},   {"delta_c", ParamId::DeltaC},
        {"delta_m", ParamId::DeltaM},   {"lambda_opa", ParamId::Lambda},
        {"lambda", ParamId::Lambda},    {"theta", ParamId::Theta},
        {"power", ParamId::Power},      {"temperature", ParamId::Temperature},
        {"time", ParamId::Time},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown parameter id: " + name);
    return it->second;
}

double get_param(const PhysicalParams& p, ParamId id) {
    switch (id) {
        case ParamId::GMc: return p.g_mc;
        case ParamId::GammaC: return p.gamma_c;
        case ParamId::GammaM: return p.gamma_m;
        case ParamId::DeltaC: return p.delta_c;
        case ParamId::DeltaM: return p.delta_m;
        case ParamId::Lambda: return p.lambda_opa;
        case ParamId::Theta: return p.theta;
        case ParamId::Power: return p.power;
        case ParamId::Temperature: return p.temperature;
        case ParamId::Time: break;
    }
    throw ConfigError("parameter id has no stored value: " + to_string(id));
}

void set_param(PhysicalParams& p, ParamId id, double value) {
    switch (id) {
        case ParamId::GMc: p.g_mc = value; return;
        case ParamId::GammaC: p.gamma_c = value; return;
        case ParamId::GammaM: p.gamma_m = value; return;
        case ParamId::DeltaC: p.delta_c = value; return;
        case ParamId::DeltaM: p.delta_m = value; return;
        case ParamId::Lambda: p.lambda_opa = value; return;
        case ParamId::Theta: p.theta = value; return;
        case ParamId::Power: p.power = value; return;
        case ParamId::Temperature: p.temperature = value; return;
        case ParamId::Time: break;
    }
    throw ConfigError("parameter id not settable: " + to_string(id));
}

namespace {

double unit_factor(const std::string& unit) {
    static const std::map<std::string, double> table = {
        {"", 1.0},          {"rad_s", 1.0},
        {"Hz_2pi", 2.0 * pi},
        {"kHz_2pi", 2.0 * pi * 1e3},
        {"MHz_2pi", 2.0 * pi * 1e6},
        {"GHz_2pi", 2.0 * pi * 1e9},
        {"pi", pi},         {"rad", 1.0},
        {"K", 1.0},         {"mK", 1e-3},
        {"W", 1.0},         {"mW", 1e-3},
        {"us", 1e-6},       {"ns", 1e-9},  {"s", 1.0},
    };
    auto it = table.find(unit);
    if (it == table.end()) {
        if (unit == "Hz" || unit == "kHz" || unit == "MHz" || unit == "GHz")
            throw ConfigError("bare frequency unit '" + unit +
                              "' is ambiguous; use " + unit + "_2pi or rad_s");
        throw ConfigError("unknown unit suffix: " + unit);
    }
    return it->second;
}

}  // namespace

PhysicalParams parse_config(const std::string& text) {
    PhysicalParams p = baseline_params();
    bool omega_c_explicit = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;  // blank line
        std::string eq;
        double value;
        if (!(ls >> eq) || eq != "=" || !(ls >> value))
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value [unit]'");
        std::string unit;
        ls >> unit;  // optional
        double v = value * unit_factor(unit);
        if (key == "omega_laser") {
            p.omega_laser = v;
        } else if (key == "omega_c") {
            p.omega_c = v;
            omega_c_explicit = true;
        } else {
            set_param(p, param_id_from_string(key), v);
        }
    }
    if (!omega_c_explicit) p.omega_c = p.omega_laser + p.delta_c;
    p.validate();
    return p;
}

PhysicalParams load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

}  // namespace magest
