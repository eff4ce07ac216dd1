// sweep.cpp — grid evaluation (serial + OpenMP), emission, figure presets

#include "magest/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "magest/constants.hpp"
#include "magest/errors.hpp"
#include "magest/measurements.hpp"
#include "magest/stability.hpp"

namespace magest::sweep {

using constants::pi;
using nlohmann::json;

static constexpr const char* kVersion = "magest 0.1.0";
static const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::BMI: return "BMI";
        case Quantity::BS: return "B_S";
        case Quantity::BR: return "B_R";
        case Quantity::Ratio: return "ratio";
        case Quantity::Hg: return "H_g";
        case Quantity::Hgamma: return "H_gamma";
        case Quantity::FHetG: return "F_het_g";
        case Quantity::FHetGamma: return "F_het_gamma";
        case Quantity::FHomXG: return "F_homX_g";
        case Quantity::FHomYG: return "F_homY_g";
        case Quantity::FHomXGamma: return "F_homX_gamma";
        case Quantity::FHomYGamma: return "F_homY_gamma";
    }
    return "?";
}

Quantity quantity_from_string(const std::string& s) {
    for (int q = 0; q <= static_cast<int>(Quantity::FHomYGamma); ++q)
        if (to_string(static_cast<Quantity>(q)) == s) return static_cast<Quantity>(q);
    throw ConfigError("unknown quantity: " + s);
}

std::vector<double> Axis::grid() const {
    std::vector<double> g(count);
    if (log) {
        const double lmin = std::log(min), lmax = std::log(max);
        for (int i = 0; i < count; ++i)
            g[i] = std::exp(lmin + (lmax - lmin) * i / (count - 1));
    } else {
        for (int i = 0; i < count; ++i) g[i] = min + (max - min) * i / (count - 1);
    }
    return g;
}

void SweepSpec::validate() const {
    if (axis.count < 2) throw ConfigError("axis grid count must be >= 2");
    if (!(axis.max > axis.min)) throw ConfigError("axis max must exceed min");
    if (axis.log && axis.min <= 0.0) throw ConfigError("log axis requires min > 0");
    if (quantities.empty()) throw ConfigError("sweep needs at least one quantity");
    if (family_id && family_values.empty())
        throw ConfigError("family parameter given without values");
    if (axis.id == ParamId::Time && axis.min != 0.0)
        throw ConfigError("time axis must start at 0");
    base.validate();
}

namespace {

bool needs_bounds(const std::vector<Quantity>& qs) {
    for (Quantity q : qs)
        if (q == Quantity::BMI || q == Quantity::BS || q == Quantity::BR ||
            q == Quantity::Ratio)
            return true;
    return false;
}

// quantities computed from one (state, sensitivity) pair
void fill_row(SweepRow& row, const SweepSpec& spec, const GaussianState& state,
              const SensitivityBundle& sens) {
    row.values.assign(spec.quantities.size(), kNaN);

    BoundsReport rep;
    bool have_bounds = false;
    if (needs_bounds(spec.quantities)) {
        Eigen::MatrixXd H = sld_qfim(state, sens);
        try {
            Eigen::MatrixXcd J = rld_qfim(state, sens);
            rep = bounds(H, J, true);
        } catch (const SingularGamma&) {
            rep = bounds(H, Eigen::MatrixXcd(), false);
        }
        have_bounds = true;
        row.chosen = to_string(rep.chosen);
    }

    for (std::size_t i = 0; i < spec.quantities.size(); ++i) {
        switch (spec.quantities[i]) {
            case Quantity::BMI: row.values[i] = rep.bmi; break;
            case Quantity::BS: row.values[i] = rep.b_s; break;
            case Quantity::BR: row.values[i] = rep.b_r; break;
            case Quantity::Ratio: row.values[i] = rep.ratio; break;
            case Quantity::Hg:
                row.values[i] = sld_qfim(state.C, state.d, {sens.dC[0]}, {sens.dd[0]})(0, 0);
                break;
            case Quantity::Hgamma:
                row.values[i] = sld_qfim(state.C, state.d, {sens.dC[1]}, {sens.dd[1]})(0, 0);
                break;
            case Quantity::FHetG:
                row.values[i] = heterodyne_cfi(state, sens, 0, spec.het_noise);
                break;
            case Quantity::FHetGamma:
                row.values[i] = heterodyne_cfi(state, sens, 1, spec.het_noise);
                break;
            case Quantity::FHomXG: row.values[i] = homodyne_cfi(state, sens, 0, 0); break;
            case Quantity::FHomYG: row.values[i] = homodyne_cfi(state, sens, 0, 1); break;
            case Quantity::FHomXGamma:
                row.values[i] = homodyne_cfi(state, sens, 1, 0);
                break;
            case Quantity::FHomYGamma:
                row.values[i] = homodyne_cfi(state, sens, 1, 1);
                break;
        }
    }
    (void)have_bounds;
}

PhysicalParams apply_family(const SweepSpec& spec, double family_value) {
    PhysicalParams p = spec.base;
    if (spec.family_id) {
        set_param(p, *spec.family_id, family_value);
        if (*spec.family_id != ParamId::Temperature)
            p.omega_c = p.omega_laser + p.delta_c;  // keep occupancy frequency consistent
    }
    return p;
}

SweepRow eval_steady_point(const SweepSpec& spec, double family_value, double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    row.family_value = family_value;
    PhysicalParams p = apply_family(spec, family_value);
    set_param(p, spec.axis.id, axis_value);
    if (spec.axis.id == ParamId::DeltaC) p.omega_c = p.omega_laser + p.delta_c;

    LinearModel m = build_model(p, spec.model_opts);
    if (!routh_hurwitz(m.drift).stable) {
        row.status = PointStatus::Unstable;
        row.values.assign(spec.quantities.size(), kNaN);
        return row;
    }
    try {
        GaussianState state = steady_state(p, spec.model_opts);
        SensitivityBundle sens =
            steady_sensitivities(p, {ParamId::GMc, ParamId::GammaC}, spec.model_opts);
        fill_row(row, spec, state, sens);
    } catch (const Error&) {
        // singular QFIM / ill-conditioned solve: flagged, never interpolated
        row.status = PointStatus::Singular;
        row.values.assign(spec.quantities.size(), kNaN);
    }
    return row;
}

// one trajectory per family value; rows for every grid time
std::vector<SweepRow> eval_dynamic_curve(const SweepSpec& spec, double family_value,
                                         const std::vector<double>& t_grid) {
    PhysicalParams p = apply_family(spec, family_value);

    IntegrateOptions io;
    io.with_sensitivities = true;
    io.sens_params = {ParamId::GMc, ParamId::GammaC};
    io.model_opts = spec.model_opts;
    Trajectory traj;
    try {
        traj = integrate(p, t_grid, io);
    } catch (const Error&) {
        std::vector<SweepRow> rows;
        for (double t : t_grid) {
            SweepRow row;
            row.axis_value = t;
            row.family_value = family_value;
            row.status = PointStatus::Unstable;
            row.values.assign(spec.quantities.size(), kNaN);
            rows.push_back(std::move(row));
        }
        return rows;
    }

    std::vector<SweepRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        SweepRow row;
        row.axis_value = t_grid[i];
        row.family_value = family_value;
        try {
            fill_row(row, spec, traj.states[i], traj.sensitivities[i]);
        } catch (const Error&) {
            row.status = PointStatus::Singular;
            row.values.assign(spec.quantities.size(), kNaN);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    spec.validate();
    SweepResult result;
    result.spec = spec;

    const std::vector<double> axis_grid = spec.axis.grid();
    std::vector<double> family_values =
        spec.family_id ? spec.family_values : std::vector<double>{kNaN};
    const int n_fam = static_cast<int>(family_values.size());
    const int n_axis = static_cast<int>(axis_grid.size());

    if (spec.dynamic()) {
        std::vector<std::vector<SweepRow>> curves(n_fam);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(workers, 1))
#endif
        for (int f = 0; f < n_fam; ++f)
            curves[f] = eval_dynamic_curve(spec, family_values[f], axis_grid);
        for (auto& c : curves)
            for (auto& row : c) result.rows.push_back(std::move(row));
    } else {
        result.rows.resize(static_cast<std::size_t>(n_fam) * n_axis);
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(std::max(workers, 1))
#endif
        for (int f = 0; f < n_fam; ++f)
            for (int i = 0; i < n_axis; ++i)
                result.rows[static_cast<std::size_t>(f) * n_axis + i] =
                    eval_steady_point(spec, family_values[f], axis_grid[i]);
    }
    return result;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    const std::vector<double> axis_grid = spec.axis.grid();
    std::vector<double> family_values =
        spec.family_id ? spec.family_values : std::vector<double>{kNaN};

    for (double f : family_values) {
        if (spec.dynamic()) {
            for (auto& row : eval_dynamic_curve(spec, f, axis_grid))
                result.rows.push_back(std::move(row));
        } else {
            for (double x : axis_grid) result.rows.push_back(eval_steady_point(spec, f, x));
        }
    }
    return result;
}

namespace {

std::string fmt12(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* status_name(PointStatus s) {
    switch (s) {
        case PointStatus::Ok: return "ok";
        case PointStatus::Unstable: return "unstable";
        case PointStatus::Singular: return "singular";
    }
    return "?";
}

std::string axis_column(const SweepSpec& spec) {
    return spec.dynamic() ? "t_us" : to_string(spec.axis.id);
}

double axis_display(const SweepSpec& spec, double v) {
    return spec.dynamic() ? v * 1e6 : v;  // time reported in microseconds
}

}  // namespace

std::string to_csv(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    std::ostringstream out;
    out << axis_column(spec);
    out << "," << (spec.family_id ? to_string(*spec.family_id) : std::string("family"));
    for (Quantity q : spec.quantities) out << "," << to_string(q);
    out << ",chosen,status\n";
    for (const SweepRow& row : result.rows) {
        out << fmt12(axis_display(spec, row.axis_value));
        out << "," << fmt12(row.family_value);
        for (double v : row.values) out << "," << fmt12(v);
        out << "," << row.chosen << "," << status_name(row.status) << "\n";
    }
    return out.str();
}

std::string to_json(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    json meta;
    meta["version"] = kVersion;
    meta["name"] = spec.name;
    meta["axis"] = {{"param", to_string(spec.axis.id)}, {"min", spec.axis.min},
                    {"max", spec.axis.max},           {"count", spec.axis.count},
                    {"log", spec.axis.log}};
    if (spec.family_id) {
        meta["family"] = {{"param", to_string(*spec.family_id)},
                          {"values", spec.family_values}};
    }
    json qs = json::array();
    for (Quantity q : spec.quantities) qs.push_back(to_string(q));
    meta["quantities"] = qs;
    meta["het_noise"] = spec.het_noise;
    meta["drive_couples_gamma"] = spec.model_opts.drive_couples_gamma;
    meta["base_params"] = {
        {"delta_c", spec.base.delta_c},       {"delta_m", spec.base.delta_m},
        {"gamma_c", spec.base.gamma_c},       {"gamma_m", spec.base.gamma_m},
        {"g_mc", spec.base.g_mc},             {"lambda_opa", spec.base.lambda_opa},
        {"theta", spec.base.theta},           {"power", spec.base.power},
        {"omega_laser", spec.base.omega_laser},
        {"omega_c", spec.base.omega_c},       {"temperature", spec.base.temperature}};
    for (const auto& [k, v] : spec.metadata) meta["notes"][k] = v;

    json rows = json::array();
    for (const SweepRow& row : result.rows) {
        json r;
        r["axis"] = axis_display(spec, row.axis_value);
        if (spec.family_id) r["family"] = row.family_value;
        json vals = json::array();
        for (double v : row.values) {
            if (std::isnan(v))
                vals.push_back(nullptr);
            else
                vals.push_back(v);
        }
        r["values"] = vals;
        if (!row.chosen.empty()) r["chosen"] = row.chosen;
        r["status"] = status_name(row.status);
        rows.push_back(r);
    }
    json doc;
    doc["metadata"] = meta;
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

void emit_file(const SweepResult& result, const std::string& format,
               const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file: " + path);
    if (format == "csv")
        f << to_csv(result);
    else if (format == "json")
        f << to_json(result);
    else
        throw ConfigError("unknown format: " + format);
    if (!f) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// figure presets
// ---------------------------------------------------------------------------

namespace {

SweepSpec preset_base(const std::string& name) {
    SweepSpec s;
    s.name = name;
    s.base = baseline_params();
    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2",  "fig3a", "fig3b", "fig4a", "fig4b",
            "fig5a", "fig5b", "fig6a", "fig6b", "fig7",  "fig8"};
}

SweepSpec figure_preset(const std::string& name) {
    const double gc = 2.0 * pi * 5.0e6;   // baseline gamma_c
    const double gm = 2.0 * pi * 40.0e6;  // baseline gamma_m

    if (name == "fig2") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Temperature, 0.01, 0.4, 40, false};
        s.family_id = ParamId::Lambda;
        s.family_values = {0.0, 0.3 * gc, 0.5 * gc, 0.65 * gc};
        s.quantities = {Quantity::BMI};
        return s;
    }
    if (name == "fig3a") {
        SweepSpec s = preset_base(name);
        s.base.lambda_opa = 0.0;  // overridden by the axis
        s.axis = {ParamId::Lambda, 0.0, 0.9 * gc, 46, false};
        s.family_id = ParamId::GMc;
        s.family_values = {2 * pi * 35e6, 2 * pi * 41e6, 2 * pi * 47e6};
        s.quantities = {Quantity::BMI};
        s.metadata["axis_range"] = "inferred (lambda up to 0.9 gamma_c)";
        s.metadata["family_values"] = "g_mc legend values not printed; inferred defaults";
        return s;
    }
    if (name == "fig3b") {
        SweepSpec s = preset_base(name);
        s.base.lambda_opa = 0.75 * gc;
        s.axis = {ParamId::Theta, 0.0, 4.0 * pi, 81, false};
        s.family_id = ParamId::GMc;
        s.family_values = {2 * pi * 35e6, 2 * pi * 41e6, 2 * pi * 47e6};
        s.quantities = {Quantity::BMI};
        s.metadata["family_values"] = "g_mc legend values not printed; inferred defaults";
        return s;
    }
    if (name == "fig4a") {
        SweepSpec s = preset_base(name);
        s.base.lambda_opa = 0.67 * gc;
        s.axis = {ParamId::DeltaC, 0.0, 1.5 * gm, 40, false};
        s.family_id = ParamId::GMc;
        s.family_values = {2 * pi * 35e6, 2 * pi * 41e6, 2 * pi * 47e6};
        s.quantities = {Quantity::BMI};
        s.metadata["axis_range"] = "inferred (Delta_c up to 1.5 gamma_m)";
        return s;
    }
    if (name == "fig4b") {
        SweepSpec s = preset_base(name);
        s.base.lambda_opa = 0.67 * gc;
        s.axis = {ParamId::DeltaM, 0.0, 0.5 * gm, 40, false};
        s.family_id = ParamId::Power;
        s.family_values = {0.25, 0.5, 0.75};
        s.quantities = {Quantity::BMI};
        s.metadata["axis_range"] = "inferred (Delta_m up to 0.5 gamma_m)";
        return s;
    }
    if (name == "fig5a") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.05e-6, 101, false};
        s.family_id = ParamId::GammaC;
        s.family_values = {2 * pi * 5e6, 2 * pi * 15e6, 2 * pi * 25e6};
        s.quantities = {Quantity::BMI};
        s.metadata["lambda"] = "0.65 * baseline gamma_c for every curve";
        return s;
    }
    if (name == "fig5b") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.05e-6, 101, false};
        s.family_id = ParamId::GammaM;
        s.family_values = {2 * pi * 20e6, 2 * pi * 40e6, 2 * pi * 60e6};
        s.quantities = {Quantity::BMI};
        s.metadata["family_values"] = "gamma_m legend values not printed; inferred defaults";
        return s;
    }
    if (name == "fig6a") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.05e-6, 121, false};
        s.quantities = {Quantity::Hg, Quantity::FHetG};
        return s;
    }
    if (name == "fig6b") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.05e-6, 121, false};
        s.quantities = {Quantity::Hgamma, Quantity::FHetGamma};
        return s;
    }
    if (name == "fig7") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.03e-6, 121, false};
        s.quantities = {Quantity::Hg, Quantity::FHomXG, Quantity::FHomYG, Quantity::FHetG};
        return s;
    }
    if (name == "fig8") {
        SweepSpec s = preset_base(name);
        s.axis = {ParamId::Time, 0.0, 0.03e-6, 121, false};
        s.quantities = {Quantity::Hgamma, Quantity::FHomXGamma, Quantity::FHomYGamma,
                        Quantity::FHetGamma};
        return s;
    }
    throw ConfigError("unknown preset: " + name);
}

SweepSpec load_spec_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open spec file: " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("spec file parse error: ") + e.what());
    }

    SweepSpec s;
    s.name = doc.value("name", "custom");
    s.base = baseline_params();
    if (doc.contains("base"))
        for (const auto& [k, v] : doc["base"].items())
            set_param(s.base, param_id_from_string(k), v.get<double>());
    s.base.omega_c = s.base.omega_laser + s.base.delta_c;

    const json& ax = doc.at("axis");
    s.axis.id = param_id_from_string(ax.at("param").get<std::string>());
    s.axis.min = ax.at("min").get<double>();
    s.axis.max = ax.at("max").get<double>();
    s.axis.count = ax.at("count").get<int>();
    s.axis.log = ax.value("log", false);

    if (doc.contains("family")) {
        s.family_id = param_id_from_string(doc["family"].at("param").get<std::string>());
        s.family_values = doc["family"].at("values").get<std::vector<double>>();
    }
    for (const auto& q : doc.at("quantities"))
        s.quantities.push_back(quantity_from_string(q.get<std::string>()));
    s.het_noise = doc.value("het_noise", 0.5);
    s.model_opts.drive_couples_gamma = doc.value("drive_couples_gamma", true);
    s.validate();
    return s;
}

}  // namespace magest::sweep
