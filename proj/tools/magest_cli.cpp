// magest_cli.cpp — command-line front end
//
// Subcommands: steady, dynamics, stability, sweep, validate.
// Exit codes: 0 success, 1 validation failure, 2 unstable operating point,
// 3 config error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magest/dynamics.hpp"
#include "magest/errors.hpp"
#include "magest/fock.hpp"
#include "magest/measurements.hpp"
#include "magest/metrology.hpp"
#include "magest/model.hpp"
#include "magest/stability.hpp"
#include "magest/sweep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUnstable = 2;
constexpr int kExitConfigError = 3;

magest::PhysicalParams load_params(const std::string& config_path) {
    if (config_path.empty()) return magest::baseline_params();
    return magest::load_config_file(config_path);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw magest::ConfigError("cannot open output file: " + path);
    return file;
}

int cmd_stability(const std::string& config, const std::string& format) {
    magest::PhysicalParams p = load_params(config);
    magest::LinearModel m = magest::build_model(p);
    magest::StabilityVerdict v = magest::routh_hurwitz(m.drift);
    Eigen::EigenSolver<Eigen::Matrix4d> es(m.drift);

    if (format == "json") {
        json doc;
        doc["stable"] = v.stable;
        doc["marginal"] = v.marginal;
        doc["hurwitz_values"] = v.hurwitz_values;
        doc["max_real_eig"] = v.max_real_eig;
        json eigs = json::array();
        for (int i = 0; i < 4; ++i)
            eigs.push_back({{"re", es.eigenvalues()(i).real()},
                            {"im", es.eigenvalues()(i).imag()}});
        doc["eigenvalues"] = eigs;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("stable: %s%s\n", v.stable ? "yes" : "no",
                    v.marginal ? " (marginal)" : "");
        for (int i = 0; i < 4; ++i)
            std::printf("hurwitz[%d] = %.12g\n", i + 1, v.hurwitz_values[i]);
        for (int i = 0; i < 4; ++i)
            std::printf("eig[%d] = %.12g %+.12gi\n", i + 1, es.eigenvalues()(i).real(),
                        es.eigenvalues()(i).imag());
        std::printf("max Re(eig) = %.12g\n", v.max_real_eig);
    }
    return v.stable ? kExitOk : kExitUnstable;
}

int cmd_steady(const std::string& config, const std::string& format, bool paper_het,
               bool drive_couples) {
    magest::PhysicalParams p = load_params(config);
    magest::ModelOptions mo;
    mo.drive_couples_gamma = drive_couples;
    magest::LinearModel m = magest::build_model(p, mo);
    if (!magest::routh_hurwitz(m.drift).stable) {
        std::cerr << "error: operating point is not stable; no steady state\n";
        return kExitUnstable;
    }
    magest::GaussianState s = magest::steady_state(p, mo);
    magest::SensitivityBundle sens = magest::steady_sensitivities(
        p, {magest::ParamId::GMc, magest::ParamId::GammaC}, mo);
    magest::BoundsReport rep = magest::bmi_at(p, {}, mo);
    const double het_s = paper_het ? magest::kHeterodyneNoiseLiteral
                                   : magest::kHeterodyneNoisePhysical;

    if (format == "json") {
        json doc;
        doc["d"] = {s.d(0), s.d(1), s.d(2), s.d(3)};
        json C = json::array();
        for (int i = 0; i < 4; ++i) {
            json rowj = json::array();
            for (int j = 0; j < 4; ++j) rowj.push_back(s.C(i, j));
            C.push_back(rowj);
        }
        doc["C"] = C;
        doc["bounds"] = {{"B_S", rep.b_s},   {"B_R", rep.b_r},
                         {"BMI", rep.bmi},   {"ratio", rep.ratio},
                         {"chosen", magest::to_string(rep.chosen)}};
        doc["cfi"] = {
            {"F_het_g", magest::heterodyne_cfi(s, sens, 0, het_s)},
            {"F_het_gamma", magest::heterodyne_cfi(s, sens, 1, het_s)},
            {"F_homX_g", magest::homodyne_cfi(s, sens, 0, 0)},
            {"F_homY_g", magest::homodyne_cfi(s, sens, 0, 1)},
            {"F_homX_gamma", magest::homodyne_cfi(s, sens, 1, 0)},
            {"F_homY_gamma", magest::homodyne_cfi(s, sens, 1, 1)},
        };
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("d = [%.12g, %.12g, %.12g, %.12g]\n", s.d(0), s.d(1), s.d(2), s.d(3));
        std::printf("C =\n");
        for (int i = 0; i < 4; ++i)
            std::printf("  %+.12e %+.12e %+.12e %+.12e\n", s.C(i, 0), s.C(i, 1), s.C(i, 2),
                        s.C(i, 3));
        std::printf("B_S = %.12g\nB_R = %.12g\nBMI = %.12g\nratio = %.12g\nchosen = %s\n",
                    rep.b_s, rep.b_r, rep.bmi, rep.ratio,
                    magest::to_string(rep.chosen).c_str());
    }
    return kExitOk;
}

int cmd_dynamics(const std::string& config, double tmax_us, int steps, bool with_sens,
                 bool drive_couples, const std::string& out_path) {
    magest::PhysicalParams p = load_params(config);
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = tmax_us * 1e-6 * i / steps;

    magest::IntegrateOptions io;
    io.with_sensitivities = with_sens;
    io.model_opts.drive_couples_gamma = drive_couples;
    magest::Trajectory traj = magest::integrate(p, grid, io);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "t_us,d1,d2,d3,d4";
    const char* cc[] = {"C11", "C12", "C13", "C14", "C22", "C23", "C24", "C33", "C34", "C44"};
    for (const char* name : cc) out << "," << name;
    if (with_sens)
        for (const char* par : {"g", "gamma"}) {
            out << ",dd1_" << par << ",dd2_" << par << ",dd3_" << par << ",dd4_" << par;
            for (const char* name : cc) out << ",d" << name << "_" << par;
        }
    out << "\n";

    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, ",%.12g", v);
        out << buf;
    };
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g", traj.times[k] * 1e6);
        out << buf;
        for (int i = 0; i < 4; ++i) put(traj.states[k].d(i));
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) put(traj.states[k].C(i, j));
        if (with_sens)
            for (int a = 0; a < 2; ++a) {
                for (int i = 0; i < 4; ++i) put(traj.sensitivities[k].dd[a](i));
                for (int i = 0; i < 4; ++i)
                    for (int j = i; j < 4; ++j) put(traj.sensitivities[k].dC[a](i, j));
            }
        out << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const std::string& preset, const std::string& spec_path, int workers,
              const std::string& format, const std::string& out_path, bool paper_het,
              bool drive_couples) {
    magest::sweep::SweepSpec spec;
    if (!preset.empty())
        spec = magest::sweep::figure_preset(preset);
    else if (!spec_path.empty())
        spec = magest::sweep::load_spec_file(spec_path);
    else
        throw magest::ConfigError("sweep needs --preset or --spec");
    if (paper_het) spec.het_noise = magest::kHeterodyneNoiseLiteral;
    spec.model_opts.drive_couples_gamma = drive_couples;

    magest::sweep::SweepResult result = magest::sweep::run_sweep(spec, workers);
    if (out_path.empty() || out_path == "-") {
        std::cout << (format == "json" ? magest::sweep::to_json(result)
                                       : magest::sweep::to_csv(result));
    } else {
        magest::sweep::emit_file(result, format, out_path);
    }
    return kExitOk;
}

int cmd_validate(int dim) {
    auto cases = magest::fock::run_validation_suite(dim);
    int failures = 0;
    for (const auto& c : cases) {
        std::printf("%-44s expected %.8e  got %.8e  rel %.2e  %s\n", c.name.c_str(),
                    c.expected, c.actual, c.rel_error, c.pass ? "PASS" : "FAIL");
        if (!c.pass) ++failures;
    }
    std::printf("%zu cases, %d failures\n", cases.size(), failures);
    return failures == 0 ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian multiparameter estimation for the driven cavity-magnon system"};
    app.require_subcommand(1);

    std::string config, format = "table", out_path, preset, spec_path;
    bool paper_het = false;
    bool drive_couples = true;
    int workers = 1;

    app.add_option("--config", config, "parameter file (key = value unit)");
    app.add_flag("--paper-literal-het", paper_het,
                 "heterodyne added noise s = 1 instead of the physical 1/2");
    std::string drive_couples_str = "on";
    app.add_option("--drive-couples-gamma", drive_couples_str,
                   "on|off: let the drive rate co-vary with gamma_c (default on)")
        ->check(CLI::IsMember({"on", "off"}));

    auto* stab = app.add_subcommand("stability", "Routh-Hurwitz verdict");
    stab->add_option("--format", format, "table|json");

    auto* steady = app.add_subcommand("steady", "steady state, bounds, CFIs");
    steady->add_option("--format", format, "table|json");

    auto* dyn = app.add_subcommand("dynamics", "moment trajectory CSV");
    double tmax_us = 0.05;
    int steps = 100;
    bool with_sens = false;
    dyn->add_option("--tmax", tmax_us, "end time [us]");
    dyn->add_option("--steps", steps, "grid intervals");
    dyn->add_flag("--sens", with_sens, "include dC/deps and dd/deps columns");
    dyn->add_option("--out", out_path, "output path (default stdout)");

    auto* sw = app.add_subcommand("sweep", "figure preset or custom sweep");
    sw->add_option("--preset", preset, "fig2|fig3a|fig3b|fig4a|fig4b|fig5a|fig5b|fig6a|fig6b|fig7|fig8");
    sw->add_option("--spec", spec_path, "JSON sweep spec file");
    sw->add_option("--workers", workers, "parallel workers");
    std::string sweep_format = "csv";
    sw->add_option("--format", sweep_format, "csv|json");
    sw->add_option("--out", out_path, "output path (default stdout)");

    auto* val = app.add_subcommand("validate", "run the Fock-basis oracle suite");
    int dim = 60;
    val->add_option("--dim", dim, "truncation dimension");

    CLI11_PARSE(app, argc, argv);
    drive_couples = (drive_couples_str == "on");

    try {
        if (stab->parsed()) return cmd_stability(config, format);
        if (steady->parsed()) return cmd_steady(config, format, paper_het, drive_couples);
        if (dyn->parsed())
            return cmd_dynamics(config, tmax_us, steps, with_sens, drive_couples, out_path);
        if (sw->parsed())
            return cmd_sweep(preset, spec_path, workers, sweep_format, out_path, paper_het,
                             drive_couples);
        if (val->parsed()) return cmd_validate(dim);
    } catch (const magest::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const magest::NotHurwitz& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const magest::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return kExitOk;
}
