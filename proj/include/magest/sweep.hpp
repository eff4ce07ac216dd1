// sweep.hpp — parameter sweeps reproducing the reported figure scans

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magest/metrology.hpp"
#include "magest/params.hpp"

namespace magest::sweep {

enum class Quantity {
    BMI,
    BS,
    BR,
    Ratio,
    Hg,       // single-parameter SLD QFI, g_mc
    Hgamma,   // single-parameter SLD QFI, gamma_c
    FHetG,
    FHetGamma,
    FHomXG,
    FHomYG,
    FHomXGamma,
    FHomYGamma,
};

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

struct Axis {
    ParamId id = ParamId::Temperature;
    double min = 0.0;
    double max = 0.0;
    int count = 2;
    bool log = false;

    std::vector<double> grid() const;
};

struct SweepSpec {
    std::string name;
    PhysicalParams base;
    Axis axis;                              // ParamId::Time selects the dynamics regime
    std::optional<ParamId> family_id;       // one curve per family value
    std::vector<double> family_values;
    std::vector<Quantity> quantities;
    double het_noise = 0.5;
    ModelOptions model_opts;
    std::map<std::string, std::string> metadata;  // e.g. inferred-range notes

    bool dynamic() const { return axis.id == ParamId::Time; }
    void validate() const;  // throws ConfigError
};

enum class PointStatus { Ok, Unstable, Singular };

struct SweepRow {
    double axis_value = 0.0;
    double family_value = 0.0;  // NaN when no family
    std::vector<double> values; // one per spec quantity; NaN unless status Ok
    std::string chosen;         // chosen-bound tag ("" when not applicable)
    PointStatus status = PointStatus::Ok;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // ordered by (family index, axis index)
};

// Evaluates every grid point; unstable points are flagged, never interpolated.
// workers > 1 runs the OpenMP kernel; the output is identical (and in the
// same deterministic order) for any worker count.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

// Serial reference path (used by tests and the benchmark).
SweepResult run_sweep_serial(const SweepSpec& spec);

std::string to_csv(const SweepResult& result);   // 12 significant digits
std::string to_json(const SweepResult& result);  // table + metadata
void emit_file(const SweepResult& result, const std::string& format,
               const std::string& path);

// One preset per reported figure panel; exact baselines, inferred ranges
// are tagged in metadata.
std::vector<std::string> preset_names();
SweepSpec figure_preset(const std::string& name);  // throws ConfigError

// JSON sweep-spec file loader (CLI `sweep --spec file`).
SweepSpec load_spec_file(const std::string& path);

}  // namespace magest::sweep
