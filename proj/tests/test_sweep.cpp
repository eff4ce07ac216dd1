#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "magest/constants.hpp"
#include "magest/errors.hpp"
#include "magest/sweep.hpp"

using namespace magest;
using namespace magest::sweep;

namespace {

SweepSpec small_steady_spec() {
    SweepSpec s;
    s.name = "unit";
    s.base = baseline_params();
    s.axis = {ParamId::Temperature, 0.05, 0.25, 5, false};
    s.family_id = ParamId::Lambda;
    s.family_values = {0.0, 0.65 * s.base.gamma_c};
    s.quantities = {Quantity::BMI, Quantity::BS, Quantity::BR};
    return s;
}

SweepSpec small_dynamic_spec() {
    SweepSpec s;
    s.name = "unit-dyn";
    s.base = baseline_params();
    s.axis = {ParamId::Time, 0.0, 2e-8, 9, false};
    s.quantities = {Quantity::Hg, Quantity::FHetG};
    return s;
}

}  // namespace

TEST_CASE("axis grids") {
    Axis lin{ParamId::Temperature, 1.0, 3.0, 5, false};
    auto g = lin.grid();
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(2.0));
    CHECK(g.back() == doctest::Approx(3.0));

    Axis lg{ParamId::Temperature, 1.0, 100.0, 3, true};
    auto lgrid = lg.grid();
    CHECK(lgrid[1] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("quantity names round trip") {
    for (Quantity q : {Quantity::BMI, Quantity::BS, Quantity::BR, Quantity::Ratio,
                       Quantity::Hg, Quantity::Hgamma, Quantity::FHetG, Quantity::FHetGamma,
                       Quantity::FHomXG, Quantity::FHomYG, Quantity::FHomXGamma,
                       Quantity::FHomYGamma}) {
        CHECK(quantity_from_string(to_string(q)) == q);
    }
    CHECK_THROWS_AS(quantity_from_string("nope"), ConfigError);
}

TEST_CASE("steady sweep produces one row per grid point in order") {
    SweepSpec spec = small_steady_spec();
    SweepResult res = run_sweep_serial(spec);
    REQUIRE(res.rows.size() == 10);
    // ordered by (family, axis)
    CHECK(res.rows[0].family_value == doctest::Approx(0.0));
    CHECK(res.rows[0].axis_value == doctest::Approx(0.05));
    CHECK(res.rows[4].axis_value == doctest::Approx(0.25));
    CHECK(res.rows[5].family_value == doctest::Approx(0.65 * spec.base.gamma_c));
    for (const SweepRow& row : res.rows) {
        REQUIRE(row.values.size() == 3);
        if (row.status == PointStatus::Ok) {
            CHECK(row.values[0] ==
                  doctest::Approx(std::min(row.values[1], row.values[2])).epsilon(1e-12));
        }
    }
}

TEST_CASE("repeated runs are identical") {
    SweepSpec spec = small_steady_spec();
    CHECK(to_csv(run_sweep_serial(spec)) == to_csv(run_sweep_serial(spec)));
}

TEST_CASE("parallel output is bitwise identical to serial") {
    for (const SweepSpec& spec : {small_steady_spec(), small_dynamic_spec()}) {
        const std::string serial = to_csv(run_sweep_serial(spec));
        for (int workers : {1, 2, 4, 7}) {
            CHECK(to_csv(run_sweep(spec, workers)) == serial);
        }
    }
}

TEST_CASE("unstable grid points are flagged, never interpolated") {
    SweepSpec spec;
    spec.name = "unstable-band";
    spec.base = baseline_params();
    spec.base.theta = 0.0;  // gain aligned for instability at large lambda
    spec.base.delta_c = 0.0;
    spec.base.delta_m = 0.0;
    spec.base.g_mc = 0.0;
    spec.axis = {ParamId::Lambda, 0.0, 4.0 * spec.base.gamma_c, 9, false};
    spec.quantities = {Quantity::BMI};
    SweepResult res = run_sweep_serial(spec);
    int unstable = 0;
    for (const SweepRow& row : res.rows)
        if (row.status == PointStatus::Unstable) {
            ++unstable;
            CHECK(std::isnan(row.values[0]));
        }
    CHECK(unstable > 0);
    // CSV marks them too
    const std::string csv = to_csv(res);
    CHECK(csv.find("unstable") != std::string::npos);
}

TEST_CASE("dynamic BMI sweep flags t=0 singular (vacuum carries no information)") {
    SweepSpec spec = small_dynamic_spec();
    spec.quantities = {Quantity::BMI};
    SweepResult res = run_sweep_serial(spec);
    REQUIRE(!res.rows.empty());
    CHECK(res.rows[0].axis_value == doctest::Approx(0.0));
    CHECK(res.rows[0].status == PointStatus::Singular);
    CHECK(res.rows[1].status == PointStatus::Ok);
}

TEST_CASE("dynamic QFI/CFI sweep reports zeros at t=0") {
    SweepResult res = run_sweep_serial(small_dynamic_spec());
    REQUIRE(!res.rows.empty());
    CHECK(res.rows[0].status == PointStatus::Ok);
    CHECK(res.rows[0].values[0] == doctest::Approx(0.0));
    CHECK(res.rows[0].values[1] == doctest::Approx(0.0));
}

TEST_CASE("CSV header names the axis, family and quantities") {
    SweepResult res = run_sweep_serial(small_steady_spec());
    const std::string csv = to_csv(res);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header.find("temperature") != std::string::npos);
    CHECK(header.find("lambda_opa") != std::string::npos);
    CHECK(header.find("BMI") != std::string::npos);
    CHECK(header.find("B_S") != std::string::npos);
    CHECK(header.find("status") != std::string::npos);
}

TEST_CASE("JSON output carries metadata") {
    SweepResult res = run_sweep_serial(small_steady_spec());
    const std::string js = to_json(res);
    CHECK(js.find("\"axis\"") != std::string::npos);
    CHECK(js.find("\"base_params\"") != std::string::npos);
    CHECK(js.find("\"rows\"") != std::string::npos);
}

TEST_CASE("every preset builds and validates") {
    for (const std::string& name : preset_names()) {
        SweepSpec spec = figure_preset(name);
        CHECK_NOTHROW(spec.validate());
        CHECK(!spec.quantities.empty());
        CHECK(spec.axis.count >= 2);
    }
    CHECK_THROWS_AS(figure_preset("fig99"), ConfigError);
}

TEST_CASE("spec file loader round trip") {
    const char* path = "sweep_spec_unit.json";
    {
        std::ofstream f(path);
        f << R"({
  "name": "from-file",
  "base": {"temperature": 0.02},
  "axis": {"param": "temperature", "min": 0.05, "max": 0.1, "count": 3},
  "family": {"param": "lambda_opa", "values": [0.0]},
  "quantities": ["BMI", "ratio"],
  "het_noise": 1.0
})";
    }
    SweepSpec spec = load_spec_file(path);
    std::remove(path);
    CHECK(spec.name == "from-file");
    CHECK(spec.axis.id == ParamId::Temperature);
    CHECK(spec.axis.count == 3);
    REQUIRE(spec.family_values.size() == 1);
    CHECK(spec.het_noise == doctest::Approx(1.0));
    REQUIRE(spec.quantities.size() == 2);
    CHECK(spec.quantities[1] == Quantity::Ratio);
    SweepResult res = run_sweep_serial(spec);
    CHECK(res.rows.size() == 3);
}

TEST_CASE("invalid specs are rejected") {
    SweepSpec spec = small_steady_spec();
    spec.axis.count = 1;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_steady_spec();
    spec.quantities.clear();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_steady_spec();
    spec.axis.min = 2.0;
    spec.axis.max = 1.0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
