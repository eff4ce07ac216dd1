#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magest/constants.hpp"
#include "magest/errors.hpp"
#include "magest/params.hpp"

using namespace magest;
using magest::constants::pi;

TEST_CASE("baseline matches the quoted operating point") {
    PhysicalParams p = baseline_params();
    CHECK(p.gamma_c == doctest::Approx(2 * pi * 5e6).epsilon(1e-12));
    CHECK(p.gamma_m == doctest::Approx(2 * pi * 40e6).epsilon(1e-12));
    CHECK(p.delta_c == doctest::Approx(2 * pi * 40e6).epsilon(1e-12));
    CHECK(p.delta_m == 0.0);
    CHECK(p.g_mc == doctest::Approx(2 * pi * 41e6).epsilon(1e-12));
    CHECK(p.lambda_opa == doctest::Approx(0.65 * p.gamma_c).epsilon(1e-12));
    CHECK(p.theta == doctest::Approx(1.65 * pi).epsilon(1e-12));
    CHECK(p.power == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.omega_laser == doctest::Approx(2 * pi * 1e10).epsilon(1e-12));
    CHECK(p.temperature == doctest::Approx(0.01).epsilon(1e-12));
    // cavity frequency sits at omega_L + Delta_c
    CHECK(p.omega_c == doctest::Approx(p.omega_laser + p.delta_c).epsilon(1e-12));
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("config parsing with unit suffixes") {
    const std::string text =
        "# comment line\n"
        "gamma_c = 5 MHz_2pi\n"
        "gamma_m = 40 MHz_2pi\n"
        "delta_c = 40 MHz_2pi\n"
        "delta_m = 0 rad_s\n"
        "g_mc = 41 MHz_2pi\n"
        "lambda_opa = 3.25 MHz_2pi  # 0.65 gamma_c\n"
        "theta = 1.65 pi\n"
        "power = 500 mW\n"
        "omega_laser = 10 GHz_2pi\n"
        "temperature = 10 mK\n";
    PhysicalParams p = parse_config(text);
    PhysicalParams b = baseline_params();
    CHECK(p.gamma_c == doctest::Approx(b.gamma_c).epsilon(1e-12));
    CHECK(p.lambda_opa == doctest::Approx(b.lambda_opa).epsilon(1e-9));
    CHECK(p.theta == doctest::Approx(b.theta).epsilon(1e-12));
    CHECK(p.power == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.temperature == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(p.omega_c == doctest::Approx(b.omega_c).epsilon(1e-12));
}

TEST_CASE("bare Hz units are rejected") {
    CHECK_THROWS_AS(parse_config("gamma_c = 5 MHz\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("gamma_c = 5e6 Hz\n"), ConfigError);
}

TEST_CASE("unknown keys and malformed lines are rejected") {
    CHECK_THROWS_AS(parse_config("not_a_param = 1 rad_s\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("gamma_c 5 MHz_2pi\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("gamma_c = fast\n"), ConfigError);
}

TEST_CASE("explicit omega_c overrides the omega_laser + delta_c default") {
    PhysicalParams p = parse_config(
        "omega_laser = 10 GHz_2pi\n"
        "delta_c = 40 MHz_2pi\n"
        "omega_c = 11 GHz_2pi\n");
    CHECK(p.omega_c == doctest::Approx(2 * pi * 11e9).epsilon(1e-12));
}

TEST_CASE("time and temperature unit suffixes") {
    PhysicalParams p = parse_config("temperature = 0.1 K\n");
    CHECK(p.temperature == doctest::Approx(0.1).epsilon(1e-12));
    PhysicalParams q = parse_config("power = 0.5 W\n");
    CHECK(q.power == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("param id round trip") {
    for (ParamId id : {ParamId::GMc, ParamId::GammaC, ParamId::GammaM, ParamId::DeltaC,
                       ParamId::DeltaM, ParamId::Lambda, ParamId::Theta, ParamId::Power,
                       ParamId::Temperature, ParamId::Time}) {
        CHECK(param_id_from_string(to_string(id)) == id);
    }
    CHECK_THROWS_AS(param_id_from_string("bogus"), ConfigError);
}

TEST_CASE("get/set param agree") {
    PhysicalParams p = baseline_params();
    set_param(p, ParamId::GMc, 1.25e8);
    CHECK(get_param(p, ParamId::GMc) == doctest::Approx(1.25e8));
    CHECK(p.g_mc == doctest::Approx(1.25e8));
    set_param(p, ParamId::Temperature, 0.2);
    CHECK(p.temperature == doctest::Approx(0.2));
}

TEST_CASE("validate rejects nonphysical values") {
    PhysicalParams p = baseline_params();
    p.gamma_c = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = baseline_params();
    p.temperature = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = baseline_params();
    p.power = -2.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
