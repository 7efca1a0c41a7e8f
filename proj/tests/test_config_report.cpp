#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "composter/config.hpp"
#include "composter/errors.hpp"
#include "composter/report.hpp"

using namespace composter;

TEST_CASE("empty object parses to the bundled defaults") {
    const auto c = cfg::parse_config_text("{}");
    CHECK(c.drum.diameter_m == doctest::Approx(0.6));
    CHECK(c.motor.rated_torque_nm == doctest::Approx(2.74));
    CHECK(c.gear.reduction_factor == doctest::Approx(39.27));
    CHECK(c.pv_datasheet.open_circuit_voltage_v == doctest::Approx(21.3));
    CHECK(c.battery_unit_capacity_ah == doctest::Approx(40.0));
    CHECK(c.system_factor_k == doctest::Approx(0.65));
    CHECK(c.power_mode == energy::PowerMode::rated);
}

TEST_CASE("invariant violations carry the field path") {
    CHECK_THROWS_WITH_AS(cfg::parse_config_text(R"({"drum": {"diameter_m": -1}})"),
                         doctest::Contains("drum.diameter"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(cfg::parse_config_text(R"({"drum": {"radius_m": 0.3}})"),
                         doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_AS(cfg::parse_config_text(R"({"drums": {}})"), ConfigError);
}

TEST_CASE("syntax errors and non-objects are config errors") {
    CHECK_THROWS_AS(cfg::parse_config_text(""), ConfigError);
    CHECK_THROWS_AS(cfg::parse_config_text("[1,2]"), ConfigError);
    CHECK_THROWS_AS(cfg::parse_config_text(R"({"power_mode": "turbo"})"), ConfigError);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(cfg::parse_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("sim presets") {
    const auto p = cfg::parse_config_text(R"({"sim": {"preset": "paper-sim"}})");
    CHECK(p.sim.motor_gain_rpm_per_v == doctest::Approx(12.5));
    CHECK(p.sim.total_reduction == doctest::Approx(37.5));

    const auto d = cfg::parse_config_text(R"({"sim": {"preset": "design"}})");
    CHECK(d.sim.motor_gain_rpm_per_v == doctest::Approx(125.0));
    CHECK(d.sim.total_reduction == doctest::Approx(375.0));

    CHECK_THROWS_AS(cfg::parse_config_text(R"({"sim": {"preset": "warp"}})"),
                    ConfigError);
}

TEST_CASE("default report carries the paper discrepancy flags") {
    const auto rep = report::build_report(cfg::parse_config_text("{}"));
    CHECK(rep.design.required_motor_torque_nm == doctest::Approx(2.742).epsilon(1e-3));
    CHECK(rep.rated.battery.unit_capacity_ah == doctest::Approx(40.0));
    CHECK(rep.has_flag("EQ10_VIOLATION"));
    CHECK(rep.has_flag("PANEL_COUNT_MISMATCH"));
    CHECK_FALSE(rep.has_flag("EQ9_NONPHYSICAL"));
    CHECK(rep.chain_output_power_w < rep.rated.budget.motor_power_w);
}

TEST_CASE("paper-faithful output power is flagged as nonphysical") {
    auto c = cfg::parse_config_text("{}");
    c.paper_faithful = true;
    const auto rep = report::build_report(c);
    CHECK(rep.has_flag("EQ9_NONPHYSICAL"));
    CHECK(rep.chain_output_power_w > rep.rated.budget.motor_power_w);
}

TEST_CASE("zero-waste drum reports a zero torque chain without a margin flag") {
    auto c = cfg::parse_config_text(
        R"({"drum": {"empty_mass_kg": 0.0, "waste_mass_kg": 0.0}})");
    const auto rep = report::build_report(c);
    CHECK(rep.design.load_torque_nm == 0.0);
    CHECK(rep.design.required_motor_torque_nm == 0.0);
    CHECK_FALSE(rep.has_flag("TORQUE_MARGIN"));
}

TEST_CASE("report JSON round-trips through the serializer") {
    const auto rep = report::build_report(cfg::parse_config_text("{}"));
    const std::string a = report::to_json(rep);
    const std::string b = report::to_json(rep);
    CHECK(a == b);
    CHECK(a.find("EQ10_VIOLATION") != std::string::npos);
    CHECK(a.find("required_motor_torque_nm") != std::string::npos);
}

TEST_CASE("build_sim_config wires the chain into the simulator") {
    auto c = cfg::parse_config_text(R"({"power_mode": "load"})");
    const auto s = cfg::build_sim_config(c);
    CHECK(s.load_power_w == doctest::Approx(45.11).epsilon(1e-2));
    CHECK(s.battery.capacity_ah == doctest::Approx(40.0));
    CHECK(s.battery.soc_floor == doctest::Approx(0.1));
    CHECK(s.total_reduction == doctest::Approx(37.5));
}
