#ifndef COMPOSTER_CONFIG_HPP
#define COMPOSTER_CONFIG_HPP

#include <string>

#include "composter/drivetrain.hpp"
#include "composter/energy_budget.hpp"
#include "composter/pv_model.hpp"
#include "composter/system_sim.hpp"

namespace composter::cfg {

// Simulator motor presets. `paper_sim` matches the simulated 150 rpm
// motor through a 37.5 reduction; `design` matches the 1500 rpm design
// chain through 375.
enum class SimPreset { paper_sim, design };

struct SimSettings {
    SimPreset preset = SimPreset::paper_sim;
    double motor_gain_rpm_per_v = 12.5;
    double motor_time_constant_s = 0.1;
    double total_reduction = 37.5;
    double initial_soc = 0.45;
    double cell_temperature_c = 25.0;
    int panel_count = 1;
};

struct SiteSettings {
    double daily_irradiation_kwh_m2 = 5.0;
    double peak_irradiance_wm2 = 1000.0;
    double solar_noon_h = 12.0;
};

struct ToolConfig {
    drivetrain::DrumSpec drum;
    drivetrain::MotorSpec motor;
    drivetrain::GearStage gear;
    drivetrain::PulleyPair pulleys;
    energy::DutySchedule schedule;
    pv::PvDatasheet pv_datasheet;
    double panel_unit_peak_wp = 20.0;
    int battery_autonomy_days = 3;
    double battery_discharge_depth = 0.9;
    double battery_voltage_v = 12.0;
    double battery_unit_capacity_ah = 40.0;
    SiteSettings site;
    SimSettings sim;
    double system_factor_k = 0.65;
    energy::PowerMode power_mode = energy::PowerMode::rated;
    bool paper_faithful = false;

    energy::SizingInputs sizing_inputs() const;
};

// Parses and validates a JSON config file. Unknown keys are rejected;
// omitted fields fall back to defaults that reproduce the bundled
// system. Throws ConfigError with the offending field path.
ToolConfig parse_config(const std::string& path);

// Same, from a JSON string (used by tests).
ToolConfig parse_config_text(const std::string& text);

// Assembles the simulator config for one power mode; extracts the
// diode parameters on the way.
sim::SystemConfig build_sim_config(const ToolConfig& config);

}  // namespace composter::cfg

#endif
