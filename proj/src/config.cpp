#include "composter/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "composter/errors.hpp"

namespace composter::cfg {

namespace {

using nlohmann::json;

// Pulls known keys out of an object, complaining about anything else.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }
    ~Section() = default;

    void get(const char* key, double& out) { fetch(key, out); }
    void get(const char* key, int& out) { fetch(key, out); }
    void get(const char* key, bool& out) { fetch(key, out); }
    void get(const char* key, std::string& out) { fetch(key, out); }

    const json* sub(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void finish() {
        for (auto& [key, value] : j_.items()) {
            if (!seen_.contains(key))
                throw ConfigError(path_ + "." + key + ": unknown key");
        }
    }

private:
    template <typename T>
    void fetch(const char* key, T& out) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path_ + "." + key + ": wrong type");
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void parse_drum(const json& j, drivetrain::DrumSpec& d) {
    Section s(j, "drum");
    s.get("diameter_m", d.diameter_m);
    s.get("length_m", d.length_m);
    s.get("capacity_m3", d.capacity_m3);
    s.get("empty_mass_kg", d.empty_mass_kg);
    s.get("waste_mass_kg", d.waste_mass_kg);
    s.get("target_speed_rpm", d.target_speed_rpm);
    s.finish();
}

void parse_motor(const json& j, drivetrain::MotorSpec& m) {
    Section s(j, "motor");
    s.get("rated_speed_rpm", m.rated_speed_rpm);
    s.get("rated_torque_nm", m.rated_torque_nm);
    s.get("efficiency", m.efficiency);
    s.get("voltage_v", m.voltage_v);
    s.finish();
}

void parse_gear(const json& j, drivetrain::GearStage& g) {
    Section s(j, "gear");
    s.get("reduction_factor", g.reduction_factor);
    s.get("efficiency", g.efficiency);
    s.finish();
}

void parse_pulleys(const json& j, drivetrain::PulleyPair& p) {
    Section s(j, "pulleys");
    s.get("drive_diameter_mm", p.drive_diameter_mm);
    s.get("driven_diameter_mm", p.driven_diameter_mm);
    s.get("center_distance_mm", p.center_distance_mm);
    s.get("efficiency", p.efficiency);
    s.finish();
}

void parse_schedule(const json& j, energy::DutySchedule& d) {
    Section s(j, "schedule");
    s.get("sessions_per_day", d.sessions_per_day);
    s.get("session_minutes", d.session_minutes);
    s.finish();
}

void parse_pv(const json& j, pv::PvDatasheet& p, double& unit_peak) {
    Section s(j, "pv");
    s.get("open_circuit_voltage_v", p.open_circuit_voltage_v);
    s.get("short_circuit_current_a", p.short_circuit_current_a);
    s.get("mpp_voltage_v", p.mpp_voltage_v);
    s.get("mpp_current_a", p.mpp_current_a);
    s.get("series_cells", p.series_cells);
    s.get("temp_coeff_isc_per_c", p.temp_coeff_isc_per_c);
    s.get("temp_coeff_voc_per_c", p.temp_coeff_voc_per_c);
    s.get("reference_irradiance_wm2", p.reference_irradiance_wm2);
    s.get("reference_temperature_c", p.reference_temperature_c);
    s.get("unit_peak_wp", unit_peak);
    s.finish();
}

void parse_battery(const json& j, ToolConfig& c) {
    Section s(j, "battery");
    s.get("voltage_v", c.battery_voltage_v);
    s.get("autonomy_days", c.battery_autonomy_days);
    s.get("discharge_depth", c.battery_discharge_depth);
    s.get("unit_capacity_ah", c.battery_unit_capacity_ah);
    s.get("initial_soc", c.sim.initial_soc);
    s.finish();
}

void parse_site(const json& j, SiteSettings& site) {
    Section s(j, "site");
    s.get("daily_irradiation_kwh_m2", site.daily_irradiation_kwh_m2);
    s.get("peak_irradiance_wm2", site.peak_irradiance_wm2);
    s.get("solar_noon_h", site.solar_noon_h);
    s.finish();
}

void apply_preset(SimSettings& sim) {
    switch (sim.preset) {
        case SimPreset::paper_sim:
            sim.motor_gain_rpm_per_v = 12.5;
            sim.motor_time_constant_s = 0.1;
            sim.total_reduction = 37.5;
            break;
        case SimPreset::design:
            sim.motor_gain_rpm_per_v = 125.0;
            sim.motor_time_constant_s = 0.1;
            sim.total_reduction = 375.0;
            break;
    }
}

void parse_sim(const json& j, SimSettings& sim) {
    Section s(j, "sim");
    std::string preset;
    s.get("preset", preset);
    if (!preset.empty()) {
        if (preset == "paper-sim")
            sim.preset = SimPreset::paper_sim;
        else if (preset == "design")
            sim.preset = SimPreset::design;
        else
            throw ConfigError("sim.preset: expected \"paper-sim\" or \"design\"");
        apply_preset(sim);
    }
    s.get("motor_gain_rpm_per_v", sim.motor_gain_rpm_per_v);
    s.get("motor_time_constant_s", sim.motor_time_constant_s);
    s.get("total_reduction", sim.total_reduction);
    s.get("cell_temperature_c", sim.cell_temperature_c);
    s.get("panel_count", sim.panel_count);
    s.finish();
}

ToolConfig parse_json(const json& root) {
    ToolConfig c;
    Section top(root, "config");
    if (auto* j = top.sub("drum")) parse_drum(*j, c.drum);
    if (auto* j = top.sub("motor")) parse_motor(*j, c.motor);
    if (auto* j = top.sub("gear")) parse_gear(*j, c.gear);
    if (auto* j = top.sub("pulleys")) parse_pulleys(*j, c.pulleys);
    if (auto* j = top.sub("schedule")) parse_schedule(*j, c.schedule);
    if (auto* j = top.sub("pv")) parse_pv(*j, c.pv_datasheet, c.panel_unit_peak_wp);
    if (auto* j = top.sub("battery")) parse_battery(*j, c);
    if (auto* j = top.sub("site")) parse_site(*j, c.site);
    if (auto* j = top.sub("sim")) parse_sim(*j, c.sim);
    top.get("system_factor_k", c.system_factor_k);
    std::string mode;
    top.get("power_mode", mode);
    if (!mode.empty()) {
        if (mode == "rated")
            c.power_mode = energy::PowerMode::rated;
        else if (mode == "load")
            c.power_mode = energy::PowerMode::load;
        else
            throw ConfigError("power_mode: expected \"rated\" or \"load\"");
    }
    top.get("paper_faithful", c.paper_faithful);
    top.finish();

    // invariant checks surface as ConfigError with the field context
    try {
        c.drum.validate();
        c.motor.validate();
        c.gear.validate();
        c.pulleys.validate();
        c.schedule.validate();
        c.pv_datasheet.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (c.system_factor_k <= 0 || c.system_factor_k > 1)
        throw ConfigError("system_factor_k: must be in (0, 1]");
    if (c.battery_voltage_v <= 0) throw ConfigError("battery.voltage_v: must be > 0");
    if (c.battery_discharge_depth <= 0 || c.battery_discharge_depth > 1)
        throw ConfigError("battery.discharge_depth: must be in (0, 1]");
    if (c.battery_unit_capacity_ah <= 0)
        throw ConfigError("battery.unit_capacity_ah: must be > 0");
    if (c.battery_autonomy_days < 0)
        throw ConfigError("battery.autonomy_days: must be >= 0");
    if (c.sim.initial_soc < 0 || c.sim.initial_soc > 1)
        throw ConfigError("battery.initial_soc: must be in [0, 1]");
    if (c.panel_unit_peak_wp <= 0) throw ConfigError("pv.unit_peak_wp: must be > 0");
    return c;
}

}  // namespace

energy::SizingInputs ToolConfig::sizing_inputs() const {
    energy::SizingInputs in;
    in.schedule = schedule;
    in.system_factor_k = system_factor_k;
    in.daily_irradiation_kwh_m2 = site.daily_irradiation_kwh_m2;
    in.panel_unit_peak_wp = panel_unit_peak_wp;
    in.autonomy_days = battery_autonomy_days;
    in.discharge_depth = battery_discharge_depth;
    in.battery_voltage_v = battery_voltage_v;
    in.battery_unit_capacity_ah = battery_unit_capacity_ah;
    return in;
}

ToolConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config syntax error: ") + e.what());
    }
    return parse_json(root);
}

ToolConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

sim::SystemConfig build_sim_config(const ToolConfig& config) {
    sim::SystemConfig s;
    s.datasheet = config.pv_datasheet;
    s.pv_params = pv::extract_parameters(config.pv_datasheet);
    s.panel_count = config.sim.panel_count;
    s.profile = sim::IrradianceProfile::from_target(config.site.peak_irradiance_wm2,
                                                    config.site.daily_irradiation_kwh_m2,
                                                    config.site.solar_noon_h);
    s.cell_temperature_c = config.sim.cell_temperature_c;
    s.schedule = config.schedule;

    const auto design = drivetrain::size_drivetrain(config.drum, config.motor,
                                                    config.gear, config.pulleys);
    s.load_power_w = energy::motor_electrical_power(config.power_mode, config.motor,
                                                    config.gear, design.load_torque_nm,
                                                    config.drum.target_speed_rpm);
    s.bus_voltage_v = config.battery_voltage_v;
    s.battery.state_of_charge = config.sim.initial_soc;
    s.battery.capacity_ah = config.battery_unit_capacity_ah;
    s.battery.voltage_v = config.battery_voltage_v;
    s.battery.soc_floor = 1.0 - config.battery_discharge_depth;
    s.motor.steady_gain_rpm_per_v = config.sim.motor_gain_rpm_per_v;
    s.motor.time_constant_s = config.sim.motor_time_constant_s;
    s.total_reduction = config.sim.total_reduction;
    return s;
}

}  // namespace composter::cfg
