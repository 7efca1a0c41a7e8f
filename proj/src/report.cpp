#include "composter/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace composter::report {

namespace {
using nlohmann::json;

json chain_json(const energy::SizingChain& c) {
    return {
        {"motor_power_w", c.budget.motor_power_w},
        {"daily_runtime_h", c.budget.daily_runtime_h},
        {"energy_consumed_wh", c.budget.energy_consumed_wh},
        {"system_factor_k", c.budget.system_factor_k},
        {"energy_required_wh", c.budget.energy_required_wh},
        {"panel",
         {{"required_peak_wp", c.panel.required_peak_wp},
          {"unit_peak_wp", c.panel.unit_peak_wp},
          {"panel_count", c.panel.panel_count},
          {"daily_irradiation_kwh_m2", c.panel.daily_irradiation_kwh_m2}}},
        {"battery",
         {{"voltage_v", c.battery.voltage_v},
          {"autonomy_days", c.battery.autonomy_days},
          {"discharge_depth", c.battery.discharge_depth},
          {"capacity_required_ah", c.battery.capacity_required_ah},
          {"unit_capacity_ah", c.battery.unit_capacity_ah},
          {"paper_amperage_a", c.battery.paper_amperage_a},
          {"battery_count", c.battery.battery_count},
          {"battery_count_by_capacity", c.battery.battery_count_by_capacity}}},
        {"regulator",
         {{"voltage_v", c.regulator.voltage_v},
          {"min_power_w", c.regulator.min_power_w},
          {"min_current_a", c.regulator.min_current_a}}},
    };
}

}  // namespace

bool DesignReport::has_flag(const std::string& code) const {
    return std::any_of(flags.begin(), flags.end(),
                       [&](const Flag& f) { return f.code == code; });
}

DesignReport build_report(const cfg::ToolConfig& config) {
    DesignReport r;
    r.design = drivetrain::size_drivetrain(config.drum, config.motor, config.gear,
                                           config.pulleys);
    const auto inputs = config.sizing_inputs();
    r.rated = energy::size_chain(energy::PowerMode::rated, config.motor, config.gear,
                                 r.design, config.drum.target_speed_rpm, inputs);
    r.load = energy::size_chain(energy::PowerMode::load, config.motor, config.gear,
                                r.design, config.drum.target_speed_rpm, inputs);

    const double motor_power = r.rated.budget.motor_power_w;
    const double eta = config.gear.efficiency * config.pulleys.efficiency;
    if (config.paper_faithful) {
        r.chain_output_power_w = motor_power / eta;
        if (eta < 1.0)
            r.flags.push_back({"EQ9_NONPHYSICAL",
                               "verbatim output-power division yields more output than "
                               "input for sub-unity chain efficiency"});
    } else {
        r.chain_output_power_w = motor_power * eta;
    }

    if (!r.design.wrap.center_valid)
        r.flags.push_back({"EQ10_VIOLATION",
                           "pulley center distance violates d_r < C < 3(d_m + d_r)"});
    if (!r.design.margin_ok)
        r.flags.push_back({"TORQUE_MARGIN",
                           "required motor torque exceeds the motor rating"});
    if (r.rated.panel.panel_count != r.load.panel.panel_count)
        r.flags.push_back({"PANEL_COUNT_MISMATCH",
                           "rated-mode and load-mode chains disagree on the panel count"});
    if (r.rated.battery.battery_count != r.rated.battery.battery_count_by_capacity)
        r.flags.push_back({"BATTERY_COUNT_BASIS",
                           "verbatim amperage-based battery count differs from the "
                           "capacity-based count"});
    return r;
}

std::string to_json(const DesignReport& r) {
    json flags = json::array();
    for (const auto& f : r.flags) flags.push_back({{"code", f.code}, {"message", f.message}});

    json root = {
        {"drivetrain",
         {{"load_torque_nm", r.design.load_torque_nm},
          {"total_reduction", r.design.total_reduction},
          {"gear_reduction", r.design.gear_reduction},
          {"pulley_reduction", r.design.pulley_reduction},
          {"required_motor_torque_nm", r.design.required_motor_torque_nm},
          {"margin_ok", r.design.margin_ok},
          {"wrap",
           {{"beta_rad", r.design.wrap.beta_rad},
            {"theta_small_rad", r.design.wrap.theta_small_rad},
            {"theta_large_rad", r.design.wrap.theta_large_rad},
            {"belt_length_mm", r.design.wrap.belt_length_mm},
            {"center_valid", r.design.wrap.center_valid}}}}},
        {"energy", {{"rated", chain_json(r.rated)}, {"load", chain_json(r.load)}}},
        {"chain_output_power_w", r.chain_output_power_w},
        {"flags", flags},
    };
    return root.dump(2) + "\n";
}

}  // namespace composter::report
