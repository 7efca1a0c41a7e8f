#include "composter/energy_budget.hpp"

#include <cmath>
#include <numbers>

#include "composter/errors.hpp"

namespace composter::energy {

namespace {
void require(bool ok, const char* msg) {
    if (!ok) throw InvalidInput(msg);
}
}  // namespace

void DutySchedule::validate() const {
    require(sessions_per_day >= 0, "schedule.sessions_per_day must be >= 0");
    require(session_minutes >= 0, "schedule.session_minutes must be >= 0");
}

double motor_electrical_power(PowerMode mode, const drivetrain::MotorSpec& motor,
                              const drivetrain::GearStage& gear,
                              double load_torque_nm, double drum_speed_rpm) {
    motor.validate();
    gear.validate();
    require(load_torque_nm >= 0, "load torque must be >= 0");
    require(drum_speed_rpm >= 0, "drum speed must be >= 0");
    if (mode == PowerMode::rated)
        return motor.rated_torque_nm * motor.rated_speed_rad_s();
    const double drum_rad_s = drum_speed_rpm * 2.0 * std::numbers::pi / 60.0;
    return load_torque_nm * drum_rad_s / (motor.efficiency * gear.efficiency);
}

double daily_energy_consumed(double power_w, const DutySchedule& schedule) {
    require(power_w >= 0, "power must be >= 0");
    schedule.validate();
    return power_w * schedule.daily_runtime_h();
}

double required_production(double consumed_wh, double k) {
    require(consumed_wh >= 0, "consumed energy must be >= 0");
    require(k > 0 && k <= 1, "system factor K must be in (0, 1]");
    return consumed_wh / k;
}

PanelSizing panel_sizing(double required_wh, double irradiation_kwh_m2,
                         double unit_peak_wp) {
    require(required_wh >= 0, "required energy must be >= 0");
    require(irradiation_kwh_m2 > 0, "daily irradiation must be > 0");
    require(unit_peak_wp > 0, "unit peak power must be > 0");

    PanelSizing p;
    p.daily_irradiation_kwh_m2 = irradiation_kwh_m2;
    p.unit_peak_wp = unit_peak_wp;
    p.required_peak_wp = required_wh / irradiation_kwh_m2;
    p.panel_count = static_cast<int>(std::ceil(p.required_peak_wp / unit_peak_wp - 1e-12));
    return p;
}

BatterySizing battery_sizing(double consumed_wh, int autonomy_days,
                             double discharge_depth, double voltage_v,
                             double unit_capacity_ah) {
    require(consumed_wh >= 0, "consumed energy must be >= 0");
    require(autonomy_days >= 0, "autonomy days must be >= 0");
    require(discharge_depth > 0 && discharge_depth <= 1,
            "discharge depth must be in (0, 1]");
    require(voltage_v > 0, "battery voltage must be > 0");
    require(unit_capacity_ah > 0, "unit capacity must be > 0");

    BatterySizing b;
    b.voltage_v = voltage_v;
    b.autonomy_days = autonomy_days;
    b.discharge_depth = discharge_depth;
    b.unit_capacity_ah = unit_capacity_ah;
    b.capacity_required_ah = consumed_wh * autonomy_days / (discharge_depth * voltage_v);
    b.paper_amperage_a = voltage_v * discharge_depth;
    b.battery_count = static_cast<int>(std::ceil(b.paper_amperage_a / unit_capacity_ah - 1e-12));
    b.battery_count_by_capacity =
        static_cast<int>(std::ceil(b.capacity_required_ah / unit_capacity_ah - 1e-12));
    return b;
}

RegulatorRequirement regulator_requirements(double generator_voltage_v,
                                            double array_peak_wp) {
    require(generator_voltage_v > 0, "generator voltage must be > 0");
    require(array_peak_wp >= 0, "array peak power must be >= 0");

    RegulatorRequirement r;
    r.voltage_v = generator_voltage_v;
    r.min_power_w = array_peak_wp;
    r.min_current_a = array_peak_wp / generator_voltage_v;
    return r;
}

SizingChain size_chain(PowerMode mode, const drivetrain::MotorSpec& motor,
                       const drivetrain::GearStage& gear,
                       const drivetrain::DrivetrainDesign& design,
                       double drum_speed_rpm, const SizingInputs& in) {
    SizingChain c;
    c.budget.power_mode = mode;
    c.budget.motor_power_w =
        motor_electrical_power(mode, motor, gear, design.load_torque_nm, drum_speed_rpm);
    c.budget.daily_runtime_h = in.schedule.daily_runtime_h();
    c.budget.energy_consumed_wh = daily_energy_consumed(c.budget.motor_power_w, in.schedule);
    c.budget.system_factor_k = in.system_factor_k;
    c.budget.energy_required_wh =
        required_production(c.budget.energy_consumed_wh, in.system_factor_k);
    c.panel = panel_sizing(c.budget.energy_required_wh, in.daily_irradiation_kwh_m2,
                           in.panel_unit_peak_wp);
    c.battery = battery_sizing(c.budget.energy_consumed_wh, in.autonomy_days,
                               in.discharge_depth, in.battery_voltage_v,
                               in.battery_unit_capacity_ah);
    c.regulator = regulator_requirements(in.battery_voltage_v, in.panel_unit_peak_wp);
    return c;
}

}  // namespace composter::energy
