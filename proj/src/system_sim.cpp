#include "composter/system_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "composter/errors.hpp"

namespace composter::sim {

IrradianceProfile IrradianceProfile::from_target(double peak_wm2, double target_kwh_m2,
                                                 double solar_noon_h) {
    if (peak_wm2 <= 0) throw InvalidInput("irradiance peak must be > 0");
    if (target_kwh_m2 <= 0) throw InvalidInput("daily irradiation target must be > 0");
    IrradianceProfile p;
    p.peak_wm2 = peak_wm2;
    p.daily_target_kwh_m2 = target_kwh_m2;
    p.solar_noon_h = solar_noon_h;
    // half-sine integral: (2/pi) * peak * T = target
    p.daylight_hours = target_kwh_m2 * 1000.0 * std::numbers::pi / (2.0 * peak_wm2);
    return p;
}

double irradiance_at(const IrradianceProfile& profile, double time_of_day_h) {
    const double rise = profile.solar_noon_h - profile.daylight_hours / 2.0;
    const double x = (time_of_day_h - rise) / profile.daylight_hours;
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return profile.peak_wm2 * std::sin(std::numbers::pi * x);
}

BatteryState step_battery(const BatteryState& state, double net_power_w, double dt_s) {
    if (dt_s <= 0) throw InvalidInput("dt must be > 0");
    BatteryState next = state;
    const double dsoc = net_power_w * dt_s / (3600.0 * state.voltage_v * state.capacity_ah);
    const double raw = state.state_of_charge + dsoc;
    next.state_of_charge = std::clamp(raw, 0.0, 1.0);
    next.saturated = raw != next.state_of_charge;
    return next;
}

MotorState step_motor(const MotorState& state, double bus_voltage_v, double dt_s) {
    if (dt_s <= 0) throw InvalidInput("dt must be > 0");
    MotorState next = state;
    const double target = state.steady_gain_rpm_per_v * bus_voltage_v;
    const double decay = std::exp(-dt_s / state.time_constant_s);
    next.speed_rpm = target + (state.speed_rpm - target) * decay;
    return next;
}

bool session_active(const energy::DutySchedule& schedule, double time_of_day_s) {
    if (schedule.sessions_per_day <= 0 || schedule.session_minutes <= 0) return false;
    const double spacing_s = 86400.0 / schedule.sessions_per_day;
    const double duration_s = schedule.session_minutes * 60.0;
    for (int i = 0; i < schedule.sessions_per_day; ++i) {
        const double start = (i + 0.5) * spacing_s;
        if (time_of_day_s >= start && time_of_day_s < start + duration_s) return true;
    }
    return false;
}

void SystemConfig::validate() const {
    datasheet.validate();
    schedule.validate();
    if (panel_count < 0) throw InvalidInput("panel_count must be >= 0");
    if (load_power_w < 0) throw InvalidInput("load power must be >= 0");
    if (bus_voltage_v <= 0) throw InvalidInput("bus voltage must be > 0");
    if (battery.capacity_ah <= 0 || battery.voltage_v <= 0)
        throw InvalidInput("battery capacity and voltage must be > 0");
    if (battery.state_of_charge < 0 || battery.state_of_charge > 1)
        throw InvalidInput("battery state of charge must be in [0, 1]");
    if (motor.time_constant_s <= 0) throw InvalidInput("motor time constant must be > 0");
    if (total_reduction < 1) throw InvalidInput("total reduction must be >= 1");
}

SimTrace simulate(const SystemConfig& config, double horizon_s, double dt_s,
                  Scenario scenario) {
    config.validate();
    if (dt_s <= 0) throw InvalidInput("dt must be > 0");
    if (horizon_s < dt_s) throw InvalidInput("horizon must cover at least one step");

    const long steps = std::lround(horizon_s / dt_s);
    SimTrace trace;
    trace.records.reserve(steps + 1);

    BatteryState battery = config.battery;
    MotorState motor = config.motor;
    trace.min_soc = trace.max_soc = battery.state_of_charge;

    auto record = [&](long k, double g, double pv_w, double load_w) {
        TraceRecord r;
        r.t_s = k * dt_s;
        r.irradiance_wm2 = g;
        r.pv_power_w = pv_w;
        r.load_power_w = load_w;
        r.net_power_w = pv_w - load_w;
        r.state_of_charge = battery.state_of_charge;
        r.motor_speed_rpm = motor.speed_rpm;
        r.drum_speed_rpm = motor.speed_rpm / config.total_reduction;
        trace.records.push_back(r);
        trace.min_soc = std::min(trace.min_soc, battery.state_of_charge);
        trace.max_soc = std::max(trace.max_soc, battery.state_of_charge);
    };
    record(0, 0.0, 0.0, 0.0);

    for (long k = 0; k < steps; ++k) {
        const double t = k * dt_s;
        const double tod_s = std::fmod(t, 86400.0);

        const double g = scenario == Scenario::blackout
                             ? 0.0
                             : irradiance_at(config.profile, tod_s / 3600.0);
        const bool on = session_active(config.schedule, tod_s);
        const double load_w = on ? config.load_power_w : 0.0;

        double pv_w = 0.0;
        if (g > 0.0 && config.panel_count > 0) {
            pv_w = config.panel_count *
                   pv::mpp_at(config.pv_params, config.datasheet, g,
                              config.cell_temperature_c)
                       .power_w;
            // curtail once the battery is full
            if (battery.state_of_charge >= 1.0 && pv_w > load_w) pv_w = load_w;
        }

        const double net_w = pv_w - load_w;
        const double soc_before = battery.state_of_charge;
        battery = step_battery(battery, net_w, dt_s);
        const double stored_wh =
            (battery.state_of_charge - soc_before) * battery.energy_capacity_wh();
        trace.pv_energy_wh += pv_w * dt_s / 3600.0;
        trace.load_energy_wh += load_w * dt_s / 3600.0;
        trace.clamp_loss_wh += net_w * dt_s / 3600.0 - stored_wh;

        const double bus_v = on ? config.bus_voltage_v : 0.0;
        if (config.coarse)
            motor.speed_rpm = motor.steady_gain_rpm_per_v * bus_v;
        else
            motor = step_motor(motor, bus_v, dt_s);

        record(k + 1, g, pv_w, load_w);
    }
    return trace;
}

AutonomyVerdict autonomy_check(const SystemConfig& config, int days) {
    if (days < 1) throw InvalidInput("autonomy check needs days >= 1");
    SystemConfig c = config;
    c.battery.state_of_charge = 1.0;
    c.coarse = true;
    const SimTrace trace = simulate(c, days * 86400.0, 60.0, Scenario::blackout);
    return {trace.min_soc >= config.battery.soc_floor, trace.min_soc};
}

}  // namespace composter::sim
