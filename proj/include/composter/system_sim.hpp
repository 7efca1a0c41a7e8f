#ifndef COMPOSTER_SYSTEM_SIM_HPP
#define COMPOSTER_SYSTEM_SIM_HPP

#include <vector>

#include "composter/energy_budget.hpp"
#include "composter/pv_model.hpp"

namespace composter::sim {

// Half-sine daily irradiance shape scaled to a daily energy target.
struct IrradianceProfile {
    double peak_wm2 = 1000.0;
    double daylight_hours = 7.853981633974483;  // derived from the 5 kWh/m2 target
    double solar_noon_h = 12.0;
    double daily_target_kwh_m2 = 5.0;

    // daylight span such that the half-sine integrates to the target
    static IrradianceProfile from_target(double peak_wm2, double target_kwh_m2,
                                         double solar_noon_h = 12.0);
};

double irradiance_at(const IrradianceProfile& profile, double time_of_day_h);

struct BatteryState {
    double state_of_charge = 0.45;
    double capacity_ah = 40.0;
    double voltage_v = 12.0;
    double soc_floor = 0.1;
    bool saturated = false;  // set when the last step clamped

    double energy_capacity_wh() const { return capacity_ah * voltage_v; }
};

// Energy counting: dSoC = P dt / (3600 V C), clamped to [0, 1].
BatteryState step_battery(const BatteryState& state, double net_power_w, double dt_s);

struct MotorState {
    double speed_rpm = 0.0;
    double steady_gain_rpm_per_v = 12.5;
    double time_constant_s = 0.1;
};

MotorState step_motor(const MotorState& state, double bus_voltage_v, double dt_s);

struct TraceRecord {
    double t_s = 0.0;
    double irradiance_wm2 = 0.0;
    double pv_power_w = 0.0;
    double load_power_w = 0.0;
    double net_power_w = 0.0;
    double state_of_charge = 0.0;
    double motor_speed_rpm = 0.0;
    double drum_speed_rpm = 0.0;
};

struct SimTrace {
    std::vector<TraceRecord> records;
    double clamp_loss_wh = 0.0;  // energy discarded (or unserved) at the SoC clamps
    double pv_energy_wh = 0.0;
    double load_energy_wh = 0.0;
    double min_soc = 1.0;
    double max_soc = 0.0;
};

enum class Scenario { clear_days, blackout };

struct SystemConfig {
    pv::PvDatasheet datasheet;
    pv::SingleDiodeParams pv_params;   // extracted at reference conditions
    int panel_count = 1;
    IrradianceProfile profile;
    double cell_temperature_c = 25.0;
    energy::DutySchedule schedule;
    double load_power_w = 45.105;      // electrical draw while a session runs
    double bus_voltage_v = 12.0;
    BatteryState battery;
    MotorState motor;
    double total_reduction = 37.5;
    bool coarse = false;               // motor treated as settled each step

    void validate() const;
};

// True when a duty session is running at this time of day (seconds
// since midnight). Sessions are spread evenly over the day.
bool session_active(const energy::DutySchedule& schedule, double time_of_day_s);

SimTrace simulate(const SystemConfig& config, double horizon_s, double dt_s,
                  Scenario scenario = Scenario::clear_days);

struct AutonomyVerdict {
    bool pass = false;
    double min_soc = 0.0;
};

// Blackout run from full charge; pass iff SoC never drops below the floor.
AutonomyVerdict autonomy_check(const SystemConfig& config, int days);

}  // namespace composter::sim

#endif
