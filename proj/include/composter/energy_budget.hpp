#ifndef COMPOSTER_ENERGY_BUDGET_HPP
#define COMPOSTER_ENERGY_BUDGET_HPP

#include "composter/drivetrain.hpp"

namespace composter::energy {

enum class PowerMode { rated, load };

// Drum operating pattern, sessions per day x minutes per session.
struct DutySchedule {
    int sessions_per_day = 2;
    double session_minutes = 10.0;

    double daily_runtime_h() const { return sessions_per_day * session_minutes / 60.0; }
    void validate() const;
};

struct EnergyBudget {
    double motor_power_w = 0.0;
    double daily_runtime_h = 0.0;
    double energy_consumed_wh = 0.0;
    double system_factor_k = 0.65;
    double energy_required_wh = 0.0;
    PowerMode power_mode = PowerMode::rated;
};

struct PanelSizing {
    double required_peak_wp = 0.0;
    double unit_peak_wp = 20.0;
    int panel_count = 0;
    double daily_irradiation_kwh_m2 = 5.0;
};

struct BatterySizing {
    double voltage_v = 12.0;
    int autonomy_days = 3;
    double discharge_depth = 0.9;
    double capacity_required_ah = 0.0;
    double unit_capacity_ah = 40.0;
    double paper_amperage_a = 0.0;       // verbatim U*D figure
    int battery_count = 0;               // ceil(paper_amperage / unit)
    int battery_count_by_capacity = 0;   // ceil(capacity_required / unit)
};

struct RegulatorRequirement {
    double voltage_v = 12.0;
    double min_power_w = 0.0;
    double min_current_a = 0.0;
};

// Electrical draw of the motor. rated: torque x speed off the nameplate.
// load: drum load power referred through the chain efficiencies.
double motor_electrical_power(PowerMode mode, const drivetrain::MotorSpec& motor,
                              const drivetrain::GearStage& gear,
                              double load_torque_nm, double drum_speed_rpm);

double daily_energy_consumed(double power_w, const DutySchedule& schedule);

double required_production(double consumed_wh, double k);

PanelSizing panel_sizing(double required_wh, double irradiation_kwh_m2,
                         double unit_peak_wp);

BatterySizing battery_sizing(double consumed_wh, int autonomy_days,
                             double discharge_depth, double voltage_v,
                             double unit_capacity_ah);

RegulatorRequirement regulator_requirements(double generator_voltage_v,
                                            double array_peak_wp);

// Full sizing chain for one power mode.
struct SizingChain {
    EnergyBudget budget;
    PanelSizing panel;
    BatterySizing battery;
    RegulatorRequirement regulator;
};

struct SizingInputs {
    DutySchedule schedule;
    double system_factor_k = 0.65;
    double daily_irradiation_kwh_m2 = 5.0;
    double panel_unit_peak_wp = 20.0;
    int autonomy_days = 3;
    double discharge_depth = 0.9;
    double battery_voltage_v = 12.0;
    double battery_unit_capacity_ah = 40.0;
};

SizingChain size_chain(PowerMode mode, const drivetrain::MotorSpec& motor,
                       const drivetrain::GearStage& gear,
                       const drivetrain::DrivetrainDesign& design,
                       double drum_speed_rpm, const SizingInputs& in);

}  // namespace composter::energy

#endif
