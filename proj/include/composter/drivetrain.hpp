#ifndef COMPOSTER_DRIVETRAIN_HPP
#define COMPOSTER_DRIVETRAIN_HPP

#include <string>

namespace composter::drivetrain {

constexpr double kStandardGravity = 9.81;  // m/s^2

// The rotating drum, i.e. the load the drive chain has to move.
struct DrumSpec {
    double diameter_m = 0.600;
    double length_m = 0.640;
    double capacity_m3 = 0.181;
    double empty_mass_kg = 10.48;
    double waste_mass_kg = 20.0;
    double target_speed_rpm = 4.0;

    double radius_m() const { return diameter_m / 2.0; }
    double total_mass_kg() const { return empty_mass_kg + waste_mass_kg; }
    void validate() const;
};

struct MotorSpec {
    double rated_speed_rpm = 1500.0;
    double rated_torque_nm = 2.74;
    double efficiency = 0.98;
    double voltage_v = 12.0;

    double rated_speed_rad_s() const;
    void validate() const;
};

struct GearStage {
    double reduction_factor = 39.27;  // input speed / output speed, >= 1
    double efficiency = 0.85;

    void validate() const;
};

struct PulleyPair {
    double drive_diameter_mm = 15.0;
    double driven_diameter_mm = 143.24;
    double center_distance_mm = 110.0;
    double efficiency = 1.0;

    double reduction_factor() const;  // driven/drive for a reducing stage, >= 1 convention
    void validate() const;
};

// Open-belt wrap angles and belt length. Angles in radians, length in mm.
struct WrapGeometry {
    double beta_rad = 0.0;
    double theta_small_rad = 0.0;  // wrap on the small pulley
    double theta_large_rad = 0.0;  // wrap on the large pulley
    double belt_length_mm = 0.0;
    bool center_valid = false;     // d_r < C < 3(d_m + d_r)
};

struct DrivetrainDesign {
    double load_torque_nm = 0.0;
    double total_reduction = 1.0;
    double gear_reduction = 1.0;
    double pulley_reduction = 1.0;
    double required_motor_torque_nm = 0.0;
    WrapGeometry wrap;
    bool margin_ok = false;
};

// Torque needed at the drum axis: M_T * g * r.
double load_torque(double total_mass_kg, double drum_radius_m,
                   double gravity = kStandardGravity);

// Motor-side torque through the reduction chain: C_r / (i * eta_m * eta_r).
double required_motor_torque(double load_torque_nm, double total_reduction,
                             double eta_motor, double eta_gear);

// Speed ratio motor/drum, >= 1.
double total_reduction(double motor_speed_rpm, double drum_speed_rpm);

// Wrap angles and belt length for an open belt drive.
WrapGeometry pulley_geometry(const PulleyPair& pair);

// Gear-stage share of a given total reduction.
double gear_stage_ratio(double total_reduction, double pulley_reduction);

// Full chain report. The required motor torque follows the gear-stage
// convention of the sizing chain (the pulley stage carries speed, the
// gearbox carries the torque figure compared against the motor rating).
DrivetrainDesign size_drivetrain(const DrumSpec& drum, const MotorSpec& motor,
                                 const GearStage& gear, const PulleyPair& pulleys,
                                 double gravity = kStandardGravity);

}  // namespace composter::drivetrain

#endif
