#include "composter/drivetrain.hpp"

#include <cmath>
#include <numbers>

#include "composter/errors.hpp"

namespace composter::drivetrain {

namespace {
void require(bool ok, const char* msg) {
    if (!ok) throw InvalidInput(msg);
}
}  // namespace

void DrumSpec::validate() const {
    require(diameter_m > 0, "drum.diameter must be > 0");
    require(length_m > 0, "drum.length must be > 0");
    require(capacity_m3 > 0, "drum.capacity must be > 0");
    require(empty_mass_kg >= 0, "drum.empty_mass must be >= 0");
    require(waste_mass_kg >= 0, "drum.waste_mass must be >= 0");
    require(target_speed_rpm > 0, "drum.target_speed must be > 0");
}

double MotorSpec::rated_speed_rad_s() const {
    return rated_speed_rpm * 2.0 * std::numbers::pi / 60.0;
}

void MotorSpec::validate() const {
    require(rated_speed_rpm > 0, "motor.rated_speed must be > 0");
    require(rated_torque_nm > 0, "motor.rated_torque must be > 0");
    require(efficiency > 0 && efficiency <= 1, "motor.efficiency must be in (0, 1]");
    require(voltage_v > 0, "motor.voltage must be > 0");
}

void GearStage::validate() const {
    require(reduction_factor >= 1, "gear.reduction_factor must be >= 1");
    require(efficiency > 0 && efficiency <= 1, "gear.efficiency must be in (0, 1]");
}

double PulleyPair::reduction_factor() const {
    return driven_diameter_mm / drive_diameter_mm;
}

void PulleyPair::validate() const {
    require(drive_diameter_mm > 0, "pulleys.drive_diameter must be > 0");
    require(driven_diameter_mm > 0, "pulleys.driven_diameter must be > 0");
    require(center_distance_mm > 0, "pulleys.center_distance must be > 0");
    require(efficiency > 0 && efficiency <= 1, "pulleys.efficiency must be in (0, 1]");
}

double load_torque(double total_mass_kg, double drum_radius_m, double gravity) {
    require(total_mass_kg >= 0, "total mass must be >= 0");
    require(drum_radius_m > 0, "drum radius must be > 0");
    require(gravity > 0, "gravity must be > 0");
    return total_mass_kg * gravity * drum_radius_m;
}

double required_motor_torque(double load_torque_nm, double total_reduction,
                             double eta_motor, double eta_gear) {
    require(load_torque_nm >= 0, "load torque must be >= 0");
    require(total_reduction >= 1, "reduction must be >= 1");
    require(eta_motor > 0 && eta_motor <= 1, "motor efficiency must be in (0, 1]");
    require(eta_gear > 0 && eta_gear <= 1, "gear efficiency must be in (0, 1]");
    return load_torque_nm / (total_reduction * eta_motor * eta_gear);
}

double total_reduction(double motor_speed_rpm, double drum_speed_rpm) {
    require(motor_speed_rpm > 0, "motor speed must be > 0");
    require(drum_speed_rpm > 0, "drum speed must be > 0");
    if (motor_speed_rpm < drum_speed_rpm)
        throw Infeasible("motor speed below drum speed: a reducer cannot speed up");
    return motor_speed_rpm / drum_speed_rpm;
}

WrapGeometry pulley_geometry(const PulleyPair& pair) {
    pair.validate();
    const double dm = pair.drive_diameter_mm;
    const double dr = pair.driven_diameter_mm;
    const double c = pair.center_distance_mm;

    const double s = (dr - dm) / (2.0 * c);
    if (s < -1.0 || s > 1.0)
        throw Infeasible("pulley diameters too far apart for the center distance");

    WrapGeometry w;
    w.beta_rad = std::asin(s);
    // theta_small wraps the smaller pulley regardless of which one drives
    const double d_small = std::min(dm, dr);
    const double d_large = std::max(dm, dr);
    w.theta_small_rad = std::numbers::pi - 2.0 * std::abs(w.beta_rad);
    w.theta_large_rad = std::numbers::pi + 2.0 * std::abs(w.beta_rad);
    w.belt_length_mm = std::sqrt(4.0 * c * c - (dr - dm) * (dr - dm)) +
                       0.5 * (d_small * w.theta_small_rad + d_large * w.theta_large_rad);
    w.center_valid = dr < c && c < 3.0 * (dm + dr);
    return w;
}

double gear_stage_ratio(double total_reduction, double pulley_reduction) {
    require(pulley_reduction >= 1, "pulley reduction must be >= 1");
    if (total_reduction < pulley_reduction)
        throw Infeasible("pulley stage alone exceeds the total reduction");
    return total_reduction / pulley_reduction;
}

DrivetrainDesign size_drivetrain(const DrumSpec& drum, const MotorSpec& motor,
                                 const GearStage& gear, const PulleyPair& pulleys,
                                 double gravity) {
    drum.validate();
    motor.validate();
    gear.validate();
    pulleys.validate();

    DrivetrainDesign d;
    d.load_torque_nm = load_torque(drum.total_mass_kg(), drum.radius_m(), gravity);
    d.gear_reduction = gear.reduction_factor;
    d.pulley_reduction = std::max(pulleys.reduction_factor(), 1.0);
    d.total_reduction = d.gear_reduction * d.pulley_reduction;
    d.required_motor_torque_nm = d.load_torque_nm == 0.0
        ? 0.0
        : required_motor_torque(d.load_torque_nm, gear.reduction_factor,
                                motor.efficiency, gear.efficiency);
    d.wrap = pulley_geometry(pulleys);
    d.margin_ok = motor.rated_torque_nm >= d.required_motor_torque_nm;
    return d;
}

}  // namespace composter::drivetrain
