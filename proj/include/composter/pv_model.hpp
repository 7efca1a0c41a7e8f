#ifndef COMPOSTER_PV_MODEL_HPP
#define COMPOSTER_PV_MODEL_HPP

#include <vector>

namespace composter::pv {

// Four-point module datasheet plus reference conditions.
struct PvDatasheet {
    double open_circuit_voltage_v = 21.3;
    double short_circuit_current_a = 1.31;
    double mpp_voltage_v = 17.1;
    double mpp_current_a = 1.17;
    int series_cells = 36;
    double temp_coeff_isc_per_c = 0.0005;    // fractional per degC
    double temp_coeff_voc_per_c = -0.0045;   // fractional per degC
    double reference_irradiance_wm2 = 1000.0;
    double reference_temperature_c = 25.0;

    void validate() const;
};

// Five-parameter single-diode equivalent circuit. series_cells and
// temperature_c carry the evaluation context so the implicit I-V
// equation is self-contained.
struct SingleDiodeParams {
    double photocurrent_a = 0.0;
    double saturation_current_a = 0.0;
    double ideality = 1.3;
    double series_resistance_ohm = 0.0;
    double shunt_resistance_ohm = 1e6;
    int series_cells = 36;
    double temperature_c = 25.0;

    // n * Ns * k * T / q, the module-level thermal voltage of the diode term
    double thermal_voltage_v() const;
};

struct OperatingPoint {
    double voltage_v = 0.0;
    double current_a = 0.0;
    double power_w = 0.0;
};

struct IvCurve {
    double irradiance_wm2 = 1000.0;
    double temperature_c = 25.0;
    std::vector<OperatingPoint> points;
};

// Solves the 5-parameter system against the datasheet: I(0)=Isc,
// I(Voc)=0, I(Vmp)=Imp, dP/dV=0 at Vmp, with the ideality factor fixed
// at 1.3 and re-scanned only if the residual checks fail.
SingleDiodeParams extract_parameters(const PvDatasheet& sheet);

// Reference params moved to (irradiance, temperature).
SingleDiodeParams translate_conditions(const SingleDiodeParams& params,
                                       const PvDatasheet& sheet,
                                       double irradiance_wm2, double temperature_c);

// Implicit-equation solve at one voltage; bracketed regula-falsi,
// residual below 1e-10 A.
double current_at(const SingleDiodeParams& params, double voltage_v);

// V where I(V) = 0 for the given params.
double open_circuit_voltage(const SingleDiodeParams& params);

// Maximum power point by golden-section search on [0, Voc].
OperatingPoint mpp(const SingleDiodeParams& params);

// Translate-then-search convenience; (0, 0, 0) for a dark module.
OperatingPoint mpp_at(const SingleDiodeParams& reference, const PvDatasheet& sheet,
                      double irradiance_wm2, double temperature_c);

// I-V curve at uniformly spaced voltages from 0 to Voc. The parallel
// variant is the default; the serial one is the reference kept for
// testing and benchmarking.
IvCurve sweep(const SingleDiodeParams& reference, const PvDatasheet& sheet,
              double irradiance_wm2, double temperature_c, int point_count);
IvCurve sweep_serial(const SingleDiodeParams& reference, const PvDatasheet& sheet,
                     double irradiance_wm2, double temperature_c, int point_count);

}  // namespace composter::pv

#endif
