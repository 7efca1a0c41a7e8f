#include "composter/pv_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "composter/errors.hpp"

namespace composter::pv {

namespace {

constexpr double kBoltzmann = 1.380649e-23;      // J/K
constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kBandGapEv = 1.121;             // silicon
constexpr double kCelsiusToKelvin = 273.15;

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidInput(msg);
}

// Bracketed regula-falsi with Illinois weighting; falls back to
// bisection stalls. The bracket must straddle the root.
double illinois(const std::function<double(double)>& f, double a, double b,
                double fa, double fb, double xtol, double ftol, int max_iter = 200) {
    for (int i = 0; i < max_iter; ++i) {
        const double x = (fa * b - fb * a) / (fa - fb);
        const double fx = f(x);
        if (std::abs(fx) <= ftol || std::abs(b - a) <= xtol) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
            fb *= 0.5;
        } else {
            b = x;
            fb = fx;
            fa *= 0.5;
        }
    }
    throw NumericFailure("regula-falsi did not converge");
}

double solve_bracketed(const std::function<double(double)>& f, double a, double b,
                       double xtol, double ftol) {
    double fa = f(a);
    double fb = f(b);
    if (std::abs(fa) <= ftol) return a;
    if (std::abs(fb) <= ftol) return b;
    if ((fa > 0) == (fb > 0)) throw NumericFailure("root not bracketed");
    return illinois(f, a, b, fa, fb, xtol, ftol);
}

// Diode-equation residual at a trial current.
double iv_residual(const SingleDiodeParams& p, double v, double i) {
    const double vt = p.thermal_voltage_v();
    const double vd = v + i * p.series_resistance_ohm;
    return p.photocurrent_a - p.saturation_current_a * std::expm1(vd / vt) -
           vd / p.shunt_resistance_ohm - i;
}

// dI/dV from implicit differentiation of the diode equation.
double iv_slope(const SingleDiodeParams& p, double v, double i) {
    const double vt = p.thermal_voltage_v();
    const double e = p.saturation_current_a / vt *
                     std::exp((v + i * p.series_resistance_ohm) / vt);
    const double rs = p.series_resistance_ohm;
    return -(e + 1.0 / p.shunt_resistance_ohm) /
           (1.0 + e * rs + rs / p.shunt_resistance_ohm);
}

}  // namespace

void PvDatasheet::validate() const {
    require(open_circuit_voltage_v > 0, "pv.open_circuit_voltage must be > 0");
    require(short_circuit_current_a > 0, "pv.short_circuit_current must be > 0");
    require(mpp_voltage_v > 0 && mpp_voltage_v < open_circuit_voltage_v,
            "pv.mpp_voltage must be in (0, Voc)");
    require(mpp_current_a > 0 && mpp_current_a < short_circuit_current_a,
            "pv.mpp_current must be in (0, Isc)");
    require(series_cells >= 1, "pv.series_cells must be >= 1");
    require(reference_irradiance_wm2 > 0, "pv.reference_irradiance must be > 0");
}

double SingleDiodeParams::thermal_voltage_v() const {
    const double t_k = temperature_c + kCelsiusToKelvin;
    return ideality * series_cells * kBoltzmann * t_k / kElementaryCharge;
}

double current_at(const SingleDiodeParams& params, double voltage_v) {
    const double scale = std::max(params.photocurrent_a, 1e-6);
    double lo = -0.1 * scale;
    double hi = 1.1 * scale;
    auto f = [&](double i) { return iv_residual(params, voltage_v, i); };
    // widen if the operating point sits outside the nominal bracket
    for (int grow = 0; grow < 8 && (f(lo) > 0) == (f(hi) > 0); ++grow) {
        lo -= scale;
        hi += 0.5 * scale;
    }
    return solve_bracketed(f, lo, hi, 0.0, 1e-12);
}

double open_circuit_voltage(const SingleDiodeParams& params) {
    // at I = 0 the series resistance drops out
    const double vt = params.thermal_voltage_v();
    auto f = [&](double v) {
        return params.photocurrent_a - params.saturation_current_a * std::expm1(v / vt) -
               v / params.shunt_resistance_ohm;
    };
    double hi = vt;
    while (f(hi) > 0) hi *= 2.0;
    return solve_bracketed(f, 0.0, hi, 1e-12, 0.0);
}

namespace {

// Inner pieces of the extraction: with (n, Rs, Rsh) fixed, I0 and Iph
// follow in closed form from the short-circuit and open-circuit points.
struct ExtractionCtx {
    const PvDatasheet& sheet;
    double vt;  // module thermal voltage at the reference temperature

    double i0(double rs, double rsh) const {
        const double isc = sheet.short_circuit_current_a;
        const double voc = sheet.open_circuit_voltage_v;
        return (isc * (1.0 + rs / rsh) - voc / rsh) /
               (std::exp(voc / vt) - std::exp(isc * rs / vt));
    }
    double iph(double rs, double rsh) const {
        const double isc = sheet.short_circuit_current_a;
        return isc * (1.0 + rs / rsh) + i0(rs, rsh) * std::expm1(isc * rs / vt);
    }
    // current residual at the datasheet MPP
    double mpp_current_residual(double rs, double rsh) const {
        const double vmp = sheet.mpp_voltage_v;
        const double imp = sheet.mpp_current_a;
        const double vd = vmp + imp * rs;
        return iph(rs, rsh) - i0(rs, rsh) * std::expm1(vd / vt) - vd / rsh - imp;
    }
};

}  // namespace

SingleDiodeParams extract_parameters(const PvDatasheet& sheet) {
    sheet.validate();

    const double voc = sheet.open_circuit_voltage_v;
    const double isc = sheet.short_circuit_current_a;
    const double vmp = sheet.mpp_voltage_v;
    const double imp = sheet.mpp_current_a;
    const double t_k = sheet.reference_temperature_c + kCelsiusToKelvin;

    auto try_ideality = [&](double n, SingleDiodeParams& out) -> bool {
        const double vt = n * sheet.series_cells * kBoltzmann * t_k / kElementaryCharge;
        ExtractionCtx ctx{sheet, vt};

        // for a given Rs, close the MPP current equation with Rsh, then
        // report the dP/dV residual at the MPP
        auto deriv_residual = [&](double rs, double& rsh_out) -> double {
            auto h = [&](double rsh) { return ctx.mpp_current_residual(rs, rsh); };
            // scan for a sign change in Rsh
            double lo = rs + 1e-6, hi = lo;
            double flo = h(lo);
            bool found = false;
            for (double cand = 1.0; cand <= 1e8; cand *= 2.0) {
                if (cand <= lo) continue;
                const double fc = h(cand);
                if ((flo > 0) != (fc > 0)) {
                    hi = cand;
                    found = true;
                    break;
                }
                lo = cand;
                flo = fc;
            }
            if (!found) throw NumericFailure("no shunt resistance closes the MPP point");
            const double rsh = solve_bracketed(h, lo, hi, 1e-10, 0.0);
            rsh_out = rsh;

            SingleDiodeParams p;
            p.photocurrent_a = ctx.iph(rs, rsh);
            p.saturation_current_a = ctx.i0(rs, rsh);
            p.ideality = n;
            p.series_resistance_ohm = rs;
            p.shunt_resistance_ohm = rsh;
            p.series_cells = sheet.series_cells;
            p.temperature_c = sheet.reference_temperature_c;
            return imp + vmp * iv_slope(p, vmp, imp);
        };

        // scan Rs on [~0, (Voc - Vmp)/Imp] for a sign change of the
        // derivative residual
        const double rs_max = (voc - vmp) / imp;
        const int scan = 64;
        double prev_rs = 1e-9, rsh_tmp = 0.0;
        double prev_f;
        try {
            prev_f = deriv_residual(prev_rs, rsh_tmp);
        } catch (const NumericFailure&) {
            return false;
        }
        for (int k = 1; k <= scan; ++k) {
            const double rs = rs_max * k / scan;
            double f;
            try {
                f = deriv_residual(rs, rsh_tmp);
            } catch (const NumericFailure&) {
                break;
            }
            if ((prev_f > 0) != (f > 0)) {
                double rsh_final = 0.0;
                auto g = [&](double x) { return deriv_residual(x, rsh_final); };
                const double rs_root = solve_bracketed(g, prev_rs, rs, 1e-12, 0.0);
                g(rs_root);  // refresh rsh_final at the root
                out.photocurrent_a = ctx.iph(rs_root, rsh_final);
                out.saturation_current_a = ctx.i0(rs_root, rsh_final);
                out.ideality = n;
                out.series_resistance_ohm = rs_root;
                out.shunt_resistance_ohm = rsh_final;
                out.series_cells = sheet.series_cells;
                out.temperature_c = sheet.reference_temperature_c;
                return out.saturation_current_a > 0 && out.photocurrent_a > 0 &&
                       out.shunt_resistance_ohm > out.series_resistance_ohm;
            }
            prev_rs = rs;
            prev_f = f;
        }
        return false;
    };

    auto residuals_ok = [&](const SingleDiodeParams& p, double& worst) -> bool {
        const double r_isc = std::abs(current_at(p, 0.0) - isc) / isc;
        const double r_voc = std::abs(current_at(p, voc)) / isc;
        const double r_imp = std::abs(current_at(p, vmp) - imp) / imp;
        const double r_dpdv =
            std::abs(imp + vmp * iv_slope(p, vmp, imp)) / imp;
        worst = std::max({r_isc, r_voc, r_imp, r_dpdv});
        return worst < 1e-6;
    };

    SingleDiodeParams params;
    double worst = 0.0;
    if (try_ideality(1.3, params) && residuals_ok(params, worst)) return params;
    for (double n = 0.8; n <= 2.5 + 1e-9; n += 0.05) {
        if (try_ideality(n, params) && residuals_ok(params, worst)) return params;
    }
    std::ostringstream msg;
    msg << "single-diode extraction failed; worst residual " << worst
        << " for datasheet Voc=" << voc << " Isc=" << isc << " Vmp=" << vmp
        << " Imp=" << imp;
    throw ExtractionFailure(msg.str());
}

SingleDiodeParams translate_conditions(const SingleDiodeParams& params,
                                       const PvDatasheet& sheet,
                                       double irradiance_wm2, double temperature_c) {
    require(irradiance_wm2 >= 0, "irradiance must be >= 0");

    const double g_ref = sheet.reference_irradiance_wm2;
    const double t_ref_k = sheet.reference_temperature_c + kCelsiusToKelvin;
    const double t_k = temperature_c + kCelsiusToKelvin;
    const double dt = temperature_c - sheet.reference_temperature_c;

    SingleDiodeParams out = params;
    out.temperature_c = temperature_c;
    out.photocurrent_a = params.photocurrent_a * (irradiance_wm2 / g_ref) *
                         (1.0 + sheet.temp_coeff_isc_per_c * dt);
    // cubic temperature law with the band-gap exponential; the ideality
    // factor divides the exponent per the module-level diode term
    const double eg_over_nk =
        kBandGapEv * kElementaryCharge / (params.ideality * kBoltzmann);
    out.saturation_current_a = params.saturation_current_a *
                               std::pow(t_k / t_ref_k, 3.0) *
                               std::exp(eg_over_nk * (1.0 / t_ref_k - 1.0 / t_k));
    if (irradiance_wm2 > 0)
        out.shunt_resistance_ohm = params.shunt_resistance_ohm * g_ref / irradiance_wm2;
    return out;
}

OperatingPoint mpp(const SingleDiodeParams& params) {
    if (params.photocurrent_a <= 0.0) return {0.0, 0.0, 0.0};

    const double voc = open_circuit_voltage(params);
    auto power = [&](double v) { return v * current_at(params, v); };

    // golden-section search; P(V) is unimodal on [0, Voc]
    constexpr double kInvPhi = 0.6180339887498949;
    double a = 0.0, b = voc;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double pc = power(c), pd = power(d);
    while (b - a > 1e-5) {
        if (pc > pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - kInvPhi * (b - a);
            pc = power(c);
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + kInvPhi * (b - a);
            pd = power(d);
        }
    }
    const double v = 0.5 * (a + b);
    const double i = current_at(params, v);
    return {v, i, v * i};
}

OperatingPoint mpp_at(const SingleDiodeParams& reference, const PvDatasheet& sheet,
                      double irradiance_wm2, double temperature_c) {
    if (irradiance_wm2 <= 0.0) return {0.0, 0.0, 0.0};
    return mpp(translate_conditions(reference, sheet, irradiance_wm2, temperature_c));
}

namespace {

IvCurve sweep_impl(const SingleDiodeParams& reference, const PvDatasheet& sheet,
                   double irradiance_wm2, double temperature_c, int point_count,
                   bool parallel) {
    if (point_count < 2) throw InvalidInput("sweep needs at least 2 points");

    const SingleDiodeParams p =
        translate_conditions(reference, sheet, irradiance_wm2, temperature_c);
    IvCurve curve;
    curve.irradiance_wm2 = irradiance_wm2;
    curve.temperature_c = temperature_c;
    curve.points.resize(point_count);

    const double voc = p.photocurrent_a > 0 ? open_circuit_voltage(p) : 0.0;
    const double step = voc / (point_count - 1);
    auto* pts = curve.points.data();

#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < point_count; ++k) {
        const double v = k * step;
        const double i = p.photocurrent_a > 0 ? current_at(p, v) : 0.0;
        pts[k] = {v, i, v * i};
    }
    return curve;
}

}  // namespace

IvCurve sweep(const SingleDiodeParams& reference, const PvDatasheet& sheet,
              double irradiance_wm2, double temperature_c, int point_count) {
    return sweep_impl(reference, sheet, irradiance_wm2, temperature_c, point_count, true);
}

IvCurve sweep_serial(const SingleDiodeParams& reference, const PvDatasheet& sheet,
                     double irradiance_wm2, double temperature_c, int point_count) {
    return sweep_impl(reference, sheet, irradiance_wm2, temperature_c, point_count, false);
}

}  // namespace composter::pv
