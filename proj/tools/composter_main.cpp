#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "composter/config.hpp"
#include "composter/errors.hpp"
#include "composter/report.hpp"

namespace {

using namespace composter;

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitUsage = 2;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// write-then-rename so readers never see a partial file
void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

std::string curve_csv(const pv::IvCurve& curve) {
    std::string csv = "voltage_V,current_A,power_W\n";
    for (const auto& p : curve.points) {
        csv += format_number(p.voltage_v) + "," + format_number(p.current_a) + "," +
               format_number(p.power_w) + "\n";
    }
    return csv;
}

std::string trace_csv(const sim::SimTrace& trace) {
    std::string csv = "t_s,irradiance_wm2,pv_w,load_w,net_w,soc,motor_rpm,drum_rpm\n";
    for (const auto& r : trace.records) {
        csv += format_number(r.t_s) + "," + format_number(r.irradiance_wm2) + "," +
               format_number(r.pv_power_w) + "," + format_number(r.load_power_w) + "," +
               format_number(r.net_power_w) + "," + format_number(r.state_of_charge) +
               "," + format_number(r.motor_speed_rpm) + "," +
               format_number(r.drum_speed_rpm) + "\n";
    }
    return csv;
}

int cmd_size(const cfg::ToolConfig& config, const std::string& out_path) {
    const auto rep = report::build_report(config);
    const std::string body = report::to_json(rep);
    if (out_path.empty())
        std::cout << body;
    else
        write_atomic(out_path, body);
    for (const auto& f : rep.flags)
        std::cerr << "flag " << f.code << ": " << f.message << "\n";
    return kExitOk;
}

int cmd_pv_curve(const cfg::ToolConfig& config, double irradiance, double temperature,
                 int points, const std::string& out_path) {
    const auto params = pv::extract_parameters(config.pv_datasheet);
    const auto curve =
        pv::sweep(params, config.pv_datasheet, irradiance, temperature, points);
    const auto point = pv::mpp_at(params, config.pv_datasheet, irradiance, temperature);
    if (out_path.empty())
        std::cout << curve_csv(curve);
    else
        write_atomic(out_path, curve_csv(curve));
    std::cout << "mpp: V=" << format_number(point.voltage_v)
              << " I=" << format_number(point.current_a)
              << " P=" << format_number(point.power_w) << "\n";
    return kExitOk;
}

int cmd_simulate(const cfg::ToolConfig& config, double horizon_h, double dt_s,
                 const std::string& scenario, const std::string& out_path) {
    const auto sc =
        scenario == "blackout" ? sim::Scenario::blackout : sim::Scenario::clear_days;
    auto sim_config = cfg::build_sim_config(config);
    if (dt_s >= 60.0) sim_config.coarse = true;
    const auto trace = sim::simulate(sim_config, horizon_h * 3600.0, dt_s, sc);
    if (out_path.empty())
        std::cout << trace_csv(trace);
    else
        write_atomic(out_path, trace_csv(trace));

    nlohmann::json summary = {
        {"min_soc", trace.min_soc},
        {"max_soc", trace.max_soc},
        {"final_soc", trace.records.back().state_of_charge},
        {"final_drum_speed_rpm", trace.records.back().drum_speed_rpm},
        {"pv_energy_wh", trace.pv_energy_wh},
        {"load_energy_wh", trace.load_energy_wh},
    };
    if (sc == sim::Scenario::blackout) {
        summary["autonomy"] = {
            {"pass", trace.min_soc >= sim_config.battery.soc_floor},
            {"min_soc", trace.min_soc},
        };
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sizing and simulation toolkit for a solar rotary drum composter"};
    app.require_subcommand(1);

    std::string config_path;
    bool paper_faithful = false;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_flag("--paper-faithful", paper_faithful,
                 "evaluate the verbatim output-power equation and flag it");

    auto* size = app.add_subcommand("size", "drivetrain and PV sizing report (JSON)");
    std::string size_out;
    size->add_option("--out", size_out, "report path (stdout if omitted)");

    auto* curve = app.add_subcommand("pv-curve", "I-V curve sweep (CSV)");
    double irradiance = 1000.0, temperature = 25.0;
    int points = 200;
    std::string curve_out;
    curve->add_option("--irradiance", irradiance, "W/m2");
    curve->add_option("--temperature", temperature, "degC");
    curve->add_option("--points", points, "sweep points (>= 2)");
    curve->add_option("--out", curve_out, "CSV path (stdout if omitted)");

    auto* simulate = app.add_subcommand("simulate", "time-stepped system run (CSV trace)");
    double horizon_h = 24.0, dt_s = 1.0;
    std::string scenario = "clear-days", sim_out;
    simulate->add_option("--horizon", horizon_h, "hours");
    simulate->add_option("--dt", dt_s, "step seconds");
    simulate->add_option("--scenario", scenario, "clear-days | blackout")
        ->check(CLI::IsMember({"clear-days", "blackout"}));
    simulate->add_option("--out", sim_out, "CSV path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg::ToolConfig config =
            config_path.empty() ? cfg::ToolConfig{} : cfg::parse_config(config_path);
        config.paper_faithful = config.paper_faithful || paper_faithful;

        if (size->parsed()) return cmd_size(config, size_out);
        if (curve->parsed()) {
            if (points < 2) {
                std::cerr << "error: --points must be >= 2\n";
                return kExitUsage;
            }
            return cmd_pv_curve(config, irradiance, temperature, points, curve_out);
        }
        if (simulate->parsed()) {
            if (dt_s <= 0 || horizon_h <= 0) {
                std::cerr << "error: --dt and --horizon must be > 0\n";
                return kExitUsage;
            }
            return cmd_simulate(config, horizon_h, dt_s, scenario, sim_out);
        }
    } catch (const composter::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const composter::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitUsage;
}
