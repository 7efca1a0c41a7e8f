#ifndef COMPOSTER_REPORT_HPP
#define COMPOSTER_REPORT_HPP

#include <string>
#include <vector>

#include "composter/config.hpp"

namespace composter::report {

struct Flag {
    std::string code;
    std::string message;
};

struct DesignReport {
    drivetrain::DrivetrainDesign design;
    energy::SizingChain rated;
    energy::SizingChain load;
    double chain_output_power_w = 0.0;  // P_u through the transmission
    std::vector<Flag> flags;

    bool has_flag(const std::string& code) const;
};

// Runs the drivetrain and both sizing chains and collects every
// discrepancy flag. paper_faithful switches the transmission output
// power to the verbatim division form.
DesignReport build_report(const cfg::ToolConfig& config);

// JSON rendering with locale-independent number formatting.
std::string to_json(const DesignReport& report);

}  // namespace composter::report

#endif
