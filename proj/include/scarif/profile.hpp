#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scarif/model.hpp"

namespace scarif {

/// Reference CPU used to derive K6: its modeled CPU part over its chip carbon.
struct CpuChipAnchor {
    int cpu_cores = 56;
    AcceleratorSpec chip{"Xeon 8180", 694.0, 14, std::nullopt};
};

/// A named set of coefficients, chip-carbon table and K6 anchor. K6 is always
/// derived from the anchor, never stored.
struct CalibrationProfile {
    std::string name;
    ModelCoefficients coefficients;
    ChipCarbonTable chip_carbon;
    CpuChipAnchor k6_anchor;

    double k6() const;
    void validate() const;
};

/// "paper-eq3": d = -1100 with Dell -400 / Lenovo -900 offsets.
CalibrationProfile paper_eq3_profile();

/// "paper-R740": same slopes and offsets, d = 600, which puts the R740
/// reference server (Dell effective intercept +200) at 1993.72 kgCO2e.
CalibrationProfile paper_r740_profile();

std::vector<std::string> builtin_profile_names();

/// Throws ConfigError listing the available names when `name` is unknown.
CalibrationProfile builtin_profile(std::string_view name);

}  // namespace scarif
