#include "scarif/profile.hpp"

namespace scarif {

double CalibrationProfile::k6() const {
    return k6_calibrate(cpu_part(k6_anchor.cpu_cores, coefficients), chip_embodied(k6_anchor.chip, chip_carbon));
}

void CalibrationProfile::validate() const {
    coefficients.validate();
    if (chip_carbon.entries().empty() && !k6_anchor.chip.chip_carbon_kg) {
        throw ConfigError("profile '" + name + "' has an empty chip carbon table");
    }
    (void)k6();
}

CalibrationProfile paper_eq3_profile() {
    CalibrationProfile p;
    p.name = "paper-eq3";
    p.coefficients = ModelCoefficients::paper();
    p.chip_carbon = ChipCarbonTable::anchored_default();
    return p;
}

CalibrationProfile paper_r740_profile() {
    CalibrationProfile p = paper_eq3_profile();
    p.name = "paper-R740";
    // 1700 above d = -1100, the gap between the reported R740 total and the
    // uncalibrated model.
    p.coefficients.d = 600.0;
    return p;
}

std::vector<std::string> builtin_profile_names() { return {"paper-eq3", "paper-R740"}; }

CalibrationProfile builtin_profile(std::string_view name) {
    if (name == "paper-eq3") return paper_eq3_profile();
    if (name == "paper-R740") return paper_r740_profile();
    std::string msg = "unknown profile '" + std::string(name) + "'; available profiles:";
    for (const auto& n : builtin_profile_names()) msg += " " + n;
    msg += " (or a path to a profile JSON file)";
    throw ConfigError(msg);
}

}  // namespace scarif
