#pragma once

// JSON readers/writers for calibration profiles and scenario files. Every
// parse failure surfaces as ConfigError naming the offending key.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scarif/model.hpp"
#include "scarif/profile.hpp"
#include "scarif/scenario.hpp"

namespace scarif {

inline constexpr int kSchemaVersion = 1;

nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json profile_to_json(const CalibrationProfile& profile);
CalibrationProfile profile_from_json(const nlohmann::json& j, std::string fallback_name);
CalibrationProfile load_profile(const std::filesystem::path& path);
void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path);

/// A built-in profile name, or else a path to a profile file.
CalibrationProfile resolve_profile(std::string_view name_or_path);

ServerConfig server_from_json(const nlohmann::json& j);
nlohmann::json server_to_json(const ServerConfig& config);
/// Entries may carry "count" to repeat an accelerator.
std::vector<AcceleratorSpec> accelerators_from_json(const nlohmann::json& j);
DevicePowerProfile device_from_json(const nlohmann::json& j);

struct EstimateInput {
    ServerConfig server;
    std::vector<AcceleratorSpec> accelerators;
};
EstimateInput estimate_input_from_json(const nlohmann::json& j);

struct UpgradeSystem {
    DevicePowerProfile device;
    double host_static_power_w = 0.0;
    double utilization = 1.0;
    double annual_kwh = 0.0;
    double embodied_kg = 0.0;  // new system only
};

struct BreakevenScenario {
    UpgradeSystem old_system;
    UpgradeSystem new_system;
    BreakevenInput input;
    std::vector<std::string> regions;
    CarbonIntensityTable intensities;
};

/// The profile prices the new system when it is given as server + accelerators.
BreakevenScenario breakeven_scenario_from_json(const nlohmann::json& j, const CalibrationProfile& profile);

struct FleetScenario {
    std::vector<FleetCandidate> candidates;
    FleetOptions options;
    CarbonIntensityTable intensities;
};
FleetScenario fleet_scenario_from_json(const nlohmann::json& j);

/// Adds the optional "intensities" object of a scenario to the default table.
CarbonIntensityTable intensities_from_json(const nlohmann::json& scenario);

nlohmann::json breakdown_to_json(const EmbodiedBreakdown& b);

}  // namespace scarif
