#pragma once

// Operational carbon and the two decision analyses built on it: whether an
// upgrade pays back its embodied carbon, and which accelerator fleet serves a
// workload with the least total carbon.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scarif/model.hpp"
#include "scarif/profile.hpp"

namespace scarif {

inline constexpr double kHoursPerYear = 8760.0;

struct DevicePowerProfile {
    std::string name;
    double latency_ms = 0.0;       // per inference
    double dynamic_power_w = 0.0;  // at full activity
    double static_power_w = 0.0;   // idle

    void validate() const;
};

/// Measured DeiT-T inference profiles. CPU latency is single-core; CPU power
/// was measured across all 28 (8180) or 32 (8375) cores, so the `_core`
/// variants divide it evenly.
namespace devices {
DevicePowerProfile xeon_8180();       // whole socket: 217.98 ms single-core, 205 W / 10 W
DevicePowerProfile xeon_8375();       // whole socket: 176.68 ms single-core, 300 W / 10 W
DevicePowerProfile xeon_8180_core();  // 217.98 ms, 205/28 W, 10/28 W
DevicePowerProfile xeon_8375_core();  // 176.68 ms, 300/32 W, 10/32 W
DevicePowerProfile v100();
DevicePowerProfile a100();
DevicePowerProfile zcu102();

std::vector<DevicePowerProfile> all();
/// Case-insensitive lookup by name; throws ConfigError listing known names.
DevicePowerProfile by_name(std::string_view name);
}  // namespace devices

struct SystemProfile {
    double embodied_kg = 0.0;
    DevicePowerProfile accelerator;
    double host_static_power_w = 0.0;  // e.g. 2 CPUs x 10 W
    double utilization = 1.0;

    void validate() const;
};

class CarbonIntensityTable {
public:
    CarbonIntensityTable() = default;

    /// AZ 0.395, CA 0.234, TX 0.438, NY 0.188 kgCO2e/kWh.
    static CarbonIntensityTable defaults();

    double intensity(std::string_view region) const;
    bool contains(std::string_view region) const;
    void set(const std::string& region, double kg_per_kwh);
    const std::map<std::string, double>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, double> entries_;
};

/// Utilization of the new system when it absorbs the old system's task rate.
double normalize_utilization(double latency_old_ms, double latency_new_ms, double utilization_old);

double annual_energy_kwh(const SystemProfile& profile);

double operational_carbon(double energy_kwh, std::string_view region, const CarbonIntensityTable& table);

struct CurvePoint {
    double years = 0.0;
    double saving_kg = 0.0;
};

struct BreakevenInput {
    double new_embodied_kg = 0.0;
    double old_annual_kwh = 0.0;
    double new_annual_kwh = 0.0;
    double horizon_years = 10.0;
    double step_years = 0.5;
};

struct BreakevenCurve {
    std::string region;
    double intensity = 0.0;
    std::vector<CurvePoint> points;
    std::optional<double> payback_years;    // nullopt: the new system never pays back
    std::optional<double> breakeven_years;  // payback_years clipped to the horizon

    double saving_at(double years) const noexcept;

private:
    friend BreakevenCurve breakeven(const BreakevenInput&, std::string_view, const CarbonIntensityTable&);
    double slope_ = 0.0;
    double offset_ = 0.0;
};

/// The old system's embodied carbon is sunk; only the new system is charged at t = 0.
BreakevenCurve breakeven(const BreakevenInput& input, std::string_view region, const CarbonIntensityTable& table);

/// One curve per region, in the order given.
std::vector<BreakevenCurve> breakeven_sweep(const BreakevenInput& input,
                                            std::span<const std::string> regions,
                                            const CarbonIntensityTable& table);

struct FleetCandidate {
    std::string name;
    ServerConfig server;
    std::vector<AcceleratorSpec> accelerators;
    DevicePowerProfile device;      // the unit doing the work (accelerator, or one CPU core)
    int devices_per_server = 1;
    double host_static_power_w = 0.0;
};

struct FleetOptions {
    double workload_tasks_per_s = 1000.0;
    std::string region = "TX";
    double lifetime_years = 4.0;
    bool integer_servers = false;
};

struct FleetResult {
    std::string name;
    std::size_t input_index = 0;
    double tasks_per_s_per_server = 0.0;
    double servers_needed = 0.0;
    double embodied_kg_per_server = 0.0;
    double annual_kwh_per_server = 0.0;
    double embodied_kg = 0.0;     // fleet
    double operational_kg = 0.0;  // fleet, over the lifetime
    double total_kg = 0.0;
};

/// Every device runs at 100% utilization; servers scale fractionally unless
/// `integer_servers`. Returns results ranked by total ascending (ties keep
/// input order).
std::vector<FleetResult> fleet_compare(std::span<const FleetCandidate> candidates,
                                       const FleetOptions& options,
                                       const CalibrationProfile& profile,
                                       const CarbonIntensityTable& table);

}  // namespace scarif
