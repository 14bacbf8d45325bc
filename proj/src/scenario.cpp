#include "scarif/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace scarif {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return std::ranges::equal(a, b, [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void DevicePowerProfile::validate() const {
    if (!(latency_ms > 0.0) || !std::isfinite(latency_ms)) throw InvalidInput(name + ": latency_ms must be > 0");
    if (!finite_non_negative(static_power_w)) throw InvalidInput(name + ": static_power_w must be >= 0");
    if (!std::isfinite(dynamic_power_w) || dynamic_power_w < static_power_w) {
        throw InvalidInput(name + ": dynamic_power_w must be >= static_power_w");
    }
}

namespace devices {

DevicePowerProfile xeon_8180() { return {"Xeon 8180", 217.98, 205.0, 10.0}; }
DevicePowerProfile xeon_8375() { return {"Xeon 8375", 176.68, 300.0, 10.0}; }
DevicePowerProfile xeon_8180_core() { return {"Xeon 8180 core", 217.98, 205.0 / 28.0, 10.0 / 28.0}; }
DevicePowerProfile xeon_8375_core() { return {"Xeon 8375 core", 176.68, 300.0 / 32.0, 10.0 / 32.0}; }
DevicePowerProfile v100() { return {"V100", 2.96, 250.0, 39.0}; }
DevicePowerProfile a100() { return {"A100", 1.84, 175.0, 53.0}; }
DevicePowerProfile zcu102() { return {"ZCU102", 32.72, 25.0, 1.0}; }

std::vector<DevicePowerProfile> all() {
    return {xeon_8180(), xeon_8375(), xeon_8180_core(), xeon_8375_core(), v100(), a100(), zcu102()};
}

DevicePowerProfile by_name(std::string_view name) {
    std::string known;
    for (auto& d : all()) {
        if (iequals(d.name, name)) return d;
        known += (known.empty() ? "" : ", ") + d.name;
    }
    throw ConfigError("unknown device '" + std::string(name) + "'; known devices: " + known);
}

}  // namespace devices

void SystemProfile::validate() const {
    accelerator.validate();
    if (!(utilization >= 0.0 && utilization <= 1.0)) throw InvalidInput("utilization must be within [0, 1]");
    if (!finite_non_negative(host_static_power_w)) throw InvalidInput("host_static_power_w must be >= 0");
}

CarbonIntensityTable CarbonIntensityTable::defaults() {
    CarbonIntensityTable t;
    t.set("AZ", 0.395);
    t.set("CA", 0.234);
    t.set("TX", 0.438);
    t.set("NY", 0.188);
    return t;
}

double CarbonIntensityTable::intensity(std::string_view region) const {
    auto it = entries_.find(std::string(region));
    if (it == entries_.end()) {
        std::string known;
        for (const auto& [name, _] : entries_) known += (known.empty() ? "" : ", ") + name;
        throw MissingRegion("unknown region '" + std::string(region) + "'; known regions: " + known);
    }
    return it->second;
}

bool CarbonIntensityTable::contains(std::string_view region) const {
    return entries_.contains(std::string(region));
}

void CarbonIntensityTable::set(const std::string& region, double kg_per_kwh) {
    if (region.empty()) throw InvalidInput("region name must not be empty");
    if (!(kg_per_kwh > 0.0) || !std::isfinite(kg_per_kwh)) {
        throw InvalidInput("carbon intensity for " + region + " must be > 0");
    }
    entries_[region] = kg_per_kwh;
}

double normalize_utilization(double latency_old_ms, double latency_new_ms, double utilization_old) {
    if (!(latency_old_ms > 0.0) || !(latency_new_ms > 0.0)) throw InvalidInput("latencies must be > 0");
    if (!(utilization_old >= 0.0 && utilization_old <= 1.0)) throw InvalidInput("utilization must be within [0, 1]");
    const double util = utilization_old * latency_new_ms / latency_old_ms;
    if (util > 1.0) {
        throw CapacityExceeded("normalized utilization " + std::to_string(util) +
                               " exceeds 1; scale the number of servers instead");
    }
    return util;
}

double annual_energy_kwh(const SystemProfile& profile) {
    profile.validate();
    const auto& acc = profile.accelerator;
    const double watts = profile.utilization * acc.dynamic_power_w +
                         (1.0 - profile.utilization) * acc.static_power_w + profile.host_static_power_w;
    return watts * kHoursPerYear / 1000.0;
}

double operational_carbon(double energy_kwh, std::string_view region, const CarbonIntensityTable& table) {
    if (!finite_non_negative(energy_kwh)) throw InvalidInput("energy must be >= 0");
    return energy_kwh * table.intensity(region);
}

double BreakevenCurve::saving_at(double years) const noexcept { return offset_ + slope_ * years; }

BreakevenCurve breakeven(const BreakevenInput& input, std::string_view region, const CarbonIntensityTable& table) {
    if (!finite_non_negative(input.new_embodied_kg)) throw InvalidInput("new embodied carbon must be >= 0");
    if (!finite_non_negative(input.old_annual_kwh) || !finite_non_negative(input.new_annual_kwh)) {
        throw InvalidInput("annual energy must be >= 0");
    }
    if (!(input.horizon_years > 0.0) || !std::isfinite(input.horizon_years)) {
        throw InvalidInput("horizon must be > 0 years");
    }
    if (!(input.step_years > 0.0) || !std::isfinite(input.step_years)) throw InvalidInput("step must be > 0 years");

    BreakevenCurve curve;
    curve.region = std::string(region);
    curve.intensity = table.intensity(region);
    const double delta_kwh = input.old_annual_kwh - input.new_annual_kwh;
    curve.offset_ = -input.new_embodied_kg;
    curve.slope_ = delta_kwh * curve.intensity;

    if (delta_kwh > 0.0) {
        curve.payback_years = input.new_embodied_kg / curve.slope_;
        if (*curve.payback_years <= input.horizon_years) curve.breakeven_years = curve.payback_years;
    }

    const auto steps = static_cast<std::size_t>(std::floor(input.horizon_years / input.step_years + 1e-9));
    curve.points.reserve(steps + 2);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * input.step_years;
        curve.points.push_back({t, curve.saving_at(t)});
    }
    if (curve.points.back().years < input.horizon_years) {
        curve.points.push_back({input.horizon_years, curve.saving_at(input.horizon_years)});
    }
    return curve;
}

std::vector<BreakevenCurve> breakeven_sweep(const BreakevenInput& input,
                                            std::span<const std::string> regions,
                                            const CarbonIntensityTable& table) {
    std::vector<BreakevenCurve> curves;
    curves.reserve(regions.size());
    for (const auto& region : regions) curves.push_back(breakeven(input, region, table));
    return curves;
}

std::vector<FleetResult> fleet_compare(std::span<const FleetCandidate> candidates,
                                       const FleetOptions& options,
                                       const CalibrationProfile& profile,
                                       const CarbonIntensityTable& table) {
    if (!(options.workload_tasks_per_s >= 0.0) || !std::isfinite(options.workload_tasks_per_s)) {
        throw InvalidInput("workload must be >= 0 tasks/s");
    }
    if (!finite_non_negative(options.lifetime_years)) throw InvalidInput("lifetime must be >= 0 years");
    const double intensity = table.intensity(options.region);
    const double k6 = profile.k6();

    std::vector<FleetResult> results;
    results.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        c.device.validate();
        if (c.devices_per_server < 1) {
            throw InvalidInput(c.name + ": candidate serves no tasks (devices_per_server < 1)");
        }
        if (!finite_non_negative(c.host_static_power_w)) throw InvalidInput(c.name + ": host static power must be >= 0");

        FleetResult r;
        r.name = c.name;
        r.input_index = i;
        r.tasks_per_s_per_server = c.devices_per_server * (1000.0 / c.device.latency_ms);
        if (!(r.tasks_per_s_per_server > 0.0)) throw InvalidInput(c.name + ": candidate serves no tasks");
        r.servers_needed = options.workload_tasks_per_s / r.tasks_per_s_per_server;
        if (options.integer_servers) r.servers_needed = std::ceil(r.servers_needed);

        r.embodied_kg_per_server =
            embodied_system(c.server, c.accelerators, profile.coefficients, k6, profile.chip_carbon).total;
        const double watts = c.devices_per_server * c.device.dynamic_power_w + c.host_static_power_w;
        r.annual_kwh_per_server = watts * kHoursPerYear / 1000.0;

        r.embodied_kg = r.servers_needed * r.embodied_kg_per_server;
        r.operational_kg = r.servers_needed * r.annual_kwh_per_server * options.lifetime_years * intensity;
        r.total_kg = r.embodied_kg + r.operational_kg;
        results.push_back(std::move(r));
    }
    std::ranges::stable_sort(results, {}, &FleetResult::total_kg);
    return results;
}

}  // namespace scarif
