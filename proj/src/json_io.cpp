#include "scarif/json_io.hpp"

#include <charconv>
#include <fstream>

namespace scarif {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, std::string_view where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(std::string(where) + ": missing key '" + key + "'");
    }
    return j.at(key);
}

double get_number(const json& j, const char* key, std::string_view where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
    return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, std::string_view where) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_number(j, key, where);
}

int get_int(const json& j, const char* key, std::string_view where) {
    const json& v = require(j, key, where);
    if (!v.is_number_integer()) throw ConfigError(std::string(where) + "." + key + " must be an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const char* key, std::string_view where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) throw ConfigError(std::string(where) + "." + key + " must be a string");
    return v.get<std::string>();
}

void check_schema(const json& j, std::string_view where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
    if (j.contains("schema_version")) {
        const json& v = j.at("schema_version");
        if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
            throw ConfigError(std::string(where) + ": unsupported schema_version (expected " +
                              std::to_string(kSchemaVersion) + ")");
        }
    }
}

std::string vendor_key(Vendor v) {
    switch (v) {
        case Vendor::HP: return "hp";
        case Vendor::Dell: return "dell";
        case Vendor::Lenovo: return "lenovo";
        case Vendor::Generic: return "generic";
    }
    return "generic";
}

// Library validation errors raised while building scenario objects are
// configuration problems from the caller's point of view.
template <typename F>
auto as_config_error(std::string_view where, F&& f) {
    try {
        return f();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string(where) + ": " + e.what());
    }
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Profiles

json profile_to_json(const CalibrationProfile& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = p.name;
    const auto& c = p.coefficients;
    j["coefficients"] = {{"k1", c.k1}, {"k2", c.k2}, {"k3", c.k3}, {"k4", c.k4}, {"k5", c.k5}, {"d", c.d}};
    json offsets = json::object();
    for (Vendor v : {Vendor::HP, Vendor::Dell, Vendor::Lenovo}) {
        auto it = c.vendor_offsets.find(v);
        offsets[vendor_key(v)] = it == c.vendor_offsets.end() ? 0.0 : it->second;
    }
    if (auto it = c.vendor_offsets.find(Vendor::Generic); it != c.vendor_offsets.end() && it->second != 0.0) {
        offsets["generic"] = it->second;
    }
    j["vendor_offsets"] = offsets;
    json chip = json::object();
    for (const auto& [node, rate] : p.chip_carbon.entries()) chip[std::to_string(node)] = rate;
    j["chip_carbon"] = chip;
    const auto& a = p.k6_anchor;
    j["k6_anchor"] = {{"cpu_cores", a.cpu_cores},
                      {"name", a.chip.name},
                      {"die_area_mm2", a.chip.die_area_mm2},
                      {"node_nm", a.chip.node_nm}};
    if (a.chip.chip_carbon_kg) j["k6_anchor"]["chip_carbon_kg"] = *a.chip.chip_carbon_kg;
    return j;
}

CalibrationProfile profile_from_json(const json& j, std::string fallback_name) {
    check_schema(j, "profile");
    CalibrationProfile p;
    p.name = j.contains("name") ? get_string(j, "name", "profile") : std::move(fallback_name);

    const json& c = require(j, "coefficients", "profile");
    auto& k = p.coefficients;
    k.k1 = get_number(c, "k1", "coefficients");
    k.k2 = get_number(c, "k2", "coefficients");
    k.k3 = get_number(c, "k3", "coefficients");
    k.k4 = get_number(c, "k4", "coefficients");
    k.k5 = get_number(c, "k5", "coefficients");
    k.d = get_number(c, "d", "coefficients");

    if (j.contains("vendor_offsets")) {
        const json& o = j.at("vendor_offsets");
        if (!o.is_object()) throw ConfigError("vendor_offsets must be an object");
        for (const auto& [key, value] : o.items()) {
            Vendor v = as_config_error("vendor_offsets", [&] { return parse_vendor(key); });
            if (!value.is_number()) throw ConfigError("vendor_offsets." + key + " must be a number");
            k.vendor_offsets[v] = value.get<double>();
        }
    }

    if (j.contains("chip_carbon")) {
        const json& t = j.at("chip_carbon");
        if (!t.is_object()) throw ConfigError("chip_carbon must be an object");
        for (const auto& [key, value] : t.items()) {
            int node = 0;
            auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), node);
            if (ec != std::errc() || ptr != key.data() + key.size()) {
                throw ConfigError("chip_carbon key '" + key + "' is not an integer node size");
            }
            if (!value.is_number()) throw ConfigError("chip_carbon." + key + " must be a number");
            as_config_error("chip_carbon", [&] {
                p.chip_carbon.set(node, value.get<double>());
                return 0;
            });
        }
    } else {
        p.chip_carbon = ChipCarbonTable::anchored_default();
    }

    if (j.contains("k6_anchor")) {
        const json& a = j.at("k6_anchor");
        p.k6_anchor.cpu_cores = get_int(a, "cpu_cores", "k6_anchor");
        if (a.contains("name")) p.k6_anchor.chip.name = get_string(a, "name", "k6_anchor");
        p.k6_anchor.chip.die_area_mm2 = get_number(a, "die_area_mm2", "k6_anchor");
        p.k6_anchor.chip.node_nm = get_int(a, "node_nm", "k6_anchor");
        if (a.contains("chip_carbon_kg")) p.k6_anchor.chip.chip_carbon_kg = get_number(a, "chip_carbon_kg", "k6_anchor");
    }

    try {
        p.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("profile '" + p.name + "': " + e.what());
    }
    return p;
}

CalibrationProfile load_profile(const std::filesystem::path& path) {
    return profile_from_json(read_json_file(path), path.stem().string());
}

void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << profile_to_json(profile).dump(2) << '\n';
}

CalibrationProfile resolve_profile(std::string_view name_or_path) {
    for (const auto& name : builtin_profile_names()) {
        if (name == name_or_path) return builtin_profile(name);
    }
    std::filesystem::path path{std::string(name_or_path)};
    if (std::filesystem::is_regular_file(path)) return load_profile(path);
    return builtin_profile(name_or_path);  // throws with the list of names
}

// ---------------------------------------------------------------------------
// Scenario pieces

ServerConfig server_from_json(const json& j) {
    ServerConfig s;
    s.cpu_core_count = get_int(j, "cpu_cores", "server");
    s.ssd_gb = get_number_or(j, "ssd_gb", 0.0, "server");
    s.hdd_gb = get_number_or(j, "hdd_gb", 0.0, "server");
    s.memory_gb = get_number_or(j, "memory_gb", 0.0, "server");
    s.release_year = get_int(j, "release_year", "server");
    s.vendor = j.contains("vendor") ? as_config_error("server", [&] { return parse_vendor(get_string(j, "vendor", "server")); })
                                    : Vendor::Generic;
    as_config_error("server", [&] {
        s.validate();
        return 0;
    });
    return s;
}

json server_to_json(const ServerConfig& s) {
    return {{"cpu_cores", s.cpu_core_count}, {"ssd_gb", s.ssd_gb},       {"hdd_gb", s.hdd_gb},
            {"memory_gb", s.memory_gb},      {"release_year", s.release_year}, {"vendor", std::string(to_string(s.vendor))}};
}

std::vector<AcceleratorSpec> accelerators_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("accelerators must be an array");
    std::vector<AcceleratorSpec> out;
    for (const auto& a : j) {
        AcceleratorSpec spec;
        spec.name = get_string(a, "name", "accelerator");
        spec.die_area_mm2 = get_number_or(a, "die_area_mm2", 0.0, "accelerator");
        spec.node_nm = a.contains("node_nm") ? get_int(a, "node_nm", "accelerator") : 0;
        if (a.contains("chip_carbon_kg")) spec.chip_carbon_kg = get_number(a, "chip_carbon_kg", "accelerator");
        if (spec.die_area_mm2 < 0.0) throw ConfigError("accelerator " + spec.name + ": die_area_mm2 must be >= 0");
        if (!spec.chip_carbon_kg && spec.node_nm <= 0) {
            throw ConfigError("accelerator " + spec.name + ": needs node_nm or chip_carbon_kg");
        }
        const int count = a.contains("count") ? get_int(a, "count", "accelerator") : 1;
        if (count < 0) throw ConfigError("accelerator " + spec.name + ": count must be >= 0");
        for (int i = 0; i < count; ++i) out.push_back(spec);
    }
    return out;
}

DevicePowerProfile device_from_json(const json& j) {
    if (j.is_string()) return devices::by_name(j.get<std::string>());
    DevicePowerProfile d;
    d.name = get_string(j, "name", "device");
    d.latency_ms = get_number(j, "latency_ms", "device");
    d.dynamic_power_w = get_number(j, "dynamic_power_w", "device");
    d.static_power_w = get_number(j, "static_power_w", "device");
    as_config_error("device", [&] {
        d.validate();
        return 0;
    });
    return d;
}

EstimateInput estimate_input_from_json(const json& j) {
    check_schema(j, "estimate config");
    EstimateInput in;
    in.server = server_from_json(require(j, "server", "estimate config"));
    if (j.contains("accelerators")) in.accelerators = accelerators_from_json(j.at("accelerators"));
    return in;
}

CarbonIntensityTable intensities_from_json(const json& scenario) {
    CarbonIntensityTable table = CarbonIntensityTable::defaults();
    if (scenario.is_object() && scenario.contains("intensities")) {
        const json& m = scenario.at("intensities");
        if (!m.is_object()) throw ConfigError("intensities must be an object");
        for (const auto& [region, value] : m.items()) {
            if (!value.is_number()) throw ConfigError("intensities." + region + " must be a number");
            as_config_error("intensities", [&] {
                table.set(region, value.get<double>());
                return 0;
            });
        }
    }
    return table;
}

namespace {

UpgradeSystem upgrade_system_from_json(const json& j, const char* where) {
    UpgradeSystem s;
    if (j.contains("annual_kwh")) {
        s.annual_kwh = get_number(j, "annual_kwh", where);
        if (s.annual_kwh < 0.0) throw ConfigError(std::string(where) + ".annual_kwh must be >= 0");
        if (j.contains("device")) s.device = device_from_json(j.at("device"));
        return s;
    }
    s.device = device_from_json(require(j, "device", where));
    s.host_static_power_w = get_number_or(j, "host_static_power_w", 0.0, where);
    return s;
}

}  // namespace

BreakevenScenario breakeven_scenario_from_json(const json& j, const CalibrationProfile& profile) {
    check_schema(j, "breakeven scenario");
    BreakevenScenario sc;
    sc.intensities = intensities_from_json(j);

    const json& old_j = require(j, "old_system", "breakeven scenario");
    const json& new_j = require(j, "new_system", "breakeven scenario");
    sc.old_system = upgrade_system_from_json(old_j, "old_system");
    sc.new_system = upgrade_system_from_json(new_j, "new_system");

    if (!old_j.contains("annual_kwh")) {
        sc.old_system.utilization = get_number_or(old_j, "utilization", 1.0, "old_system");
        sc.old_system.annual_kwh = as_config_error("old_system", [&] {
            return annual_energy_kwh({0.0, sc.old_system.device, sc.old_system.host_static_power_w,
                                      sc.old_system.utilization});
        });
    }
    if (!new_j.contains("annual_kwh")) {
        const json* util = new_j.contains("utilization") ? &new_j.at("utilization") : nullptr;
        if (util && util->is_string()) {
            if (util->get<std::string>() != "normalized") {
                throw ConfigError("new_system.utilization must be a number or \"normalized\"");
            }
            sc.new_system.utilization = normalize_utilization(sc.old_system.device.latency_ms,
                                                              sc.new_system.device.latency_ms,
                                                              sc.old_system.utilization);
        } else {
            sc.new_system.utilization = get_number_or(new_j, "utilization", 1.0, "new_system");
        }
        sc.new_system.annual_kwh = as_config_error("new_system", [&] {
            return annual_energy_kwh({0.0, sc.new_system.device, sc.new_system.host_static_power_w,
                                      sc.new_system.utilization});
        });
    }

    if (new_j.contains("embodied_kg")) {
        sc.new_system.embodied_kg = get_number(new_j, "embodied_kg", "new_system");
    } else {
        ServerConfig server = server_from_json(require(new_j, "server", "new_system"));
        std::vector<AcceleratorSpec> accels;
        if (new_j.contains("accelerators")) accels = accelerators_from_json(new_j.at("accelerators"));
        sc.new_system.embodied_kg =
            embodied_system(server, accels, profile.coefficients, profile.k6(), profile.chip_carbon).total;
    }

    sc.input.new_embodied_kg = sc.new_system.embodied_kg;
    sc.input.old_annual_kwh = sc.old_system.annual_kwh;
    sc.input.new_annual_kwh = sc.new_system.annual_kwh;
    sc.input.horizon_years = get_number_or(j, "horizon_years", 15.0, "breakeven scenario");
    sc.input.step_years = get_number_or(j, "step_years", 0.5, "breakeven scenario");

    if (j.contains("regions")) {
        const json& r = j.at("regions");
        if (!r.is_array()) throw ConfigError("regions must be an array");
        for (const auto& name : r) {
            if (!name.is_string()) throw ConfigError("regions entries must be strings");
            sc.regions.push_back(name.get<std::string>());
        }
    } else {
        sc.regions = {"AZ", "CA", "TX", "NY"};
    }
    return sc;
}

FleetScenario fleet_scenario_from_json(const json& j) {
    check_schema(j, "fleet scenario");
    FleetScenario sc;
    sc.intensities = intensities_from_json(j);
    sc.options.region = j.contains("region") ? get_string(j, "region", "fleet scenario") : "TX";
    sc.options.lifetime_years = get_number_or(j, "lifetime_years", 4.0, "fleet scenario");
    sc.options.workload_tasks_per_s = get_number_or(j, "workload_tasks_per_s", 1000.0, "fleet scenario");
    if (j.contains("integer_servers")) {
        if (!j.at("integer_servers").is_boolean()) throw ConfigError("integer_servers must be a boolean");
        sc.options.integer_servers = j.at("integer_servers").get<bool>();
    }
    const json& cands = require(j, "candidates", "fleet scenario");
    if (!cands.is_array() || cands.empty()) throw ConfigError("candidates must be a non-empty array");
    for (const auto& c : cands) {
        FleetCandidate fc;
        fc.name = get_string(c, "name", "candidate");
        fc.server = server_from_json(require(c, "server", fc.name));
        if (c.contains("accelerators")) fc.accelerators = accelerators_from_json(c.at("accelerators"));
        fc.device = device_from_json(require(c, "device", fc.name));
        fc.devices_per_server = c.contains("devices_per_server") ? get_int(c, "devices_per_server", fc.name) : 1;
        fc.host_static_power_w = get_number_or(c, "host_static_power_w", 0.0, fc.name);
        sc.candidates.push_back(std::move(fc));
    }
    return sc;
}

json breakdown_to_json(const EmbodiedBreakdown& b) {
    json accels = json::array();
    for (const auto& part : b.accelerator_parts) accels.push_back({{"name", part.name}, {"kg", part.kg}});
    return {{"cpu_part", b.cpu_part},       {"ssd_part", b.ssd_part},   {"hdd_part", b.hdd_part},
            {"memory_part", b.memory_part}, {"year_part", b.year_part}, {"intercept", b.intercept},
            {"accelerator_parts", accels},  {"total", b.total}};
}

}  // namespace scarif
