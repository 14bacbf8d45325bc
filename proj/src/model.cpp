#include "scarif/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace scarif {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return std::ranges::equal(a, b, [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

void require_finite_non_negative(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0) {
        throw InvalidInput(std::string(what) + " must be a finite non-negative number");
    }
}

}  // namespace

std::string_view to_string(Vendor v) noexcept {
    switch (v) {
        case Vendor::HP: return "HP";
        case Vendor::Dell: return "Dell";
        case Vendor::Lenovo: return "Lenovo";
        case Vendor::Generic: return "Generic";
    }
    return "Generic";
}

Vendor parse_vendor(std::string_view name) {
    for (Vendor v : {Vendor::HP, Vendor::Dell, Vendor::Lenovo, Vendor::Generic}) {
        if (iequals(name, to_string(v))) return v;
    }
    throw InvalidInput("unknown vendor '" + std::string(name) + "' (expected HP, Dell, Lenovo or Generic)");
}

void ServerConfig::validate() const {
    if (cpu_core_count < 1) throw InvalidInput("cpu_core_count must be >= 1");
    require_finite_non_negative(ssd_gb, "ssd_gb");
    require_finite_non_negative(hdd_gb, "hdd_gb");
    require_finite_non_negative(memory_gb, "memory_gb");
    if (release_year < kBaseYear) throw InvalidInput("release_year must be >= 2000");
}

ModelCoefficients ModelCoefficients::paper() {
    ModelCoefficients c;
    c.k1 = 5.01;
    c.k2 = 0.16;
    c.k3 = 0.04;
    c.k4 = 0.95;
    c.k5 = 83.08;
    c.d = -1100.0;
    c.vendor_offsets = {{Vendor::HP, 0.0}, {Vendor::Dell, -400.0}, {Vendor::Lenovo, -900.0}};
    return c;
}

double ModelCoefficients::intercept_for(Vendor v) const {
    auto it = vendor_offsets.find(v);
    return d + (it == vendor_offsets.end() ? 0.0 : it->second);
}

void ModelCoefficients::validate() const {
    require_finite_non_negative(k1, "k1");
    require_finite_non_negative(k2, "k2");
    require_finite_non_negative(k3, "k3");
    require_finite_non_negative(k4, "k4");
    require_finite_non_negative(k5, "k5");
    if (!std::isfinite(d)) throw InvalidInput("d must be finite");
    for (const auto& [vendor, offset] : vendor_offsets) {
        if (!std::isfinite(offset)) {
            throw InvalidInput("vendor offset for " + std::string(to_string(vendor)) + " must be finite");
        }
    }
}

ChipCarbonTable::ChipCarbonTable(std::map<int, double> kg_per_mm2) {
    for (const auto& [node, value] : kg_per_mm2) set(node, value);
}

ChipCarbonTable ChipCarbonTable::anchored_default() {
    ChipCarbonTable table;
    table.set(14, 26.71 / 694.0);
    table.set(12, 15.69 / 815.0);
    return table;
}

std::optional<double> ChipCarbonTable::kg_per_mm2(int node_nm) const {
    auto it = entries_.find(node_nm);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ChipCarbonTable::set(int node_nm, double kg_per_mm2) {
    if (node_nm <= 0) throw InvalidInput("chip carbon node must be a positive nm value");
    if (!std::isfinite(kg_per_mm2) || kg_per_mm2 <= 0.0) {
        throw InvalidInput("chip carbon for " + std::to_string(node_nm) + " nm must be > 0");
    }
    entries_[node_nm] = kg_per_mm2;
}

double EmbodiedBreakdown::sum_of_parts() const noexcept {
    double sum = cpu_part;
    sum += ssd_part;
    sum += hdd_part;
    sum += memory_part;
    sum += year_part;
    sum += intercept;
    for (const auto& part : accelerator_parts) sum += part.kg;
    return sum;
}

namespace {

std::string out_of_range_message(const EmbodiedBreakdown& b) {
    std::ostringstream os;
    os << "model output " << b.total
       << " kgCO2e is negative; configuration is below the model's calibrated regime";
    return os.str();
}

}  // namespace

ModelOutOfRange::ModelOutOfRange(EmbodiedBreakdown breakdown)
    : Error(out_of_range_message(breakdown)), breakdown_(std::move(breakdown)) {}

double cpu_part(int cores, const ModelCoefficients& coeffs) {
    if (cores < 1) throw InvalidInput("core count must be >= 1");
    return coeffs.k1 * cores;
}

namespace {

EmbodiedBreakdown server_terms(const ServerConfig& config, const ModelCoefficients& coeffs) {
    config.validate();
    coeffs.validate();
    EmbodiedBreakdown b;
    b.cpu_part = cpu_part(config.cpu_core_count, coeffs);
    b.ssd_part = coeffs.k2 * config.ssd_gb;
    b.hdd_part = coeffs.k3 * config.hdd_gb;
    b.memory_part = coeffs.k4 * config.memory_gb;
    b.year_part = coeffs.k5 * (config.release_year - kBaseYear);
    b.intercept = coeffs.intercept_for(config.vendor);
    b.total = b.sum_of_parts();
    return b;
}

}  // namespace

EmbodiedBreakdown embodied_server(const ServerConfig& config, const ModelCoefficients& coeffs) {
    EmbodiedBreakdown b = server_terms(config, coeffs);
    if (b.total < 0.0) throw ModelOutOfRange(std::move(b));
    return b;
}

double chip_embodied(const AcceleratorSpec& spec, const ChipCarbonTable& table) {
    if (spec.chip_carbon_kg) {
        if (!std::isfinite(*spec.chip_carbon_kg) || *spec.chip_carbon_kg < 0.0) {
            throw InvalidInput("chip_carbon_kg for '" + spec.name + "' must be non-negative");
        }
        return *spec.chip_carbon_kg;
    }
    if (!std::isfinite(spec.die_area_mm2) || spec.die_area_mm2 < 0.0) {
        throw InvalidInput("die area for '" + spec.name + "' must be non-negative");
    }
    auto rate = table.kg_per_mm2(spec.node_nm);
    if (!rate) {
        throw MissingCalibration("no chip carbon calibration for " + std::to_string(spec.node_nm) +
                                 " nm and no explicit chip_carbon_kg for '" + spec.name + "'");
    }
    return *rate * spec.die_area_mm2;
}

double k6_calibrate(double system_cpu_part, double chip_cpu) {
    if (!(system_cpu_part > 0.0) || !(chip_cpu > 0.0)) {
        throw InvalidInput("K6 calibration needs positive system and chip carbon");
    }
    return system_cpu_part / chip_cpu;
}

double accelerator_part(const AcceleratorSpec& spec, double k6, const ChipCarbonTable& table) {
    if (!(k6 > 0.0) || !std::isfinite(k6)) throw InvalidInput("k6 must be > 0");
    return k6 * chip_embodied(spec, table);
}

EmbodiedBreakdown embodied_system(const ServerConfig& config,
                                  std::span<const AcceleratorSpec> accelerators,
                                  const ModelCoefficients& coeffs,
                                  double k6,
                                  const ChipCarbonTable& table) {
    EmbodiedBreakdown b = embodied_server(config, coeffs);
    b.accelerator_parts.reserve(accelerators.size());
    for (const auto& spec : accelerators) {
        b.accelerator_parts.push_back({spec.name, accelerator_part(spec, k6, table)});
    }
    b.total = b.sum_of_parts();
    return b;
}

}  // namespace scarif
