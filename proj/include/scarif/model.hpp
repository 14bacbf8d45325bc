#pragma once

// Linear embodied-carbon model for servers and attached accelerators.
//
// A server's embodied carbon is
//
//   E = k1*cores + k2*ssd_gb + k3*hdd_gb + k4*mem_gb + k5*(year - 2000) + d + offset(vendor)
//
// and an accelerator adds K6 * chip carbon, where K6 is the system-to-chip
// ratio observed on the CPU part of a reference server. All values are kgCO2e
// in full double precision; rounding is a presentation concern.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scarif/error.hpp"

namespace scarif {

enum class Vendor { HP, Dell, Lenovo, Generic };

std::string_view to_string(Vendor v) noexcept;
/// Case-insensitive. Throws InvalidInput on unknown names.
Vendor parse_vendor(std::string_view name);

inline constexpr int kBaseYear = 2000;

struct ServerConfig {
    int cpu_core_count = 1;  // across all sockets
    double ssd_gb = 0.0;     // 1 TB = 1000 GB throughout
    double hdd_gb = 0.0;
    double memory_gb = 0.0;
    int release_year = kBaseYear;
    Vendor vendor = Vendor::Generic;

    void validate() const;
};

struct ModelCoefficients {
    double k1 = 0.0;  // per core
    double k2 = 0.0;  // per GB SSD
    double k3 = 0.0;  // per GB HDD
    double k4 = 0.0;  // per GB memory
    double k5 = 0.0;  // per year since 2000
    double d = 0.0;
    std::map<Vendor, double> vendor_offsets;

    /// Coefficients learned on the HP reports, with the Dell/Lenovo offsets.
    static ModelCoefficients paper();

    double intercept_for(Vendor v) const;
    void validate() const;
};

struct AcceleratorSpec {
    std::string name;
    double die_area_mm2 = 0.0;
    int node_nm = 0;
    std::optional<double> chip_carbon_kg;  // wins over the table when set
};

/// Chip-level carbon per die area, keyed by technology node.
class ChipCarbonTable {
public:
    ChipCarbonTable() = default;
    explicit ChipCarbonTable(std::map<int, double> kg_per_mm2);

    /// 14 nm and 12 nm entries anchored on the Xeon 8180 (694 mm2 -> 26.71 kg)
    /// and V100 (815 mm2 -> 15.69 kg) chip estimates.
    static ChipCarbonTable anchored_default();

    std::optional<double> kg_per_mm2(int node_nm) const;
    void set(int node_nm, double kg_per_mm2);
    const std::map<int, double>& entries() const noexcept { return entries_; }

private:
    std::map<int, double> entries_;
};

struct AcceleratorPart {
    std::string name;
    double kg = 0.0;
};

struct EmbodiedBreakdown {
    double cpu_part = 0.0;
    double ssd_part = 0.0;
    double hdd_part = 0.0;
    double memory_part = 0.0;
    double year_part = 0.0;
    double intercept = 0.0;
    std::vector<AcceleratorPart> accelerator_parts;
    double total = 0.0;

    /// Same summation order as used to produce `total`.
    double sum_of_parts() const noexcept;
};

/// Raised when the model output is negative, i.e. the configuration is below
/// the calibrated regime. Carries the offending breakdown.
class ModelOutOfRange : public Error {
public:
    explicit ModelOutOfRange(EmbodiedBreakdown breakdown);
    const EmbodiedBreakdown& breakdown() const noexcept { return breakdown_; }

private:
    EmbodiedBreakdown breakdown_;
};

double cpu_part(int cores, const ModelCoefficients& coeffs);

EmbodiedBreakdown embodied_server(const ServerConfig& config, const ModelCoefficients& coeffs);

double chip_embodied(const AcceleratorSpec& spec, const ChipCarbonTable& table);

/// System-to-chip carbon ratio of the CPU part.
double k6_calibrate(double system_cpu_part, double chip_cpu);

double accelerator_part(const AcceleratorSpec& spec, double k6, const ChipCarbonTable& table);

EmbodiedBreakdown embodied_system(const ServerConfig& config,
                                  std::span<const AcceleratorSpec> accelerators,
                                  const ModelCoefficients& coeffs,
                                  double k6,
                                  const ChipCarbonTable& table);

}  // namespace scarif
