#pragma once

// Vendor carbon-footprint report data: CSV schema, embedded fixtures and the
// augmentation rules that turn an incomplete report row into a ServerConfig.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scarif/model.hpp"

namespace scarif {

struct VendorReportRecord {
    Vendor vendor = Vendor::Generic;
    std::string server_name;
    std::optional<int> release_year;
    std::optional<int> cpu_count;
    std::optional<int> cpu_core_count;
    std::optional<double> memory_gb;
    std::optional<double> ssd_gb;
    std::optional<double> hdd_gb;
    double reported_embodied_kg = 0.0;
    std::optional<double> reported_sigma_kg;
    std::map<std::string, double> phase_breakdown;  // not part of the CSV schema

    /// Throws ValidationError.
    void validate() const;

    bool operator==(const VendorReportRecord&) const = default;
};

/// Header of the report CSV, in column order.
inline constexpr const char* kReportCsvHeader =
    "vendor,server_name,release_year,cpu_count,cpu_cores,memory_gb,ssd_gb,hdd_gb,embodied_kg,sigma_kg";

std::vector<VendorReportRecord> load_reports(const std::filesystem::path& path);
std::vector<VendorReportRecord> read_reports(std::istream& in);
void write_reports(std::ostream& out, std::span<const VendorReportRecord> records);

/// One point of the 37-server Dell comparison. The plotted half-width is 0.4 sigma.
struct DellFixtureRow {
    int index = 0;
    double reported_kg = 0.0;
    double halfwidth_kg = 0.0;
    double predicted_kg = 0.0;

    double sigma_kg() const noexcept { return halfwidth_kg / 0.4; }
};

std::vector<DellFixtureRow> load_dell_fixture();
void write_dell_fixture(std::ostream& out, std::span<const DellFixtureRow> rows);

/// Highest/lowest embodied servers per vendor, with component breakdown where reported.
struct BreakdownFixtureRow {
    std::string server_name;
    Vendor vendor = Vendor::Generic;
    std::optional<double> total_embodied;
    std::optional<double> hdd;
    std::optional<double> ssd;
    std::optional<double> mainboard;
    std::optional<double> daughterboard;
    std::optional<double> others;

    bool all_parts_present() const noexcept;
    double parts_sum() const noexcept;
};

std::vector<BreakdownFixtureRow> load_breakdown_fixture();
void write_breakdown_fixture(std::ostream& out, std::span<const BreakdownFixtureRow> rows);

/// The breakdown fixture as report records (totals only, no configuration).
std::vector<VendorReportRecord> breakdown_fixture_reports();

/// Server model -> maximum compatible CPU cores. Keys are matched case-insensitively.
class SpecSheetDb {
public:
    SpecSheetDb() = default;

    /// R230: 4, R930: 96, R740: 56, R750: 64.
    static SpecSheetDb defaults();
    /// CSV with header `server_name,max_cores`.
    static SpecSheetDb load(const std::filesystem::path& path);

    void set(const std::string& server_name, int max_cores);
    std::optional<int> max_cores(const std::string& server_name) const;
    const std::map<std::string, int>& entries() const noexcept { return entries_; }
    void write(std::ostream& out) const;

private:
    std::map<std::string, int> entries_;  // lower-cased keys
};

struct AugmentDefaults {
    double memory_gb = 64.0;
    double ssd_gb = 0.0;
    double hdd_gb = 0.0;
};

struct AugmentedConfig {
    ServerConfig config;
    std::vector<std::string> augmented_fields;  // e.g. "cpu_cores", "memory_gb"

    bool augmented(std::string_view field) const;
};

/// Fills absent fields; never overwrites present ones. Throws AugmentationError
/// when the year is absent or the core count is in neither record nor db.
AugmentedConfig augment(const VendorReportRecord& record,
                        const SpecSheetDb& spec_db,
                        const AugmentDefaults& defaults = {});

}  // namespace scarif
