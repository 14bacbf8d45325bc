#include "scarif/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <ostream>

#include "csv.hpp"

namespace scarif {

namespace {

constexpr std::array<const char*, 10> kReportColumns = {
    "vendor", "server_name", "release_year", "cpu_count", "cpu_cores",
    "memory_gb", "ssd_gb", "hdd_gb", "embodied_kg", "sigma_kg"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
    return in;
}

void check_non_negative(const std::optional<double>& v, const char* what, const std::string& server) {
    if (v && *v < 0.0) throw ValidationError(server + ": " + what + " must be >= 0");
}

}  // namespace

void VendorReportRecord::validate() const {
    const std::string who = server_name.empty() ? std::string("record") : server_name;
    if (!(reported_embodied_kg > 0.0)) throw ValidationError(who + ": embodied_kg must be > 0");
    if (reported_sigma_kg && *reported_sigma_kg < 0.0) throw ValidationError(who + ": sigma_kg must be >= 0");
    check_non_negative(memory_gb, "memory_gb", who);
    check_non_negative(ssd_gb, "ssd_gb", who);
    check_non_negative(hdd_gb, "hdd_gb", who);
    if (cpu_count && *cpu_count < 1) throw ValidationError(who + ": cpu_count must be >= 1");
    if (cpu_core_count && *cpu_core_count < 1) throw ValidationError(who + ": cpu_cores must be >= 1");
    if (!phase_breakdown.empty()) {
        double lifecycle = 0.0;
        for (const auto& [phase, kg] : phase_breakdown) {
            if (kg < 0.0) throw ValidationError(who + ": phase '" + phase + "' must be >= 0");
            lifecycle += kg;
        }
        for (const auto& [phase, kg] : phase_breakdown) {
            if (kg > lifecycle) throw ValidationError(who + ": phase '" + phase + "' exceeds lifecycle total");
        }
    }
}

std::vector<VendorReportRecord> read_reports(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    std::vector<VendorReportRecord> records;
    if (!csv::next_line(in, line, row)) return records;

    auto header = csv::split_line(line, row);
    if (header.size() != kReportColumns.size() ||
        !std::equal(header.begin(), header.end(), kReportColumns.begin())) {
        throw ParseError(row, "", std::string("header must be exactly '") + kReportCsvHeader + "'");
    }

    while (csv::next_line(in, line, row)) {
        auto cells = csv::split_line(line, row);
        if (cells.size() != kReportColumns.size()) {
            throw ParseError(row, "", "expected " + std::to_string(kReportColumns.size()) + " columns, got " +
                                          std::to_string(cells.size()));
        }
        VendorReportRecord r;
        try {
            r.vendor = parse_vendor(cells[0]);
        } catch (const InvalidInput& e) {
            throw ParseError(row, "vendor", e.what());
        }
        r.server_name = cells[1];
        r.release_year = csv::parse_opt_int(cells[2], row, "release_year");
        r.cpu_count = csv::parse_opt_int(cells[3], row, "cpu_count");
        r.cpu_core_count = csv::parse_opt_int(cells[4], row, "cpu_cores");
        r.memory_gb = csv::parse_opt_double(cells[5], row, "memory_gb");
        r.ssd_gb = csv::parse_opt_double(cells[6], row, "ssd_gb");
        r.hdd_gb = csv::parse_opt_double(cells[7], row, "hdd_gb");
        if (csv::trim(cells[8]).empty()) throw ParseError(row, "embodied_kg", "value is required");
        r.reported_embodied_kg = csv::parse_double(cells[8], row, "embodied_kg");
        r.reported_sigma_kg = csv::parse_opt_double(cells[9], row, "sigma_kg");
        try {
            r.validate();
        } catch (const ValidationError& e) {
            throw ValidationError("row " + std::to_string(row) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<VendorReportRecord> load_reports(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_reports(in);
}

void write_reports(std::ostream& out, std::span<const VendorReportRecord> records) {
    out << kReportCsvHeader << '\n';
    for (const auto& r : records) {
        out << to_string(r.vendor) << ',' << csv::quote_if_needed(r.server_name) << ','
            << csv::format_opt(r.release_year) << ',' << csv::format_opt(r.cpu_count) << ','
            << csv::format_opt(r.cpu_core_count) << ',' << csv::format_opt(r.memory_gb) << ','
            << csv::format_opt(r.ssd_gb) << ',' << csv::format_opt(r.hdd_gb) << ','
            << csv::format_double(r.reported_embodied_kg) << ',' << csv::format_opt(r.reported_sigma_kg) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Embedded fixtures

std::vector<DellFixtureRow> load_dell_fixture() {
    // index, reported, error-bar half-width (0.4 sigma), model prediction
    static constexpr DellFixtureRow kRows[] = {
        {1, 1609.65, 577.22, 1022.8},  {2, 1563.54, 586.96, 1022.8},  {3, 1263.24, 527.57, 1190.8},
        {4, 1220.87, 490.96, 1046.8},  {5, 1300.65, 575.36, 1278.0},  {6, 1147.20, 406.30, 878.4},
        {7, 1209.84, 557.21, 998.6},   {8, 1249.76, 523.26, 1158.8},  {9, 1573.36, 526.30, 1105.8},
        {10, 1692.75, 666.74, 1371.9}, {11, 1140.56, 437.57, 961.4},  {12, 1146.08, 457.60, 981.5},
        {13, 1782.20, 761.12, 1754.4}, {14, 1145.94, 414.26, 961.4},  {15, 1206.50, 532.00, 1196.9},
        {16, 1695.33, 648.65, 1204.1}, {17, 1738.80, 678.96, 1576.9}, {18, 1244.40, 500.69, 1243.2},
        {19, 1204.35, 474.34, 1323.3}, {20, 1618.82, 598.05, 1332.1}, {21, 1659.00, 594.40, 1392.1},
        {22, 1155.52, 468.49, 1364.0}, {23, 1234.50, 526.80, 1563.2}, {24, 1283.18, 524.56, 1371.3},
        {25, 1313.28, 515.58, 1387.3}, {26, 1321.92, 610.56, 1387.3}, {27, 1381.80, 607.60, 1697.7},
        {28, 1190.16, 471.19, 1396.2}, {29, 1229.68, 505.25, 1524.6}, {30, 1310.80, 560.48, 1547.4},
        {31, 1194.93, 480.42, 1235.9}, {32, 1312.00, 533.33, 1539.3}, {33, 1167.72, 431.57, 1230.7},
        {34, 1150.60, 484.00, 1230.7}, {35, 1528.80, 686.00, 1962.2}, {36, 1155.84, 429.31, 1230.7},
        {37, 1132.86, 438.92, 1230.7},
    };
    return {std::begin(kRows), std::end(kRows)};
}

void write_dell_fixture(std::ostream& out, std::span<const DellFixtureRow> rows) {
    out << "index,reported_kg,halfwidth_kg,predicted_kg\n";
    for (const auto& r : rows) {
        out << r.index << ',' << csv::format_double(r.reported_kg) << ',' << csv::format_double(r.halfwidth_kg) << ','
            << csv::format_double(r.predicted_kg) << '\n';
    }
}

bool BreakdownFixtureRow::all_parts_present() const noexcept {
    return hdd && ssd && mainboard && daughterboard && others;
}

double BreakdownFixtureRow::parts_sum() const noexcept {
    return hdd.value_or(0.0) + ssd.value_or(0.0) + mainboard.value_or(0.0) + daughterboard.value_or(0.0) +
           others.value_or(0.0);
}

std::vector<BreakdownFixtureRow> load_breakdown_fixture() {
    constexpr std::optional<double> na;
    return {
        {"r930", Vendor::Dell, 1782.0, na, na, na, na, na},
        {"t340", Vendor::Dell, 1133.0, na, na, na, na, na},
        {"DL380", Vendor::HP, 3880.0, na, na, na, na, na},
        {"DL20", Vendor::HP, 423.0, 0.0, 18.0, 203.0, 128.0, 74.0},
        {"SR950", Vendor::Lenovo, 15593.0, 0.0, 85.0, 15167.0, 256.0, 85.0},
        {"SR250v2", Vendor::Lenovo, 585.0, 0.0, 30.0, 426.0, 34.0, 95.0},
    };
}

void write_breakdown_fixture(std::ostream& out, std::span<const BreakdownFixtureRow> rows) {
    out << "vendor,server_name,total_embodied,hdd,ssd,mainboard,daughterboard,others\n";
    for (const auto& r : rows) {
        out << to_string(r.vendor) << ',' << csv::quote_if_needed(r.server_name) << ','
            << csv::format_opt(r.total_embodied) << ',' << csv::format_opt(r.hdd) << ',' << csv::format_opt(r.ssd)
            << ',' << csv::format_opt(r.mainboard) << ',' << csv::format_opt(r.daughterboard) << ','
            << csv::format_opt(r.others) << '\n';
    }
}

std::vector<VendorReportRecord> breakdown_fixture_reports() {
    std::vector<VendorReportRecord> out;
    for (const auto& row : load_breakdown_fixture()) {
        VendorReportRecord r;
        r.vendor = row.vendor;
        r.server_name = row.server_name;
        r.reported_embodied_kg = row.total_embodied.value_or(0.0);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spec-sheet database

SpecSheetDb SpecSheetDb::defaults() {
    SpecSheetDb db;
    db.set("R230", 4);
    db.set("R930", 96);
    db.set("R740", 56);
    db.set("R750", 64);
    return db;
}

SpecSheetDb SpecSheetDb::load(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t row = 0;
    SpecSheetDb db;
    if (!csv::next_line(in, line, row)) return db;
    auto header = csv::split_line(line, row);
    if (header != std::vector<std::string>{"server_name", "max_cores"}) {
        throw ParseError(row, "", "header must be exactly 'server_name,max_cores'");
    }
    while (csv::next_line(in, line, row)) {
        auto cells = csv::split_line(line, row);
        if (cells.size() != 2) throw ParseError(row, "", "expected 2 columns");
        int cores = csv::parse_int(cells[1], row, "max_cores");
        if (cores < 1) throw ParseError(row, "max_cores", "must be >= 1");
        db.set(cells[0], cores);
    }
    return db;
}

void SpecSheetDb::set(const std::string& server_name, int max_cores) { entries_[lower(server_name)] = max_cores; }

std::optional<int> SpecSheetDb::max_cores(const std::string& server_name) const {
    auto it = entries_.find(lower(server_name));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void SpecSheetDb::write(std::ostream& out) const {
    out << "server_name,max_cores\n";
    for (const auto& [name, cores] : entries_) out << csv::quote_if_needed(name) << ',' << cores << '\n';
}

// ---------------------------------------------------------------------------
// Augmentation

bool AugmentedConfig::augmented(std::string_view field) const {
    return std::ranges::find(augmented_fields, field) != augmented_fields.end();
}

AugmentedConfig augment(const VendorReportRecord& record, const SpecSheetDb& spec_db, const AugmentDefaults& defaults) {
    const std::string who = record.server_name.empty() ? std::string("<unnamed>") : record.server_name;
    if (!record.release_year) throw AugmentationError(who + ": release year missing");

    AugmentedConfig out;
    out.config.vendor = record.vendor;
    out.config.release_year = *record.release_year;

    if (record.cpu_core_count) {
        out.config.cpu_core_count = *record.cpu_core_count;
    } else if (auto cores = spec_db.max_cores(record.server_name)) {
        out.config.cpu_core_count = *cores;
        out.augmented_fields.emplace_back("cpu_cores");
    } else {
        throw AugmentationError(who + ": core count missing from the record and the spec-sheet database");
    }

    auto fill = [&](const std::optional<double>& present, double fallback, const char* field) {
        if (present) return *present;
        out.augmented_fields.emplace_back(field);
        return fallback;
    };
    out.config.memory_gb = fill(record.memory_gb, defaults.memory_gb, "memory_gb");
    out.config.ssd_gb = fill(record.ssd_gb, defaults.ssd_gb, "ssd_gb");
    out.config.hdd_gb = fill(record.hdd_gb, defaults.hdd_gb, "hdd_gb");

    try {
        out.config.validate();
    } catch (const InvalidInput& e) {
        throw AugmentationError(who + ": " + e.what());
    }
    return out;
}

}  // namespace scarif
