#include "cli/report.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cli/commands.hpp"
#include "csv.hpp"

namespace scarif::cli {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                  const std::string& text) {
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    manifest.outputs.push_back(path.string());
}

void write_json_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                       const nlohmann::json& j) {
    write_output(manifest, dir, name, j.dump(2) + "\n");
}

void RunManifest::write(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / "manifest.json";
    outputs.push_back(path.string());
    nlohmann::json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["inputs"] = inputs;
    j["profile"] = profile;
    j["outputs"] = outputs;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = utc_timestamp();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

void print_breakdown(std::ostream& out, const EmbodiedBreakdown& b) {
    auto row = [&](std::string_view label, double kg) { fmt::print(out, "  {:<24}{:>12.2f}\n", label, kg); };
    fmt::print(out, "  {:<24}{:>12}\n", "part", "kgCO2e");
    row("cpu", b.cpu_part);
    row("ssd", b.ssd_part);
    row("hdd", b.hdd_part);
    row("memory", b.memory_part);
    row("year", b.year_part);
    row("intercept", b.intercept);
    for (const auto& part : b.accelerator_parts) row("accelerator " + part.name, part.kg);
    fmt::print(out, "  {:-<36}\n", "");
    row("total", b.total);
}

void print_curves(std::ostream& out, const std::vector<BreakevenCurve>& curves) {
    fmt::print(out, "  {:<8}{:>12}{:>16}\n", "region", "kg/kWh", "breakeven (y)");
    for (const auto& c : curves) {
        std::string when = c.breakeven_years ? fmt::format("{:.2f}", *c.breakeven_years)
                           : c.payback_years ? std::string("never within horizon")
                                             : std::string("never");
        fmt::print(out, "  {:<8}{:>12.3f}{:>16}\n", c.region, c.intensity, when);
    }
}

void print_ranking(std::ostream& out, const std::vector<FleetResult>& results) {
    fmt::print(out, "  {:<4}{:<16}{:>10}{:>14}{:>14}{:>14}\n", "#", "candidate", "servers", "embodied", "operational",
               "total");
    int rank = 1;
    for (const auto& r : results) {
        fmt::print(out, "  {:<4}{:<16}{:>10.3f}{:>14.1f}{:>14.1f}{:>14.1f}\n", rank++, r.name, r.servers_needed,
                   r.embodied_kg, r.operational_kg, r.total_kg);
    }
}

std::string curves_csv(const std::vector<BreakevenCurve>& curves) {
    std::string out = "year";
    for (const auto& c : curves) out += "," + csv::quote_if_needed(c.region);
    out += '\n';
    if (curves.empty()) return out;
    for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
        out += csv::format_double(curves.front().points[i].years);
        for (const auto& c : curves) out += "," + csv::format_double(c.points[i].saving_kg);
        out += '\n';
    }
    return out;
}

std::string ranking_csv(const std::vector<FleetResult>& results) {
    std::string out = "rank,candidate,servers_needed,embodied_kg,operational_kg,total_kg\n";
    int rank = 1;
    for (const auto& r : results) {
        out += std::to_string(rank++) + "," + csv::quote_if_needed(r.name) + "," + csv::format_double(r.servers_needed) +
               "," + csv::format_double(r.embodied_kg) + "," + csv::format_double(r.operational_kg) + "," +
               csv::format_double(r.total_kg) + "\n";
    }
    return out;
}

}  // namespace scarif::cli
