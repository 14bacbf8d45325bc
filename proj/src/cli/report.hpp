#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "scarif/model.hpp"
#include "scarif/scenario.hpp"

namespace scarif::cli {

/// Record of one command invocation, written next to its outputs.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::string profile;
    std::vector<std::string> outputs;

    /// Writes manifest.json into `dir`; the manifest lists itself.
    void write(const std::filesystem::path& dir);
};

/// Writes `text` to dir/name and records it in the manifest.
void write_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                  const std::string& text);
void write_json_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                       const nlohmann::json& j);

void print_breakdown(std::ostream& out, const EmbodiedBreakdown& b);
void print_curves(std::ostream& out, const std::vector<BreakevenCurve>& curves);
void print_ranking(std::ostream& out, const std::vector<FleetResult>& results);

std::string curves_csv(const std::vector<BreakevenCurve>& curves);
std::string ranking_csv(const std::vector<FleetResult>& results);

}  // namespace scarif::cli
