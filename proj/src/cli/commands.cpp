#include "cli/commands.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cli/report.hpp"
#include "csv.hpp"
#include "scarif/dataset.hpp"
#include "scarif/fitting.hpp"
#include "scarif/json_io.hpp"
#include "scarif/model.hpp"
#include "scarif/profile.hpp"
#include "scarif/scenario.hpp"

namespace scarif::cli {

using nlohmann::json;

namespace {

constexpr const char* kDefaultProfile = "paper-eq3";

struct CommonOptions {
    std::string profile;
    std::string output = ".";
};

void add_profile_option(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--profile", common.profile, "calibration profile name or path (default paper-eq3)")
        ->envname("SCARIF_PROFILE");
}

void add_output_option(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--output", common.output, "output directory")->envname("SCARIF_OUTPUT")->capture_default_str();
}

// Flag/env value first, then a "profile" key in the input file, then the default.
CalibrationProfile pick_profile(const CommonOptions& common, const json* input = nullptr) {
    if (!common.profile.empty()) return resolve_profile(common.profile);
    if (input && input->is_object() && input->contains("profile") && input->at("profile").is_string()) {
        return resolve_profile(input->at("profile").get<std::string>());
    }
    return resolve_profile(kDefaultProfile);
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string config;
};

int cmd_estimate(const EstimateArgs& args, const CommonOptions& common, std::ostream& out) {
    const json input = read_json_file(args.config);
    const CalibrationProfile profile = pick_profile(common, &input);
    const EstimateInput est = estimate_input_from_json(input);
    const double k6 = profile.k6();

    RunManifest manifest{"estimate", {args.config}, profile.name, {}};
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "estimate";
    report["profile"] = profile.name;
    report["k6"] = k6;
    report["server"] = server_to_json(est.server);

    int code = kExitOk;
    EmbodiedBreakdown breakdown;
    try {
        breakdown = embodied_system(est.server, est.accelerators, profile.coefficients, k6, profile.chip_carbon);
        report["status"] = "ok";
    } catch (const ModelOutOfRange& e) {
        breakdown = e.breakdown();
        report["status"] = "model-out-of-range";
        report["message"] = e.what();
        code = kExitOutOfRange;
    }
    report["breakdown"] = breakdown_to_json(breakdown);

    fmt::print(out, "Embodied carbon (profile {}, K6 {:.4f})\n", profile.name, k6);
    print_breakdown(out, breakdown);
    if (code == kExitOutOfRange) fmt::print(out, "model output is negative: configuration is out of range\n");

    write_json_output(manifest, common.output, "estimate.json", report);
    manifest.write(common.output);
    return code;
}

// ---------------------------------------------------------------------------

struct FitArgs {
    std::string reports;
    double k2 = 0.16;
    double k3 = 0.04;
    std::string intercept = "free";
    std::optional<double> d;
    std::string spec_db;
    std::string name = "fitted";
};

int cmd_fit(const FitArgs& args, const CommonOptions& common, std::ostream& out) {
    const CalibrationProfile base = pick_profile(common);
    const auto records = load_reports(args.reports);
    const SpecSheetDb db = args.spec_db.empty() ? SpecSheetDb::defaults() : SpecSheetDb::load(args.spec_db);

    std::vector<FitSample> samples;
    json augmented = json::array();
    for (const auto& r : records) {
        AugmentedConfig a = augment(r, db);
        samples.push_back({a.config, r.reported_embodied_kg});
        augmented.push_back({{"server_name", r.server_name}, {"augmented_fields", a.augmented_fields}});
    }

    FitOptions options;
    options.k2 = args.k2;
    options.k3 = args.k3;
    options.vendor_offsets = base.coefficients.vendor_offsets;
    if (args.intercept == "fixed") {
        options.fixed_intercept = args.d.value_or(base.coefficients.d);
    } else if (args.d) {
        throw InvalidInput("--d requires --intercept fixed");
    }

    const FitResult result = fit(samples, options);

    CalibrationProfile fitted = base;
    fitted.name = args.name;
    fitted.coefficients = result.coefficients;
    try {
        fitted.validate();
    } catch (const InvalidInput& e) {
        throw ValidationError(std::string("fitted profile is not usable: ") + e.what());
    }

    const auto& c = result.coefficients;
    fmt::print(out, "Fitted {} samples (rmse {:.3f} kgCO2e)\n", result.n_samples, result.rmse);
    fmt::print(out, "  k1 {:.6f}  k2 {}  k3 {}  k4 {:.6f}  k5 {:.6f}  d {:.6f}\n", c.k1, c.k2, c.k3, c.k4, c.k5, c.d);

    RunManifest manifest{"fit", {args.reports}, base.name, {}};
    if (!args.spec_db.empty()) manifest.inputs.push_back(args.spec_db);
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "fit";
    report["base_profile"] = base.name;
    report["intercept_mode"] = args.intercept;
    report["n_samples"] = result.n_samples;
    report["rmse"] = result.rmse;
    report["residuals"] = result.residuals;
    report["augmentation"] = augmented;
    report["profile"] = profile_to_json(fitted);
    write_json_output(manifest, common.output, args.name + ".json", profile_to_json(fitted));
    write_json_output(manifest, common.output, "fit_report.json", report);
    manifest.write(common.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
    std::string fixture = "dell-fig4";
    bool use_paper_predictions = false;
    std::string predictions;
};

std::vector<double> read_predictions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::string line;
    std::size_t row = 0;
    std::vector<double> values;
    if (!csv::next_line(in, line, row)) return values;
    auto header = csv::split_line(line, row);
    if (header != std::vector<std::string>{"predicted_kg"}) {
        throw ParseError(row, "", "header must be exactly 'predicted_kg'");
    }
    while (csv::next_line(in, line, row)) {
        auto cells = csv::split_line(line, row);
        if (cells.size() != 1) throw ParseError(row, "", "expected 1 column");
        values.push_back(csv::parse_double(cells[0], row, "predicted_kg"));
    }
    return values;
}

int cmd_validate(const ValidateArgs& args, const CommonOptions& common, std::ostream& out) {
    if (args.fixture != "dell-fig4") throw InvalidInput("unknown fixture '" + args.fixture + "' (available: dell-fig4)");
    if (args.use_paper_predictions == !args.predictions.empty()) {
        throw InvalidInput("give exactly one of --use-paper-predictions or --predictions <csv>");
    }
    const auto fixture = load_dell_fixture();
    std::vector<double> predictions;
    if (args.use_paper_predictions) {
        for (const auto& row : fixture) predictions.push_back(row.predicted_kg);
    } else {
        predictions = read_predictions(args.predictions);
    }
    const ValidationSummary s = validate_against_fixture(predictions, fixture);

    std::size_t over = 0;
    for (double r : s.per_record_error_over_sigma) over += r > 0.4 ? 1 : 0;

    fmt::print(out, "Validation against {} ({} rows)\n", args.fixture, fixture.size());
    fmt::print(out, "  mean |error|/sigma   {:.4f}\n", s.mean_ratio);
    fmt::print(out, "  max  |error|/sigma   {:.4f}\n", s.max_ratio);
    fmt::print(out, "  rows above 0.4 sigma {}\n", over);
    fmt::print(out, "  mean relative error  {:.4f}\n", s.mean_relative_error);

    RunManifest manifest{"validate", {}, "", {}};
    manifest.inputs.push_back(args.predictions.empty() ? "embedded:dell-fig4" : args.predictions);
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "validate";
    report["fixture"] = args.fixture;
    report["predictions"] = args.use_paper_predictions ? "paper" : args.predictions;
    report["n"] = fixture.size();
    report["mean_ratio"] = s.mean_ratio;
    report["max_ratio"] = s.max_ratio;
    report["rows_over_0_4_sigma"] = over;
    report["mean_relative_error"] = s.mean_relative_error;
    report["per_record_error_over_sigma"] = s.per_record_error_over_sigma;
    write_json_output(manifest, common.output, "validation.json", report);
    manifest.write(common.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BreakevenArgs {
    std::string scenario;
    std::vector<std::string> regions;
    std::optional<double> intensity;
    std::optional<double> horizon;
};

json years_json(const BreakevenCurve& c) {
    if (c.breakeven_years) return *c.breakeven_years;
    return c.payback_years ? "never within horizon" : "never";
}

int cmd_breakeven(const BreakevenArgs& args, const CommonOptions& common, std::ostream& out) {
    const json input = read_json_file(args.scenario);
    const CalibrationProfile profile = pick_profile(common, &input);
    BreakevenScenario sc = breakeven_scenario_from_json(input, profile);
    if (!args.regions.empty()) sc.regions = args.regions;
    if (args.intensity) sc.intensities.set("custom", *args.intensity);
    if (args.horizon) sc.input.horizon_years = *args.horizon;

    const auto curves = breakeven_sweep(sc.input, sc.regions, sc.intensities);

    fmt::print(out, "Upgrade breakeven: new embodied {:.2f} kgCO2e, energy {:.2f} -> {:.2f} kWh/year\n",
               sc.input.new_embodied_kg, sc.input.old_annual_kwh, sc.input.new_annual_kwh);
    print_curves(out, curves);

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["command"] = "breakeven";
    summary["profile"] = profile.name;
    summary["new_embodied_kg"] = sc.input.new_embodied_kg;
    summary["old_annual_kwh"] = sc.old_system.annual_kwh;
    summary["new_annual_kwh"] = sc.new_system.annual_kwh;
    summary["old_utilization"] = sc.old_system.utilization;
    summary["new_utilization"] = sc.new_system.utilization;
    summary["horizon_years"] = sc.input.horizon_years;
    json regions = json::array();
    for (const auto& c : curves) {
        regions.push_back({{"region", c.region},
                           {"intensity", c.intensity},
                           {"breakeven_years", years_json(c)},
                           {"payback_years", c.payback_years ? json(*c.payback_years) : json(nullptr)}});
    }
    summary["regions"] = regions;

    RunManifest manifest{"breakeven", {args.scenario}, profile.name, {}};
    write_output(manifest, common.output, "breakeven.csv", curves_csv(curves));
    write_json_output(manifest, common.output, "breakeven.json", summary);
    manifest.write(common.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string scenario;
    std::string region;
    std::optional<double> intensity;
    std::optional<double> workload;
    std::optional<double> lifetime;
    bool integer_servers = false;
};

int cmd_compare(const CompareArgs& args, const CommonOptions& common, std::ostream& out) {
    const json input = read_json_file(args.scenario);
    const CalibrationProfile profile = pick_profile(common, &input);
    FleetScenario sc = fleet_scenario_from_json(input);
    if (!args.region.empty()) sc.options.region = args.region;
    if (args.intensity) sc.intensities.set("custom", *args.intensity);
    if (args.workload) sc.options.workload_tasks_per_s = *args.workload;
    if (args.lifetime) sc.options.lifetime_years = *args.lifetime;
    if (args.integer_servers) sc.options.integer_servers = true;

    const auto ranking = fleet_compare(sc.candidates, sc.options, profile, sc.intensities);

    fmt::print(out, "Fleet comparison: {} tasks/s, {} over {} years (profile {})\n", sc.options.workload_tasks_per_s,
               sc.options.region, sc.options.lifetime_years, profile.name);
    print_ranking(out, ranking);

    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "compare";
    report["profile"] = profile.name;
    report["region"] = sc.options.region;
    report["intensity"] = sc.intensities.intensity(sc.options.region);
    report["lifetime_years"] = sc.options.lifetime_years;
    report["workload_tasks_per_s"] = sc.options.workload_tasks_per_s;
    report["integer_servers"] = sc.options.integer_servers;
    json ranked = json::array();
    int rank = 1;
    for (const auto& r : ranking) {
        ranked.push_back({{"rank", rank++},
                          {"name", r.name},
                          {"tasks_per_s_per_server", r.tasks_per_s_per_server},
                          {"servers_needed", r.servers_needed},
                          {"embodied_kg_per_server", r.embodied_kg_per_server},
                          {"annual_kwh_per_server", r.annual_kwh_per_server},
                          {"embodied_kg", r.embodied_kg},
                          {"operational_kg", r.operational_kg},
                          {"total_kg", r.total_kg}});
    }
    report["ranking"] = ranked;

    RunManifest manifest{"compare", {args.scenario}, profile.name, {}};
    write_output(manifest, common.output, "compare.csv", ranking_csv(ranking));
    write_json_output(manifest, common.output, "compare.json", report);
    manifest.write(common.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_export_fixtures(const CommonOptions& common, std::ostream& out) {
    RunManifest manifest{"export-fixtures", {}, "", {}};
    const std::filesystem::path dir = common.output;

    std::ostringstream dell, breakdown_csv, reports, specs;
    const auto dell_rows = load_dell_fixture();
    write_dell_fixture(dell, dell_rows);
    const auto breakdown = load_breakdown_fixture();
    write_breakdown_fixture(breakdown_csv, breakdown);
    const auto records = breakdown_fixture_reports();
    write_reports(reports, records);
    SpecSheetDb::defaults().write(specs);

    write_output(manifest, dir, "dell_fixture.csv", dell.str());
    write_output(manifest, dir, "component_breakdown.csv", breakdown_csv.str());
    write_output(manifest, dir, "vendor_reports.csv", reports.str());
    write_output(manifest, dir, "spec_sheets.csv", specs.str());
    for (const auto& name : builtin_profile_names()) {
        write_json_output(manifest, dir, name + ".json", profile_to_json(builtin_profile(name)));
    }
    manifest.write(dir);
    for (const auto& path : manifest.outputs) fmt::print(out, "wrote {}\n", path);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Server embodied/operational carbon estimation and decision analysis", "scarif"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions common;
    int code = kExitOk;

    EstimateArgs estimate;
    auto* est = app.add_subcommand("estimate", "embodied carbon of a server and its accelerators");
    est->add_option("config", estimate.config, "estimate config (JSON)")->required()->check(CLI::ExistingFile);
    add_profile_option(est, common);
    add_output_option(est, common);
    est->callback([&] { code = cmd_estimate(estimate, common, out); });

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "fit k1, k4, k5 (and d) from a report CSV");
    fit_cmd->add_option("reports", fit_args.reports, "report CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--k2", fit_args.k2, "fixed SSD coefficient")->envname("SCARIF_K2")->capture_default_str();
    fit_cmd->add_option("--k3", fit_args.k3, "fixed HDD coefficient")->envname("SCARIF_K3")->capture_default_str();
    fit_cmd->add_option("--intercept", fit_args.intercept, "free | fixed")
        ->check(CLI::IsMember({"free", "fixed"}))
        ->envname("SCARIF_INTERCEPT")
        ->capture_default_str();
    fit_cmd->add_option("--d", fit_args.d, "intercept for --intercept fixed (default: base profile d)")
        ->envname("SCARIF_D");
    fit_cmd->add_option("--spec-db", fit_args.spec_db, "CSV server_name,max_cores")
        ->check(CLI::ExistingFile)
        ->envname("SCARIF_SPEC_DB");
    fit_cmd->add_option("--name", fit_args.name, "name of the fitted profile")->capture_default_str();
    add_profile_option(fit_cmd, common);
    add_output_option(fit_cmd, common);
    fit_cmd->callback([&] { code = cmd_fit(fit_args, common, out); });

    ValidateArgs validate_args;
    auto* val = app.add_subcommand("validate", "compare predictions with the Dell reported data");
    val->add_option("--fixture", validate_args.fixture, "fixture name")->envname("SCARIF_FIXTURE")->capture_default_str();
    val->add_flag("--use-paper-predictions", validate_args.use_paper_predictions, "use the fixture's own predictions");
    val->add_option("--predictions", validate_args.predictions, "CSV with a predicted_kg column")
        ->check(CLI::ExistingFile);
    add_output_option(val, common);
    val->callback([&] { code = cmd_validate(validate_args, common, out); });

    BreakevenArgs be_args;
    auto* be = app.add_subcommand("breakeven", "upgrade breakeven curves per region");
    be->add_option("scenario", be_args.scenario, "breakeven scenario (JSON)")->required()->check(CLI::ExistingFile);
    be->add_option("--region", be_args.regions, "region(s): AZ, CA, TX, NY, custom or scenario-defined")
        ->envname("SCARIF_REGION");
    be->add_option("--intensity", be_args.intensity, "kgCO2e/kWh for --region custom")->envname("SCARIF_INTENSITY");
    be->add_option("--horizon", be_args.horizon, "horizon in years")->envname("SCARIF_HORIZON");
    add_profile_option(be, common);
    add_output_option(be, common);
    be->callback([&] { code = cmd_breakeven(be_args, common, out); });

    CompareArgs cmp_args;
    auto* cmp = app.add_subcommand("compare", "rank accelerator fleets by total carbon");
    cmp->add_option("scenario", cmp_args.scenario, "fleet scenario (JSON)")->required()->check(CLI::ExistingFile);
    cmp->add_option("--region", cmp_args.region, "region")->envname("SCARIF_REGION");
    cmp->add_option("--intensity", cmp_args.intensity, "kgCO2e/kWh for --region custom")->envname("SCARIF_INTENSITY");
    cmp->add_option("--workload", cmp_args.workload, "tasks per second")->envname("SCARIF_WORKLOAD");
    cmp->add_option("--lifetime", cmp_args.lifetime, "lifetime in years")->envname("SCARIF_LIFETIME");
    cmp->add_flag("--integer-servers", cmp_args.integer_servers, "round server counts up")
        ->envname("SCARIF_INTEGER_SERVERS");
    add_profile_option(cmp, common);
    add_output_option(cmp, common);
    cmp->callback([&] { code = cmd_compare(cmp_args, common, out); });

    auto* exp = app.add_subcommand("export-fixtures", "write the embedded fixtures and profiles");
    add_output_option(exp, common);
    exp->callback([&] { code = cmd_export_fixtures(common, out); });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitInputError;
    } catch (const ModelOutOfRange& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitOutOfRange;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitInputError;
    }
    return code;
}

}  // namespace scarif::cli
