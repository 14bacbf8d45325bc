// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and are not configurable.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scarif/dataset.hpp"
#include "scarif/fitting.hpp"
#include "scarif/model.hpp"
#include "scarif/profile.hpp"
#include "scarif/scenario.hpp"

using namespace scarif;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

ServerConfig r740() {
    ServerConfig c;
    c.cpu_core_count = 56;
    c.hdd_gb = 1000.0;
    c.memory_gb = 64.0;
    c.release_year = 2017;
    c.vendor = Vendor::Dell;
    return c;
}

const AcceleratorSpec kV100{"V100", 815.0, 12, std::nullopt};
const std::vector<std::string> kRegions{"AZ", "CA", "TX", "NY"};

// 1. CPU-part anchor.
void cpu_anchor(Outcome& o) {
    const double v = cpu_part(56, ModelCoefficients::paper());
    o.detail << "cpu_part(56) = " << v;
    o.require(std::abs(v - 280.56) <= 1e-9, "280.56");
}

// 2. K6 pipeline.
void k6_pipeline(Outcome& o) {
    const auto profile = paper_r740_profile();
    const double k6 = k6_calibrate(280.56, 26.71);
    const double part = accelerator_part({"V100", 0.0, 0, 15.69}, k6, profile.chip_carbon);
    const std::array accels{kV100};
    const double total =
        embodied_system(r740(), accels, profile.coefficients, profile.k6(), profile.chip_carbon).total;
    o.detail << "k6 = " << k6 << ", V100 part = " << part << ", R740+V100 total = " << total;
    o.require(std::abs(part - 164.81) <= 0.02, "164.81 +/- 0.02");
    o.require(std::abs(total - 2158.52) <= 0.02, "2158.52 +/- 0.02");
}

// 3. Utilization normalization.
void utilization(Outcome& o) {
    const double u = normalize_utilization(2.96, 1.84, 1.0);
    o.detail << "util = " << u;
    o.require(std::abs(u - 0.622) <= 0.001, "0.622 +/- 0.001");
}

// 4. Energy anchors.
void energy(Outcome& o) {
    const double e1 = annual_energy_kwh({0.0, devices::v100(), 20.0, 1.0});
    const double e2 = annual_energy_kwh({0.0, devices::a100(), 20.0, normalize_utilization(2.96, 1.84, 1.0)});
    o.detail << "system 1 = " << e1 << " kWh, system 2 = " << e2 << " kWh";
    o.require(std::abs(e1 - 2365.2) / 2365.2 <= 0.005, "2365.2 within 0.5%");
    o.require(std::abs(e2 - 1304.2) / 1304.2 <= 0.005, "1304.2 within 0.5%");
}

// 5. Breakeven proportionality.
void breakeven_ratio(Outcome& o) {
    const auto table = CarbonIntensityTable::defaults();
    BreakevenInput in;
    in.new_embodied_kg = 2542.0;
    in.old_annual_kwh = annual_energy_kwh({0.0, devices::v100(), 20.0, 1.0});
    in.new_annual_kwh = annual_energy_kwh({0.0, devices::a100(), 20.0, normalize_utilization(2.96, 1.84, 1.0)});
    in.horizon_years = 15.0;
    const auto curves = breakeven_sweep(in, kRegions, table);

    double max_spread = 0.0;
    const double ref = *curves[0].payback_years * curves[0].intensity;
    for (const auto& c : curves) max_spread = std::max(max_spread, std::abs(*c.payback_years * c.intensity - ref) / ref);
    const double tx = *curves[2].payback_years;
    const double ny = *curves[3].payback_years;
    const double ratio = ny / tx;

    BreakevenInput rounded = in;
    rounded.new_annual_kwh = rounded.old_annual_kwh - 1061.0;
    const double tx_rounded = *breakeven(rounded, "TX", table).payback_years;

    o.detail << "years x CI spread = " << max_spread << ", NY/TX = " << ratio << " (published 9.8/4.2 = "
             << 9.8 / 4.2 << "), TX = " << tx << " y (dKWh 1061: " << tx_rounded
             << " y; the published 4.2 y is not reproducible from the published inputs)";
    o.require(max_spread <= 1e-12, "proportionality to 1e-12");
    o.require(std::abs(ratio - 9.8 / 4.2) / (9.8 / 4.2) <= 0.005, "NY/TX within 0.5%");
    o.require(std::abs(tx_rounded - 5.47) <= 0.005, "TX 5.47 y");
}

// 6. Dell fixture statistics.
void dell_fixture(Outcome& o) {
    const auto rows = load_dell_fixture();
    std::vector<double> predictions;
    for (const auto& r : rows) predictions.push_back(r.predicted_kg);
    const auto s = validate_against_fixture(predictions, rows);
    const auto over_04 = std::count_if(s.per_record_error_over_sigma.begin(), s.per_record_error_over_sigma.end(),
                                       [](double r) { return r > 0.4; });
    const auto over_slack = std::count_if(s.per_record_error_over_sigma.begin(),
                                          s.per_record_error_over_sigma.end(), [](double r) { return r > 0.408; });
    o.detail << "rows = " << rows.size() << ", mean = " << s.mean_ratio << ", max = " << s.max_ratio
             << ", rows > 0.4 = " << over_04 << ", rows > 0.408 = " << over_slack;
    o.require(rows.size() == 37, "37 rows");
    o.require(s.mean_ratio <= 0.17, "mean <= 0.17");
    o.require(std::abs(s.mean_ratio - 0.1492152522) <= 1e-9, "mean pinned by oracle");
    o.require(std::abs(s.max_ratio - 0.4066733654) <= 1e-9, "max pinned by oracle");
    o.require(over_slack <= 1, "at most one row above 0.408");
}

// 7. Fleet ordering.
void fleet_ordering(Outcome& o) {
    auto make = [](const std::string& name, int fpgas) {
        FleetCandidate c;
        c.name = name;
        c.server = r740();
        c.host_static_power_w = 20.0;
        if (fpgas == 0) {
            c.accelerators = {kV100};
            c.device = devices::v100();
        } else {
            c.accelerators.assign(static_cast<std::size_t>(fpgas), AcceleratorSpec{"ZCU102", 245.0, 16, 9.4293});
            c.device = devices::zcu102();
            c.devices_per_server = fpgas;
        }
        return c;
    };
    const std::vector<FleetCandidate> candidates{make("1-GPU", 0), make("1-FPGA", 1), make("8-FPGA", 8)};
    FleetOptions opt;
    opt.region = "TX";
    opt.lifetime_years = 4.0;
    const auto ranked = fleet_compare(candidates, opt, paper_r740_profile(), CarbonIntensityTable::defaults());
    for (const auto& r : ranked) o.detail << r.name << " " << r.total_kg << "  ";
    o.require(ranked.size() == 3 && ranked[0].name == "1-GPU" && ranked[1].name == "8-FPGA" &&
                  ranked[2].name == "1-FPGA",
              "1-GPU < 8-FPGA < 1-FPGA");
}

// 8. Fitting oracle.
void fitting_oracle(Outcome& o) {
    auto cfg = [](int cores, double mem, int year, double ssd, double hdd) {
        ServerConfig c;
        c.cpu_core_count = cores;
        c.memory_gb = mem;
        c.release_year = year;
        c.ssd_gb = ssd;
        c.hdd_gb = hdd;
        c.vendor = Vendor::HP;
        return c;
    };
    auto truth = [](const ServerConfig& c) {
        return 5.01 * c.cpu_core_count + 0.16 * c.ssd_gb + 0.04 * c.hdd_gb + 0.95 * c.memory_gb +
               83.08 * (c.release_year - kBaseYear) - 1100.0;
    };
    const std::array configs{cfg(8, 32, 2014, 240, 0),     cfg(24, 128, 2016, 0, 2000), cfg(56, 64, 2017, 480, 1000),
                             cfg(40, 512, 2019, 960, 0),   cfg(96, 256, 2021, 0, 4000),
                             cfg(128, 1024, 2023, 1920, 8000)};
    std::vector<FitSample> samples;
    for (const auto& c : configs) samples.push_back({c, truth(c)});
    const auto r = fit(samples);
    const auto& k = r.coefficients;
    const double err = std::max({std::abs(k.k1 - 5.01), std::abs(k.k4 - 0.95), std::abs(k.k5 - 83.08),
                                 std::abs(k.d + 1100.0)});
    o.detail << "max recovery error = " << err;
    o.require(err <= 1e-6, "recovery to 1e-6");

    auto degenerate_message = [&]() -> std::string {
        const std::vector<FitSample> same(5, samples[2]);
        try {
            (void)fit(same);
        } catch (const DegenerateFit& e) {
            return e.dependent_columns().empty() ? "" : e.dependent_columns().front();
        }
        return "";
    };
    const std::string d1 = degenerate_message();
    const std::string d2 = degenerate_message();
    o.detail << ", identical configs -> dependent column '" << d1 << "'";
    o.require(!d1.empty() && d1 == d2, "deterministic rank-deficiency rejection");

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> cores(4, 256), year(2012, 2024);
    std::uniform_real_distribution<double> mem(16.0, 1024.0);
    std::normal_distribution<double> noise(0.0, 40.0);
    FitOptions opt;
    opt.k2 = 0.0;
    opt.k3 = 0.0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FitSample> data;
        for (int i = 0; i < 10 + trial; ++i) {
            const auto c = cfg(cores(rng), mem(rng), year(rng), 0.0, 0.0);
            data.push_back({c, truth(c) + noise(rng)});
        }
        const auto base = fit(data, opt);
        for (double scale : {-3.0, 0.001, 2.5, 1e4}) {
            auto scaled = data;
            for (auto& s : scaled) s.reported_kg *= scale;
            const auto r2 = fit(scaled, opt);
            auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
            worst = std::max({worst, rel(r2.coefficients.k1, scale * base.coefficients.k1),
                              rel(r2.coefficients.k4, scale * base.coefficients.k4),
                              rel(r2.coefficients.k5, scale * base.coefficients.k5),
                              rel(r2.coefficients.d, scale * base.coefficients.d)});
        }
    }
    o.detail << ", scale-equivariance worst rel. error = " << worst;
    o.require(worst <= 1e-9, "scale equivariance to 1e-9");
}

// 9. Invariant suite.
void invariants(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto profile = paper_r740_profile();
    const auto& k = profile.coefficients;
    const double k6 = profile.k6();
    std::mt19937 rng(20240501);
    std::uniform_int_distribution<int> cores(200, 256), dcores(1, 40), year(2010, 2030), dyear(1, 9);
    std::uniform_real_distribution<double> size(0.0, 16000.0), mem(0.0, 2048.0), delta(0.0, 500.0), chip(0.0, 50.0);
    std::uniform_real_distribution<double> area(1.0, 1000.0), ratio(0.01, 100.0);

    int linearity = 0, closure = 0, monotone = 0, offsets = 0, roundtrip = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        ServerConfig c;
        c.cpu_core_count = cores(rng);
        c.ssd_gb = size(rng);
        c.hdd_gb = size(rng);
        c.memory_gb = mem(rng);
        c.release_year = year(rng);
        c.vendor = static_cast<Vendor>(t % 4);
        const double e0 = embodied_server(c, k).total;

        // Linearity and monotonicity in each feature.
        const double ds = delta(rng), dh = delta(rng), dm = delta(rng);
        const int dc = dcores(rng), dy = dyear(rng);
        const std::array<std::pair<std::function<void(ServerConfig&)>, double>, 5> steps{{
            {[&](ServerConfig& x) { x.cpu_core_count += dc; }, k.k1 * dc},
            {[&](ServerConfig& x) { x.ssd_gb += ds; }, k.k2 * ds},
            {[&](ServerConfig& x) { x.hdd_gb += dh; }, k.k3 * dh},
            {[&](ServerConfig& x) { x.memory_gb += dm; }, k.k4 * dm},
            {[&](ServerConfig& x) { x.release_year += dy; }, k.k5 * dy},
        }};
        bool lin = true, mono = true;
        for (const auto& [apply, expected] : steps) {
            auto changed = c;
            apply(changed);
            const double e1 = embodied_server(changed, k).total;
            lin = lin && std::abs((e1 - e0) - expected) <= 1e-9 * std::max({1.0, std::abs(e0), std::abs(e1)});
            mono = mono && e1 >= e0;
        }
        linearity += lin;
        monotone += mono;

        // Breakdown closure with accelerators.
        std::vector<AcceleratorSpec> accels(static_cast<std::size_t>(t % 4), AcceleratorSpec{"acc", 0.0, 0, chip(rng)});
        const auto b = embodied_system(c, accels, k, k6, profile.chip_carbon);
        closure += b.total == b.sum_of_parts();

        // Vendor offsets against HP.
        auto hp = c, dell = c, lenovo = c;
        hp.vendor = Vendor::HP;
        dell.vendor = Vendor::Dell;
        lenovo.vendor = Vendor::Lenovo;
        const double ehp = embodied_server(hp, k).total;
        offsets += std::abs((ehp - embodied_server(dell, k).total) - 400.0) <= 1e-9 &&
                   std::abs((ehp - embodied_server(lenovo, k).total) - 900.0) <= 1e-9;

        // K6 round trip.
        const AcceleratorSpec spec{"acc", area(rng), t % 2 ? 12 : 14, std::nullopt};
        const double kk = ratio(rng);
        const double back = k6_calibrate(accelerator_part(spec, kk, profile.chip_carbon),
                                         chip_embodied(spec, profile.chip_carbon));
        roundtrip += std::abs(back - kk) / kk <= 1e-12;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.detail << trials << " trials: linearity " << linearity << ", closure " << closure << ", monotonicity "
             << monotone << ", vendor offsets " << offsets << ", K6 round trip " << roundtrip << "; " << seconds
             << " s";
    o.require(linearity == trials, "linearity");
    o.require(closure == trials, "closure");
    o.require(monotone == trials, "monotonicity");
    o.require(offsets == trials, "vendor offsets 400/900");
    o.require(roundtrip == trials, "K6 round trip");
    o.require(seconds < 60.0, "runtime under one minute");
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria{
        {"1 cpu-part anchor", cpu_anchor},
        {"2 k6 pipeline", k6_pipeline},
        {"3 utilization normalization", utilization},
        {"4 energy anchors", energy},
        {"5 breakeven proportionality", breakeven_ratio},
        {"6 dell fixture statistics", dell_fixture},
        {"7 fleet ordering", fleet_ordering},
        {"8 fitting oracle", fitting_oracle},
        {"9 invariant suite", invariants},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        o.detail.precision(10);
        try {
            check(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
