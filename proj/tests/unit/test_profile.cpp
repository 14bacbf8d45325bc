#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "scarif/json_io.hpp"
#include "scarif/profile.hpp"

using namespace scarif;
using doctest::Approx;

TEST_SUITE("profile") {

TEST_CASE("built-in profiles") {
    const auto eq3 = builtin_profile("paper-eq3");
    CHECK(eq3.coefficients.d == -1100.0);
    CHECK(eq3.coefficients.intercept_for(Vendor::Dell) == -1500.0);
    CHECK(eq3.coefficients.intercept_for(Vendor::Lenovo) == -2000.0);
    CHECK(eq3.coefficients.intercept_for(Vendor::HP) == -1100.0);
    CHECK(eq3.coefficients.intercept_for(Vendor::Generic) == -1100.0);

    const auto r740 = builtin_profile("paper-R740");
    CHECK(r740.coefficients.intercept_for(Vendor::Dell) == 200.0);

    // Derived from the anchor pair, never stored.
    CHECK(eq3.k6() == Approx(10.5039311119).epsilon(1e-10));
    CHECK(r740.k6() == eq3.k6());
}

TEST_CASE("unknown profile name lists the available ones") {
    try {
        (void)resolve_profile("paper-unknown");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("paper-eq3") != std::string::npos);
        CHECK(msg.find("paper-R740") != std::string::npos);
    }
}

TEST_CASE("shipped profile files match the built-ins") {
    for (const auto& name : builtin_profile_names()) {
        const auto loaded = load_profile(test::data_path("profiles/" + name + ".json"));
        const auto builtin = builtin_profile(name);
        CHECK(loaded.name == name);
        CHECK(profile_to_json(loaded) == profile_to_json(builtin));
    }
}

TEST_CASE("profile JSON round trip and path resolution") {
    test::TempDir dir;
    auto p = paper_r740_profile();
    p.name = "custom";
    p.coefficients.k1 = 4.0;
    p.chip_carbon.set(7, 0.03);
    const auto path = dir / "custom.json";
    save_profile(p, path);
    const auto back = resolve_profile(path.string());
    CHECK(profile_to_json(back) == profile_to_json(p));
    CHECK(back.k6() == Approx(4.0 * 56 / 26.71));
}

TEST_CASE("profile JSON errors") {
    using nlohmann::json;
    json j = profile_to_json(paper_eq3_profile());

    SUBCASE("missing coefficient") {
        j["coefficients"].erase("k3");
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("negative slope") {
        j["coefficients"]["k1"] = -1.0;
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("bad chip node key") {
        j["chip_carbon"]["seven"] = 0.1;
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("non-positive chip rate") {
        j["chip_carbon"]["7"] = 0.0;
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("unknown vendor offset") {
        j["vendor_offsets"]["ibm"] = 1.0;
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("anchor node missing from the table") {
        j["chip_carbon"].erase("14");
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("unsupported schema version") {
        j["schema_version"] = 2;
        CHECK_THROWS_AS(profile_from_json(j, "x"), ConfigError);
    }
    SUBCASE("chip table defaults to the anchored one") {
        j.erase("chip_carbon");
        CHECK(profile_from_json(j, "x").chip_carbon.entries() == ChipCarbonTable::anchored_default().entries());
    }
}

}  // TEST_SUITE
