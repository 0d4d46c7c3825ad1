#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "thzsim/errors.hpp"
#include "thzsim/scenario_io.hpp"

using namespace thzsim;

namespace {

const char* kMinimalConfig =
    "frequency_ghz = 275\n"
    "distance_m = 30\n"
    "gain_tx_dbi = 55\n"
    "gain_rx_dbi = 55\n"
    "aperture_radius_m = 0.1\n"
    "beam_waist_m = 0.2\n"
    "sigma_s_m = 0.04\n"
    "alpha = 2\n"
    "mu = 4\n"
    "k_t = 0\n"
    "k_r = 0\n"
    "p_over_n0_db = 25\n";

std::filesystem::path preset_path(const char* name) {
    return std::filesystem::path(THZSIM_PRESET_DIR) / name;
}

}  // namespace

TEST_CASE("preset scenarios parse with the documented values") {
    const Scenario fig1 = parse_scenario_file(preset_path("fig1.scenario"));
    CHECK(fig1.geometry.frequency_hz == 275e9);
    CHECK(fig1.geometry.distance_m == 30.0);
    CHECK(fig1.geometry.gain_tx_dbi == 55.0);
    CHECK(fig1.geometry.gain_rx_dbi == 55.0);
    CHECK(fig1.environment.temperature_k == 296.0);
    CHECK(fig1.environment.pressure_pa == 101325.0);
    CHECK(fig1.environment.relative_humidity == 0.5);
    CHECK(fig1.misalignment.aperture_radius_m == 0.1);
    CHECK(fig1.misalignment.beam_waist_m == 0.2);
    CHECK(fig1.misalignment.jitter_sigma_m == 0.04);
    CHECK(fig1.fading.alpha == 2.0);
    CHECK(fig1.fading.mu == 4.0);
    CHECK(fig1.fading.h_hat == 1.0);
    CHECK(fig1.impairments.k_t == 0.0);
    CHECK(fig1.impairments.k_r == 0.0);
    CHECK(fig1.budget.p_over_n0_db == 25.0);
    CHECK(fig1.absorption.mode() == AbsorptionProvider::Mode::none);
    CHECK(fig1.no_fading == false);

    const Scenario fig2 = parse_scenario_file(preset_path("fig2.scenario"));
    CHECK(fig2.geometry.frequency_hz == 300e9);
    CHECK(fig2.geometry.distance_m == 20.0);
    CHECK(fig2.misalignment.jitter_sigma_m == 0.01);
    CHECK(fig2.budget.p_over_n0_db == 20.0);
}

TEST_CASE("defaults fill in for omitted optional keys") {
    const Scenario sc = parse_scenario_text(kMinimalConfig);
    CHECK(sc.environment.temperature_k == 296.0);
    CHECK(sc.environment.pressure_pa == 101325.0);
    CHECK(sc.environment.relative_humidity == 0.5);
    CHECK(sc.fading.h_hat == 1.0);
    CHECK(sc.absorption.mode() == AbsorptionProvider::Mode::none);
    CHECK(sc.no_fading == false);
}

TEST_CASE("serialize / parse round-trips to a fixed point") {
    const Scenario first = parse_scenario_file(preset_path("fig1.scenario"));
    const std::string text = serialize_scenario(first);
    const Scenario second = parse_scenario_text(text);
    CHECK(first == second);
    CHECK(serialize_scenario(second) == text);  // canonical form is idempotent
}

TEST_CASE("parse errors carry line numbers and key names") {
    try {
        parse_scenario_text(std::string(kMinimalConfig) + "beam_length_m = 4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("beam_length_m") != std::string::npos);
        CHECK(e.line() == 13);
    }
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) + "mu = 4\n"),
                    ParseError);  // duplicate
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) + "k_t 0.3\n"),
                    ParseError);  // missing '='
    CHECK_THROWS_AS(
        parse_scenario_text("frequency_ghz = fast\n" + std::string(kMinimalConfig).substr(20)),
        ParseError);  // non-numeric value
}

TEST_CASE("missing and out-of-domain values are rejected") {
    // Drop the required mu line.
    std::string no_mu(kMinimalConfig);
    no_mu.erase(no_mu.find("mu = 4\n"), 7);
    CHECK_THROWS_AS(parse_scenario_text(no_mu), ValidationError);

    CHECK_THROWS_AS(
        parse_scenario_text(std::string(kMinimalConfig) + "relative_humidity = 1.5\n"),
        ValidationError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) + "temperature_k = -3\n"),
                    ValidationError);

    std::string bad_distance(kMinimalConfig);
    bad_distance.replace(bad_distance.find("distance_m = 30"), 15, "distance_m = -1");
    CHECK_THROWS_AS(parse_scenario_text(bad_distance), ValidationError);
}

TEST_CASE("absorption configuration variants") {
    const Scenario constant = parse_scenario_text(std::string(kMinimalConfig) +
                                                  "absorption_mode = constant\n"
                                                  "absorption_kappa_per_m = 0.0033\n");
    CHECK(constant.absorption.mode() == AbsorptionProvider::Mode::constant);
    CHECK(constant.absorption.constant_kappa() == 0.0033);

    // kappa without constant mode is a contradiction, not an ignored extra.
    CHECK_THROWS_AS(
        parse_scenario_text(std::string(kMinimalConfig) + "absorption_kappa_per_m = 0.01\n"),
        ValidationError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) +
                                        "absorption_mode = constant\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) +
                                        "absorption_mode = fog\n"),
                    ValidationError);

    // Table mode resolves the path against the scenario directory.
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "thzsim_scenario_io_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream table(dir / "window.csv");
        table << "frequency_ghz,kappa_per_m\n250,0.001\n320,0.002\n";
    }
    const Scenario tabled = parse_scenario_text(std::string(kMinimalConfig) +
                                                    "absorption_mode = table\n"
                                                    "absorption_table_path = window.csv\n",
                                                dir);
    CHECK(tabled.absorption.mode() == AbsorptionProvider::Mode::table);
    CHECK(tabled.absorption.knots().size() == 2);
    // The serialized form keeps the resolved path, so a replay works from any
    // working directory.
    const std::string text = serialize_scenario(tabled);
    CHECK(text.find((dir / "window.csv").string()) != std::string::npos);
    const Scenario replayed = parse_scenario_text(text);
    CHECK(replayed.absorption.knots() == tabled.absorption.knots());
    std::filesystem::remove_all(dir);
}

TEST_CASE("no_fading flag parses strictly") {
    const Scenario on =
        parse_scenario_text(std::string(kMinimalConfig) + "no_fading = true\n");
    CHECK(on.no_fading == true);
    CHECK_THROWS_AS(parse_scenario_text(std::string(kMinimalConfig) + "no_fading = yes\n"),
                    ParseError);
}

TEST_CASE("missing scenario file raises an I/O error") {
    CHECK_THROWS_AS(parse_scenario_file("/nonexistent/missing.scenario"), IoError);
}
