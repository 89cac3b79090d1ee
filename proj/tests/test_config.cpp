#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qdr/config.hpp"

using namespace qdr;

namespace {

AppConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_CASE("quantities with SI prefixes") {
    CHECK(parse_quantity("7.65 pF", Dimension::Capacitance) == doctest::Approx(7.65e-12));
    CHECK(parse_quantity("200nA", Dimension::Current) == doctest::Approx(200e-9));
    CHECK(parse_quantity("40 pH", Dimension::Inductance) == doctest::Approx(40e-12));
    CHECK(parse_quantity("1 GHz", Dimension::AngularFrequency) == doctest::Approx(2 * kPi * 1e9));
    CHECK(parse_quantity("3e9 rad/s", Dimension::AngularFrequency) == doctest::Approx(3e9));
    CHECK(parse_quantity("0.1 Phi0", Dimension::Flux) == doctest::Approx(0.1));
    CHECK(parse_quantity("0.1", Dimension::Flux) == doctest::Approx(0.1));
    CHECK(parse_quantity("1.6e-4 Omega", Dimension::ModelUnit) == doctest::Approx(1.6e-4));
    CHECK(parse_quantity("0.006", Dimension::ModelUnit) == doctest::Approx(0.006));
}

TEST_CASE("wrong or missing units are rejected") {
    CHECK_THROWS_AS(parse_quantity("7.65 pH", Dimension::Capacitance), ConfigError);
    CHECK_THROWS_AS(parse_quantity("7.65", Dimension::Capacitance), ConfigError);
    CHECK_THROWS_AS(parse_quantity("abc pF", Dimension::Capacitance), ConfigError);
    CHECK_THROWS_AS(parse_quantity("", Dimension::Current), ConfigError);
    CHECK_THROWS_AS(parse_quantity("1 xA", Dimension::Current), ConfigError);
}

TEST_CASE("model section with a named set and overrides") {
    const AppConfig c = parse("[model]\nset = fig2-coupled\nf = 0.004\n[sweep]\nmodes = coupled\npoints = 5\n");
    CHECK(c.model.f == 0.004);
    CHECK(c.model.g == 0.0012);
    CHECK(c.sweep.points == 5);
    REQUIRE(c.sweep.modes.size() == 1);
    CHECK(c.sweep.modes[0] == QubitMode::Coupled);
}

TEST_CASE("circuit section maps to the model") {
    const AppConfig c = parse(
        "[circuit]\nC_s = 7.65 pF\nI_c0 = 200 nA\nI_p = 300 nA\nM = 40 pH\nphi_ex = 0.1\nI_0 = 1 nA\n"
        "Delta = 1 GHz\n[model]\ngamma = 1.6e-4\ntemp = 0.006\n");
    REQUIRE(c.circuit.has_value());
    CHECK(c.model.alpha > 0.0);
    CHECK(c.model.g > 0.0);
    CHECK(c.model.f > 0.0);
    CHECK(c.model.gamma == 1.6e-4);
}

TEST_CASE("malformed configs raise ConfigError") {
    CHECK_THROWS_AS(parse("[nonsense]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[model]\nfoo = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[model]\nOmega = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse("[model]\ntemp = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[model]\nset = fig9\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\npoints = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\nfrom = 1\nto = 0.9\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\nmodes = sideways\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\nrate_model = magic\n"), ConfigError);
    CHECK_THROWS_AS(parse("[circuit]\nC_s = 7.65 pH\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("mode and number lists") {
    const auto modes = parse_mode_list("up, down,coupled , detector-only");
    REQUIRE(modes.size() == 4);
    CHECK(modes[3] == QubitMode::DetectorOnly);
    CHECK(parse_mode_list("none").empty());
    const auto xs = parse_number_list("0.004, 0.006,0.008");
    REQUIRE(xs.size() == 3);
    CHECK(xs[1] == 0.006);
}

TEST_CASE("every shipped preset loads") {
    for (const char* name : {"fig0", "fig1", "fig2", "fig3", "fig4", "fig5"}) {
        const AppConfig c = load_config(std::string(QDR_TEST_PRESET_DIR) + "/" + name + ".cfg");
        CHECK(!c.out.empty());
    }
    CHECK(load_config(std::string(QDR_TEST_PRESET_DIR) + "/fig1.cfg").sweep.modes.at(0) == QubitMode::DetectorOnly);
    CHECK(load_config(std::string(QDR_TEST_PRESET_DIR) + "/fig4.cfg").sweep.f_list.size() == 3);
    CHECK(load_config(std::string(QDR_TEST_PRESET_DIR) + "/fig0.cfg").circuit.has_value());
    CHECK_THROWS_AS(load_preset("fig9"), ConfigError);
}
