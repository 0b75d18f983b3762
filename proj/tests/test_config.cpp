#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "igw/config.hpp"
#include "igw/format.hpp"

using namespace igw;

namespace {

RunConfig parse(const std::string& text, RunConfig base = {}) {
    std::istringstream in(text);
    return parse_config(in, std::move(base));
}

} // namespace

TEST_CASE("full configuration round trip") {
    const std::string text =
        "# run parameters\n"
        "m_hat = 2\n"
        "n_hat = 3   # trailing comment\n"
        "N = 1.5\n"
        "eps = 0.02\n"
        "\n"
        "M = 48\n"
        "branch = minus\n"
        "format = json\n"
        "out = run/out.json\n"
        "seed = 987654321\n"
        "gap_threshold = 5e-4\n"
        "t_end = 250\n"
        "dt = 0.01\n"
        "y = 0.5 1.0  2.5\n"
        "y_range = 0.1 10 20\n"
        "tol_resonance = 1e-11\n"
        "tol_frequency = 1e-7\n";
    const RunConfig cfg = parse(text);
    CHECK(cfg.m_hat == 2);
    CHECK(cfg.n_hat == 3);
    CHECK(cfg.N == 1.5);
    CHECK(cfg.eps == 0.02);
    CHECK(cfg.M == 48);
    CHECK(cfg.branch == Branch::Minus);
    CHECK(cfg.format == OutputFormat::Json);
    CHECK(cfg.out == "run/out.json");
    CHECK(cfg.seed == 987654321u);
    CHECK(cfg.gap_threshold == 5e-4);
    CHECK(cfg.t_end == 250.0);
    CHECK(cfg.dt == 0.01);
    REQUIRE(cfg.ys.size() == 3);
    CHECK(cfg.ys[1] == 1.0);
    CHECK(cfg.has_range);
    CHECK(cfg.y_from == 0.1);
    CHECK(cfg.y_to == 10.0);
    CHECK(cfg.samples == 20);
    CHECK(cfg.tol("resonance", 0.0) == 1e-11);
    CHECK(cfg.tol("frequency", 0.0) == 1e-7);
    CHECK(cfg.tol("unset", 0.25) == 0.25);

    const PrimaryWave pw = cfg.wave();
    CHECK(pw.m_hat == 2);
    CHECK(pw.n_hat == 3);
    CHECK(pw.buoyancy_N == 1.5);
    CHECK(pw.epsilon == 0.02);
}

TEST_CASE("unspecified keys keep the base values") {
    RunConfig base;
    base.M = 64;
    base.eps = 0.04;
    const RunConfig cfg = parse("n_hat = 5\n", base);
    CHECK(cfg.n_hat == 5);
    CHECK(cfg.M == 64);
    CHECK(cfg.eps == 0.04);
    CHECK_FALSE(cfg.has_range);
}

TEST_CASE("parse errors name the line") {
    auto message = [](const std::string& text) {
        try {
            parse(text);
        } catch (const std::invalid_argument& ex) {
            return std::string(ex.what());
        }
        return std::string("no error");
    };
    CHECK(message("m_hat = 1\nbogus line\n").find("config line 2") == 0);
    CHECK(message("mystery = 3\n").find("unknown key") != std::string::npos);
    CHECK(message("eps = fast\n").find("expected a number") != std::string::npos);
    CHECK(message("M = 12.5\n").find("integer") != std::string::npos);
    CHECK(message("branch = up\n").find("plus") != std::string::npos);
    CHECK(message("y_range = 1 2\n").find("y_range") != std::string::npos);
    CHECK(message("y =\n").find("at least one") != std::string::npos);
    CHECK(message(" = 3\n").find("empty key") != std::string::npos);
}

TEST_CASE("missing config file") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/igw.conf"), std::runtime_error);
}

TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 6.02214076e23, 0.0, -2.5}) {
        const std::string s = fmt17(v);
        CHECK(std::stod(s) == v);
    }
}
