#include <catch2/catch_amalgamated.hpp>

#include "aircoord/config.hpp"
#include "aircoord/io.hpp"
#include "aircoord/verify.hpp"

using namespace aircoord;

TEST_CASE("the bundled base config parses to the calibration") {
    const RunConfig rc = load_config(std::string(AIRCOORD_CONFIG_DIR) + "/base.cfg");
    CHECK(rc.params.alpha == 100.0);
    CHECK(rc.params.beta == 0.5);
    CHECK(rc.params.gamma == 0.2);
    CHECK(rc.params.freq == 5.0);
    CHECK(rc.params.xi == 3.0);
    CHECK(rc.params.invest_cost == 12.0);
    CHECK(rc.params.landing_fee == 30.0);
    CHECK(rc.params.cost_airline == 20.0);
    CHECK(rc.params.cost_airport == 45.0);
    CHECK(rc.params.mu == 0.18);
    CHECK(rc.params.w_prime == 1.0);
    CHECK(rc.psi == 0.68);
    CHECK_FALSE(rc.phi.has_value());  // optimized share
    CHECK(rc.reservation == 2500.0);
    CHECK(rc.contracts.size() == 5);
    REQUIRE(rc.sweep);
    CHECK(rc.sweep->parameter == "xi");
    CHECK(rc.sweep->grid().size() == 61);
    REQUIRE(rc.tax);
    CHECK(rc.tax->theta0 == 6.5);
    CHECK(rc.tax->grid().size() == 13);
    REQUIRE(rc.duopoly);
    CHECK(rc.duopoly->mode == "price");
}

TEST_CASE("config errors carry file and line anchors") {
    const auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text, "test.cfg");
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
        }
    };
    expect_error("[model]\nxi = abc\n", "test.cfg:2");
    expect_error("[model]\nnope = 1\n", "unknown model key");
    expect_error("[nope]\n", "unknown section");
    expect_error("xi = 3\n", "outside any section");
    expect_error("[model]\nxi 3\n", "expected 'key = value'");
    expect_error("[contract]\ncontracts = CENT,XYZ\n", "unknown structure");
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("config round trip is exact") {
    RunConfig rc;
    rc.params.mu = 0.1234567890123;
    rc.psi = 0.82;
    rc.phi = 0.25;
    rc.sweep.emplace();
    rc.sweep->parameter = "I";
    rc.sweep->min = 10.0;
    rc.sweep->max = 50.0;
    rc.sweep->steps = 17;
    rc.tax.emplace();
    rc.duopoly.emplace();
    rc.duopoly->r1 = 0.8;
    rc.seed = 99;

    const std::string text = serialize(rc);
    const RunConfig back = parse_config_text(text, "roundtrip.cfg");
    CHECK(serialize(back) == text);
    CHECK(back.params.mu == rc.params.mu);
    CHECK(back.phi == rc.phi);
    CHECK(back.sweep->steps == 17);
    CHECK(back.seed == 99);

    // a round-tripped run yields a byte-identical verification report
    RunConfig small = RunConfig{};
    small.seed = 7;
    const RunConfig small2 = parse_config_text(serialize(small), "rt.cfg");
    const auto a = verify::run_verification(small, 25);
    const auto b = verify::run_verification(small2, 25);
    CHECK(a.text() == b.text());
}

TEST_CASE("fixed-format numeric output") {
    CHECK(io::fmt6(166.94532544) == "166.945");
    CHECK(io::fmt6(0.68) == "0.68");
    CHECK(io::fmt6(2786.64581) == "2786.65");
    CHECK(io::fmt6(std::optional<double>{}) == "");

    io::Table t;
    t.header = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", ""}};
    CHECK(t.to_csv() == "a,b\n1,2\n3,\n");
    CHECK(t.to_csv().find('\r') == std::string::npos);  // LF only
}

TEST_CASE("equilibrium rows follow the fixed column order") {
    const ChannelParams pr;
    const Equilibrium cent = closed_form::eq_centralised(pr);
    const Equilibrium dcent = closed_form::eq_dcent(pr);
    const auto& cols = io::equilibrium_columns();
    REQUIRE(cols.size() == 17);
    CHECK(cols.front() == "structure");
    CHECK(cols.back() == "ge");

    const auto row_c = io::equilibrium_row(pr, cent);
    REQUIRE(row_c.size() == cols.size());
    CHECK(row_c[0] == "CENT");
    CHECK(row_c[2] == "");   // no fee in the benchmark
    CHECK(row_c[8] == "");   // no airline/airport split either
    CHECK(row_c[15] == "1"); // swe of the benchmark

    const auto row_d = io::equilibrium_row(pr, dcent);
    CHECK(row_d[0] == "D-CENT");
    CHECK_FALSE(row_d[2].empty());

    const auto j = io::equilibrium_json(pr, cent);
    CHECK(j["fee"].is_null());
    CHECK(j["welfare"].is_number());
}

TEST_CASE("atomic write replaces the destination") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(AIRCOORD_TEST_TMP) / "io";
    fs::create_directories(dir);
    const fs::path target = dir / "out.csv";
    io::atomic_write(target, "one\n");
    io::atomic_write(target, "two\n");
    std::ifstream in(target);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "two\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
}
