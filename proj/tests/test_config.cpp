#include "horizon/config.hpp"

#include "horizon/errors.hpp"

#include <doctest.h>

using namespace horizon;

TEST_CASE("the bundled preset parses into the published experiment") {
    const auto cfg = parse_config_text(builtin_preset("fouque_cv"));
    CHECK(cfg.utility.family() == UtilityFamily::power);
    CHECK(cfg.utility.power_gamma() == 3.0);
    CHECK(cfg.market.kind() == "chacko_viceira");
    CHECK(cfg.market.lambda(27.9345) * cfg.market.sigma(27.9345) == doctest::Approx(0.0811));
    CHECK(cfg.horizon == 2.0);
    CHECK(cfg.partition.intervals() == 4);
    CHECK(cfg.sim.n_paths == 100000);
    CHECK(cfg.sim.antithetic);
    CHECK(cfg.sim.scheme == StepScheme::log_euler);
    CHECK(cfg.initial.t0 == 1.9);
    CHECK(cfg.initial.y0 == 27.9345);
    CHECK(cfg.t_grid.size() == 20);
    CHECK(cfg.x_grid.size() == 20);
    CHECK(cfg.y_grid.size() == 10);
    CHECK(cfg.x_grid[0] == doctest::Approx(0.5));
    CHECK(cfg.x_grid[19] == doctest::Approx(2.0));
    CHECK(cfg.table_t == std::vector<double>{1.5, 1.9});
    // power gamma = 3 implies the symmetric case-2 growth reference
    CHECK_FALSE(cfg.growth_case.is_case1());
    CHECK(cfg.growth_case.alpha() == 3.0);
}

TEST_CASE("growth case inference and override") {
    const auto log_cfg = parse_config_text(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})");
    CHECK(log_cfg.growth_case.is_case1());

    const auto mix_cfg = parse_config_text(R"({"utility":{"family":"mixture","c_a":1,"alpha":0.5,"c_b":1,"beta":2},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})");
    CHECK_FALSE(mix_cfg.growth_case.is_case1());

    const auto forced = parse_config_text(R"({"utility":{"family":"log"},
        "growth_case":{"case":2,"alpha":2,"beta":3},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})");
    CHECK_FALSE(forced.growth_case.is_case1());
    CHECK(forced.growth_case.beta() == 3.0);
}

TEST_CASE("custom exponential diagnostic family") {
    const auto cfg = parse_config_text(R"({"utility":{"family":"custom_exponential"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})");
    CHECK(cfg.utility.family() == UtilityFamily::custom);
    CHECK(cfg.utility.derivative(0, 1.0) == doctest::Approx(-std::exp(-1.0)));
    CHECK(cfg.utility.derivative(1, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(cfg.growth_case.is_case1());
}

TEST_CASE("field-level errors carry the offending path") {
    const auto expect_error = [](const char* text, const char* needle) {
        try {
            parse_config_text(text);
            FAIL_CHECK("expected config_error for: " << text);
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error(R"({"market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})",
                 "utility");
    expect_error(R"({"utility":{"family":"log"},"T":1})", "market");
    expect_error(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0}})", "T");
    expect_error(R"({"utility":{"family":"exp"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1})",
                 "utility.family");
    expect_error(R"({"utility":{"family":"power","gamma":3},
        "market":{"kind":"constant","mu":0.1,"sigma":0,"b":0,"a":0,"rho":0},"T":1})", "market");
    expect_error(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},
        "T":1,"grids":{"t":{"min":0,"max":1}}})", "grids.t");
    expect_error(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},
        "T":1,"simulation":{"n_paths":-5}})", "n_paths");
    expect_error(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},
        "T":1,"scheme":{"mode":"sideways","n":2}})", "scheme.mode");
    expect_error("not json", "JSON");
}

TEST_CASE("grid forms: explicit array and ranges") {
    const auto cfg = parse_config_text(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":1,
        "grids":{"t":[0.1,0.5,0.9],"x":{"min":1,"max":100,"count":3,"spacing":"log"}}})");
    CHECK(cfg.t_grid.size() == 3);
    CHECK(cfg.t_grid[1] == 0.5);
    CHECK(cfg.x_grid.size() == 3);
    CHECK(cfg.x_grid[1] == doctest::Approx(10.0));
}

TEST_CASE("partition from explicit knots must end at the horizon") {
    const auto good = parse_config_text(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":2,
        "scheme":{"knots":[0,0.5,1.0,1.5,2.0]}})");
    CHECK(good.partition.intervals() == 4);
    CHECK_THROWS_AS(parse_config_text(R"({"utility":{"family":"log"},
        "market":{"kind":"constant","mu":0.1,"sigma":0.2,"b":0,"a":0,"rho":0},"T":2,
        "scheme":{"knots":[0,0.5,1.0]}})"),
                    config_error);
}

TEST_CASE("unknown preset raises a config error") {
    CHECK_THROWS_AS(load_preset("no_such_preset"), config_error);
    CHECK(builtin_preset("no_such_preset").empty());
    CHECK_FALSE(builtin_preset("fouque_cv").empty());
}
