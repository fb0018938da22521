#pragma once

#include "horizon/market.hpp"
#include "horizon/montecarlo.hpp"
#include "horizon/scheme.hpp"
#include "horizon/utility.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace horizon {

struct InitialState {
    double t0 = 0.0;
    double x0 = 1.0;
    double y0 = 0.0;
};

struct CheckOptions {
    double bound_constant = 10.0;
    Eigen::ArrayXd y_grid;       // model-bounds grid
    Eigen::ArrayXd growth_grid;  // utility growth grid
    double growth_eps = kDefaultGrowthEps;
};

struct SandwichOptions {
    double safety = 1.5;
    int tau_count = 200;
};

// One experiment: utility + growth case, market, horizon, evaluation grids,
// partition, simulation settings, initial state, and command options.
struct ExperimentConfig {
    UtilitySpec utility = UtilitySpec::log_utility();
    GrowthCase growth_case = GrowthCase::case1();
    MarketModel market = MarketModel::constant(0.0, 1.0, 0.0, 0.0, 0.0, 0.0);
    double horizon = 1.0;

    Eigen::ArrayXd t_grid, x_grid, y_grid;
    Partition partition = Partition::uniform(1, 1.0);
    SchemeDerivMode scheme_mode = SchemeDerivMode::full_expression;
    SchemeBackend scheme_backend = SchemeBackend::auto_select;
    SimConfig sim;
    InitialState initial;
    std::vector<std::string> strategies = {"pi_hat"};
    std::vector<double> table_t = {1.5, 1.9};
    CheckOptions check;
    SandwichOptions sandwich_opts;
    std::string output;
};

// Parses the JSON text of an experiment config; malformed input raises
// config_error naming the offending field.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Bundled presets (also shipped under presets/); empty when unknown.
std::string builtin_preset(const std::string& name);

// Resolves --preset: a presets/<name>.json file takes precedence, then the
// bundled copy.  Unknown names raise config_error.
ExperimentConfig load_preset(const std::string& name);

}  // namespace horizon
