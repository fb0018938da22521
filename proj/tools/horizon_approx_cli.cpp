// Batch front door: loads a JSON experiment config (or a bundled preset),
// runs assumption checks / closed-form evaluations / simulations, and writes
// deterministic CSV.  Exit codes: 0 success, 1 assumption failure, 2
// usage/config error, 3 runtime numerical error.

#include "horizon/config.hpp"
#include "horizon/csv.hpp"
#include "horizon/errors.hpp"
#include "horizon/grid.hpp"
#include "horizon/montecarlo.hpp"
#include "horizon/oracle.hpp"
#include "horizon/scheme.hpp"
#include "horizon/surrogate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace horizon;

constexpr int kExitOk = 0;
constexpr int kExitAssumption = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::optional<CRRAParams> oracle_params(const ExperimentConfig& cfg) {
    if (cfg.utility.family() != UtilityFamily::power) return std::nullopt;
    if (cfg.market.kind() != "chacko_viceira") return std::nullopt;
    const double y_ref = cfg.initial.y0 > 0.0 ? cfg.initial.y0 : 1.0;
    const double mu = cfg.market.mu(y_ref);
    const double r = cfg.market.rate();
    const double beta_vol = cfg.market.a(1.0);  // a(1) = beta under this kind
    const double m = cfg.market.b(1.0) + 1.0;   // b(y) = m - y
    return CRRAParams(cfg.utility.power_gamma(), mu, m, beta_vol, cfg.market.rho(), r, cfg.horizon);
}

double gamma_moment_for(const GrowthCase& gc) {
    const double g = gc.gamma_admissibility();
    if (!gc.is_case1() && g <= 1.0) return 1.0 + 1e-3;
    return g;
}

SandwichGrid sandwich_grid_for(const ExperimentConfig& cfg) {
    SandwichGrid g;
    g.x = cfg.x_grid.size() > 0 ? cfg.x_grid : log_grid(0.5 * cfg.initial.x0, 2.0 * cfg.initial.x0, 50);
    const double y0 = cfg.initial.y0;
    g.y = cfg.y_grid.size() > 0
              ? cfg.y_grid
              : linear_grid(std::max(cfg.market.y_min(), 0.5 * y0), y0 > 0.0 ? 1.5 * y0 : 1.0, 20);
    const double cap = std::min(1.0, cfg.horizon);
    const int n = std::max(2, cfg.sandwich_opts.tau_count);
    g.tau = linear_grid(cap / n, cap * (1.0 - 1e-9), n);
    return g;
}

StrategyMap make_strategy(const std::string& label, const ExperimentConfig& cfg,
                          const std::optional<CRRAParams>& oracle, const SchemeSurrogate& scheme) {
    const UtilitySpec u = cfg.utility;
    const MarketModel model = cfg.market;
    const double T = cfg.horizon;
    if (label == "zero") return {"zero", [](double, double, double) { return 0.0; }};
    if (label == "pi_hat")
        return {"pi_hat", [u, model, T](double t, double x, double y) { return pi_hat(t, x, y, u, model, T); }};
    if (label == "merton") {
        if (u.family() != UtilityFamily::power) throw config_error("strategy 'merton' needs a power utility");
        const double y0 = cfg.initial.y0;
        const MertonParams mp{u.power_gamma(), model.lambda(y0), model.sigma(y0), T};
        return {"merton", [mp](double, double x, double) { return merton_portfolio(x, mp); }};
    }
    if (label == "scheme")
        return {"scheme", [scheme](double t, double x, double y) { return scheme.portfolio(t, x, y); }};
    if (label == "oracle") {
        if (!oracle) throw config_error("strategy 'oracle' needs a power utility and a chacko_viceira market");
        const CRRAParams p = *oracle;
        return {"oracle", [p](double t, double x, double y) { return crra_exact_portfolio(t, x, y, p); }};
    }
    throw config_error("unknown strategy '" + label + "' (zero, pi_hat, merton, scheme, oracle)");
}

int cmd_check(const ExperimentConfig& cfg, std::ostream& out) {
    const GrowthReport growth =
        check_growth_conditions(cfg.utility, cfg.growth_case, cfg.check.growth_grid, cfg.check.growth_eps);
    out << "utility '" << cfg.utility.label() << "' growth conditions (eps = " << cfg.check.growth_eps << ")\n";
    for (const auto& c : growth.conditions) {
        out << "  order " << c.order << ": inf " << CsvWriter::format_double(c.ratio_min) << ", sup "
            << CsvWriter::format_double(c.ratio_max) << (c.pass ? "  pass" : "  FAIL") << "\n";
    }
    out << "  increasing: " << (growth.monotone_ok ? "yes" : "NO") << ", concave: "
        << (growth.concave_ok ? "yes" : "NO") << "\n";
    out << "  growth check: " << (growth.pass ? "PASS" : "FAIL") << "\n";

    if (!cfg.growth_case.is_case1() && cfg.growth_case.gamma_admissibility() <= 1.0)
        out << "  note: case-2 exponents are all <= 1; the admissibility moment uses gamma = 1.001\n";

    const ModelBoundsReport bounds =
        validate_model_bounds(cfg.market, cfg.check.y_grid, cfg.check.bound_constant);
    out << "market '" << cfg.market.kind() << "' coefficient bound (budget " << cfg.check.bound_constant
        << "): sup " << CsvWriter::format_double(bounds.sup) << " at y = "
        << CsvWriter::format_double(bounds.argmax_y) << (bounds.pass ? "  pass" : "  WARNING (advisory)")
        << "\n";

    return growth.pass ? kExitOk : kExitAssumption;
}

int cmd_table1(const ExperimentConfig& cfg, std::ostream& out) {
    const auto oracle = oracle_params(cfg);
    if (!oracle) throw config_error("table1 needs a power utility and a chacko_viceira market");
    const double y0 = cfg.initial.y0;
    const double gamma = cfg.utility.power_gamma();
    const auto uhat = make_value_hat(cfg.utility, cfg.market, cfg.horizon);

    CsvWriter csv(out);
    csv.banner();
    csv.header({"t", "T", "U_coeff", "Uhat_coeff", "abs_err", "piU_coeff", "pihat_coeff", "pi_abs_err"});
    for (double t : cfg.table_t) {
        const double u_exact = crra_exact_value(t, 1.0, y0, *oracle);
        const double u_hat = uhat(t, 1.0, y0).value;
        const double pi_exact = crra_exact_portfolio(t, 1.0, y0, *oracle);
        const double pi_approx = pi_hat(t, 1.0, y0, cfg.utility, cfg.market, cfg.horizon);

        // the table reports pure  c * x^{1-gamma}  and  c * x  shapes; verify
        // at a second wealth before quoting the x = 1 coefficients
        const double u_shape = crra_exact_value(t, 2.0, y0, *oracle) * std::pow(2.0, gamma - 1.0);
        const double pi_shape = crra_exact_portfolio(t, 2.0, y0, *oracle) / 2.0;
        if (std::abs(u_shape - u_exact) > 1e-8 * std::abs(u_exact) ||
            std::abs(pi_shape - pi_exact) > 1e-8 * std::abs(pi_exact))
            throw std::runtime_error("table1: value or portfolio is not of the reported x-shape");

        csv.row({t, cfg.horizon, u_exact, u_hat, std::abs(u_exact - u_hat), pi_exact, pi_approx,
                 std::abs(pi_exact - pi_approx)});
    }
    return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.t_grid.size() == 0) throw config_error("grids.t: empty");
    if (cfg.x_grid.size() == 0) throw config_error("grids.x: empty");
    if (cfg.y_grid.size() == 0) throw config_error("grids.y: empty");

    const auto oracle = oracle_params(cfg);
    const auto uhat = make_value_hat(cfg.utility, cfg.market, cfg.horizon);
    const SchemeSurrogate scheme(cfg.partition, cfg.utility, cfg.market, cfg.scheme_mode, cfg.scheme_backend);
    const SandwichBounds sb =
        sandwich(cfg.utility, cfg.market, cfg.horizon, cfg.growth_case, sandwich_grid_for(cfg),
                 cfg.sandwich_opts.safety);
    const bool merton_ok = cfg.utility.family() == UtilityFamily::power;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CsvWriter csv(out);
    csv.banner();
    csv.header({"t", "x", "y", "U_exact", "U_hat", "U_lower", "U_upper", "pi_exact", "pi_hat", "pi_merton",
                "pi_scheme", "hjb_residual_hat"});
    for (Eigen::Index it = 0; it < cfg.t_grid.size(); ++it) {
        const double t = cfg.t_grid[it];
        for (Eigen::Index ix = 0; ix < cfg.x_grid.size(); ++ix) {
            const double x = cfg.x_grid[ix];
            for (Eigen::Index iy = 0; iy < cfg.y_grid.size(); ++iy) {
                const double y = cfg.y_grid[iy];
                const ValuePartials ph = uhat(t, x, y);
                const double merton =
                    merton_ok
                        ? merton_portfolio(
                              x, {cfg.utility.power_gamma(), cfg.market.lambda(y), cfg.market.sigma(y), cfg.horizon})
                        : nan;
                csv.row({t, x, y, oracle ? crra_exact_value(t, x, y, *oracle) : nan, ph.value,
                         sb.lower(t, x, y).value, sb.upper(t, x, y).value,
                         oracle ? crra_exact_portfolio(t, x, y, *oracle) : nan,
                         pi_from_partials(ph, cfg.market, y), merton, scheme.portfolio(t, x, y),
                         hjb_residual(ph, cfg.market, y)});
            }
        }
    }

    csv.comment("sandwich c2 " + CsvWriter::format_double(sb.c2) + " delta " +
                (sb.delta ? CsvWriter::format_double(*sb.delta) : std::string("not-established")));
    if (oracle) {
        std::vector<double> ts;
        for (Eigen::Index it = 0; it < cfg.t_grid.size(); ++it)
            if (cfg.t_grid[it] < cfg.horizon) ts.push_back(cfg.t_grid[it]);
        const double x0 = cfg.initial.x0, y0 = cfg.initial.y0;
        const auto fit = convergence_study(
            [&](double t) { return std::abs(crra_exact_value(t, x0, y0, *oracle) - uhat(t, x0, y0).value); },
            ts, cfg.horizon);
        csv.comment("convergence_slope " + CsvWriter::format_double(fit.slope) + " n_used " +
                    std::to_string(fit.n_used));
    } else {
        csv.comment("convergence_slope nan (no closed-form reference for this config)");
    }
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
    const double t0 = cfg.initial.t0, x0 = cfg.initial.x0, y0 = cfg.initial.y0;
    if (cfg.market.kind() == "chacko_viceira" && !(y0 >= cfg.market.y_min()))
        throw config_error("initial.y0: required above the factor floor for this market");

    const auto oracle = oracle_params(cfg);
    const SchemeSurrogate scheme(cfg.partition, cfg.utility, cfg.market, cfg.scheme_mode, cfg.scheme_backend);
    const SandwichBounds sb =
        sandwich(cfg.utility, cfg.market, cfg.horizon, cfg.growth_case, sandwich_grid_for(cfg),
                 cfg.sandwich_opts.safety);
    const double tau = cfg.horizon - t0;
    const double bound = sb.c2 * tau * tau * cfg.growth_case.weight_h(x0);
    const double gamma_m = gamma_moment_for(cfg.growth_case);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double exact = oracle ? crra_exact_value(t0, x0, y0, *oracle) : nan;

    CsvWriter csv(out);
    csv.banner();
    csv.header({"t0", "strategy", "n_paths", "dt", "antithetic", "mc_mean", "mc_se", "exact", "gap",
                "bound_c2_tau2_h", "min_wealth", "floor_fraction", "moment_sigma_pi2", "moment_drawdown",
                "sup_sigma_pi_over_x", "brownian_corr", "reflections"});
    for (const auto& label : cfg.strategies) {
        const StrategyMap strat = make_strategy(label, cfg, oracle, scheme);
        const MCEstimate est =
            simulate_expected_utility(strat, cfg.utility, cfg.market, t0, x0, y0, cfg.horizon, cfg.sim, gamma_m);
        csv.row({t0, strat.label, est.n_paths_effective, cfg.sim.dt,
                 static_cast<std::int64_t>(cfg.sim.antithetic ? 1 : 0), est.mean, est.std_err, exact,
                 oracle ? std::abs(est.mean - exact) : nan, bound, est.min_wealth, est.floor_fraction,
                 est.moment_sigma_pi2, est.moment_drawdown, est.sup_sigma_pi_over_x, est.brownian_corr,
                 est.reflections});
    }
    return kExitOk;
}

int cmd_scheme_eval(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.t_grid.size() == 0) throw config_error("grids.t: empty");
    if (cfg.x_grid.size() == 0) throw config_error("grids.x: empty");
    if (cfg.y_grid.size() == 0) throw config_error("grids.y: empty");
    const SchemeSurrogate scheme(cfg.partition, cfg.utility, cfg.market, cfg.scheme_mode, cfg.scheme_backend);
    const auto uhat = make_value_hat(cfg.utility, cfg.market, cfg.horizon);

    CsvWriter csv(out);
    csv.banner();
    csv.comment("scheme intervals " + std::to_string(cfg.partition.intervals()) + " mode " +
                (cfg.scheme_mode == SchemeDerivMode::full_expression ? "full" : "anchor") + " backend " +
                (scheme.uses_finite_differences() ? "finite-difference (lower accuracy)" : "taylor-jets"));
    csv.header({"t", "x", "y", "scheme_value", "scheme_pi", "uhat_value", "pi_hat"});
    for (Eigen::Index it = 0; it < cfg.t_grid.size(); ++it)
        for (Eigen::Index ix = 0; ix < cfg.x_grid.size(); ++ix)
            for (Eigen::Index iy = 0; iy < cfg.y_grid.size(); ++iy) {
                const double t = cfg.t_grid[it], x = cfg.x_grid[ix], y = cfg.y_grid[iy];
                const ValuePartials ps = scheme.eval(t, x, y);
                csv.row({t, x, y, ps.value, pi_from_partials(ps, cfg.market, y), uhat(t, x, y).value,
                         pi_hat(t, x, y, cfg.utility, cfg.market, cfg.horizon)});
            }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form small-horizon portfolio approximations: checks, tables, sweeps, simulation"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--config", config_path, "experiment config (JSON)")->expected(1);
    app.add_option("--preset", preset_name, "bundled preset name (e.g. fouque_cv)")->expected(1);
    app.add_option("--out", out_path, "output file (default: stdout)")->expected(1);
    app.add_option("--seed", seed, "override simulation seed")->each([&](const std::string&) { seed_given = true; });

    auto* c_check = app.add_subcommand("check", "growth-condition and model-bound reports");
    auto* c_table = app.add_subcommand("table1", "closed-form vs first-order values and portfolios");
    auto* c_sweep = app.add_subcommand("sweep", "grid sweep of all surrogates and portfolios");
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo expected utility under chosen strategies");
    auto* c_scheme = app.add_subcommand("scheme-eval", "recursive finite-horizon surrogate on a grid");
    for (auto* sub : {c_check, c_table, c_sweep, c_sim, c_scheme}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty() && !preset_name.empty())
            throw config_error("--config and --preset are mutually exclusive");
        if (!config_path.empty())
            cfg = load_config_file(config_path);
        else if (!preset_name.empty())
            cfg = load_preset(preset_name);
        else if (c_table->parsed())
            cfg = load_preset("fouque_cv");
        else
            throw config_error("a --config file or --preset name is required");
        if (seed_given) cfg.sim.seed = seed;
        if (!out_path.empty()) cfg.output = out_path;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output.empty()) {
        file.open(cfg.output, std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot open output file '" << cfg.output << "'\n";
            return kExitUsage;
        }
        out = &file;
    }

    try {
        if (c_check->parsed()) return cmd_check(cfg, *out);
        if (c_table->parsed()) return cmd_table1(cfg, *out);
        if (c_sweep->parsed()) return cmd_sweep(cfg, *out);
        if (c_sim->parsed()) return cmd_simulate(cfg, *out);
        if (c_scheme->parsed()) return cmd_scheme_eval(cfg, *out);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
