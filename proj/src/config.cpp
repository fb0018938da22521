#include "horizon/config.hpp"

#include "horizon/errors.hpp"
#include "horizon/grid.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace horizon {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error("config." + where + ": " + what);
}

double get_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
    if (!j[key].is_number()) fail(where + "." + key, "expected a number");
    return j[key].get<double>();
}

double get_number_or(const json& j, const std::string& where, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(where + "." + key, "expected a number");
    return j[key].get<double>();
}

Eigen::ArrayXd parse_grid(const json& j, const std::string& where) {
    if (j.is_array()) {
        Eigen::ArrayXd g(j.size());
        Eigen::Index i = 0;
        for (const auto& v : j) {
            if (!v.is_number()) fail(where, "grid entries must be numbers");
            g[i++] = v.get<double>();
        }
        return g;
    }
    if (j.is_object()) {
        const double lo = get_number(j, where, "min");
        const double hi = get_number(j, where, "max");
        const int n = static_cast<int>(get_number(j, where, "count"));
        if (n < 1) fail(where, "count must be at least 1");
        const std::string spacing = j.value("spacing", "linear");
        if (spacing == "log") return log_grid(lo, hi, n);
        if (spacing == "linear") return linear_grid(lo, hi, n);
        fail(where + ".spacing", "expected \"linear\" or \"log\"");
    }
    fail(where, "expected an array of numbers or {min, max, count[, spacing]}");
}

UtilitySpec parse_utility(const json& j) {
    if (!j.is_object()) fail("utility", "expected an object");
    const std::string family = j.value("family", "");
    if (family == "power") return UtilitySpec::power(get_number(j, "utility", "gamma"));
    if (family == "log") return UtilitySpec::log_utility();
    if (family == "mixture")
        return UtilitySpec::power_mixture(get_number(j, "utility", "c_a"), get_number(j, "utility", "alpha"),
                                          get_number(j, "utility", "c_b"), get_number(j, "utility", "beta"));
    if (family == "custom_exponential") {
        // diagnostic-only family: strictly increasing and concave but with the
        // wrong asymptotics, so the growth check must reject it
        return UtilitySpec::custom(
            [](int k, double x) {
                const double sign = (k % 2 == 0) ? -1.0 : 1.0;
                return sign * std::exp(-x);
            },
            64, "custom_exponential");
    }
    if (family.empty()) fail("utility", "missing \"family\"");
    fail("utility.family", "unsupported family \"" + family + "\" (power, log, mixture, custom_exponential)");
}

GrowthCase infer_growth_case(const UtilitySpec& u) {
    switch (u.family()) {
        case UtilityFamily::power:
        case UtilityFamily::power_mixture: {
            const double g = u.power_gamma();
            // mixture stores max(alpha, beta); a matching symmetric case works
            return GrowthCase::case2(g, g);
        }
        case UtilityFamily::log:
        case UtilityFamily::custom:
            return GrowthCase::case1();
    }
    return GrowthCase::case1();
}

GrowthCase parse_growth_case(const json& j, const UtilitySpec& u) {
    if (!j.is_object()) fail("growth_case", "expected an object");
    const int c = static_cast<int>(get_number(j, "growth_case", "case"));
    if (c == 1) return GrowthCase::case1();
    if (c == 2)
        return GrowthCase::case2(get_number(j, "growth_case", "alpha"), get_number(j, "growth_case", "beta"));
    (void)u;
    fail("growth_case.case", "expected 1 or 2");
}

MarketModel parse_market(const json& j) {
    if (!j.is_object()) fail("market", "expected an object");
    const std::string kind = j.value("kind", "");
    try {
        if (kind == "constant")
            return MarketModel::constant(get_number(j, "market", "mu"), get_number(j, "market", "sigma"),
                                         get_number(j, "market", "b"), get_number(j, "market", "a"),
                                         get_number(j, "market", "rho"), get_number_or(j, "market", "r", 0.0));
        if (kind == "chacko_viceira")
            return MarketModel::chacko_viceira(get_number(j, "market", "mu"), get_number(j, "market", "m"),
                                               get_number(j, "market", "beta"), get_number(j, "market", "rho"),
                                               get_number_or(j, "market", "r", 0.0),
                                               get_number_or(j, "market", "y_min", 1e-6));
    } catch (const std::invalid_argument& e) {
        fail("market", e.what());
    }
    if (kind.empty()) fail("market", "missing \"kind\"");
    fail("market.kind", "unsupported kind \"" + kind + "\" (constant, chacko_viceira)");
}

Partition parse_partition(const json& j, const std::string& where, double T) {
    if (!j.is_object()) fail(where, "expected an object");
    try {
        if (j.contains("knots")) {
            std::vector<double> knots;
            for (const auto& v : j["knots"]) {
                if (!v.is_number()) fail(where + ".knots", "knots must be numbers");
                knots.push_back(v.get<double>());
            }
            if (!knots.empty() && std::abs(knots.back() - T) > 1e-12) fail(where + ".knots", "last knot must equal T");
            return Partition::from_knots(std::move(knots));
        }
        return Partition::uniform(static_cast<int>(get_number(j, where, "n")), T);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

SimConfig parse_simulation(const json& j) {
    SimConfig cfg;
    if (!j.is_object()) fail("simulation", "expected an object");
    cfg.n_paths = static_cast<std::int64_t>(get_number_or(j, "simulation", "n_paths", static_cast<double>(cfg.n_paths)));
    cfg.dt = get_number_or(j, "simulation", "dt", cfg.dt);
    cfg.seed = static_cast<std::uint64_t>(get_number_or(j, "simulation", "seed", 0.0));
    cfg.y_min = get_number_or(j, "simulation", "y_min", cfg.y_min);
    if (j.contains("antithetic")) {
        if (!j["antithetic"].is_boolean()) fail("simulation.antithetic", "expected a boolean");
        cfg.antithetic = j["antithetic"].get<bool>();
    }
    const std::string scheme = j.value("scheme", "log_euler");
    if (scheme == "euler")
        cfg.scheme = StepScheme::euler;
    else if (scheme == "log_euler")
        cfg.scheme = StepScheme::log_euler;
    else
        fail("simulation.scheme", "expected \"euler\" or \"log_euler\"");
    if (cfg.n_paths < 1) fail("simulation.n_paths", "must be at least 1");
    if (!(cfg.dt > 0.0)) fail("simulation.dt", "must be positive");
    return cfg;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be an object");

    ExperimentConfig cfg;
    if (!j.contains("utility")) fail("utility", "missing");
    cfg.utility = parse_utility(j["utility"]);
    if (!j.contains("market")) fail("market", "missing");
    cfg.market = parse_market(j["market"]);
    if (!j.contains("T")) fail("T", "missing");
    if (!j["T"].is_number() || !(j["T"].get<double>() > 0.0)) fail("T", "expected a positive number");
    cfg.horizon = j["T"].get<double>();

    cfg.growth_case = j.contains("growth_case") ? parse_growth_case(j["growth_case"], cfg.utility)
                                                : infer_growth_case(cfg.utility);

    if (j.contains("grids")) {
        const auto& g = j["grids"];
        if (!g.is_object()) fail("grids", "expected an object");
        if (g.contains("t")) cfg.t_grid = parse_grid(g["t"], "grids.t");
        if (g.contains("x")) cfg.x_grid = parse_grid(g["x"], "grids.x");
        if (g.contains("y")) cfg.y_grid = parse_grid(g["y"], "grids.y");
    }

    cfg.partition = Partition::uniform(4, cfg.horizon);
    if (j.contains("scheme")) {
        cfg.partition = parse_partition(j["scheme"], "scheme", cfg.horizon);
        const std::string mode = j["scheme"].value("mode", "full");
        if (mode == "full")
            cfg.scheme_mode = SchemeDerivMode::full_expression;
        else if (mode == "anchor")
            cfg.scheme_mode = SchemeDerivMode::anchor_only;
        else
            fail("scheme.mode", "expected \"full\" or \"anchor\"");
        const std::string backend = j["scheme"].value("backend", "auto");
        if (backend == "auto")
            cfg.scheme_backend = SchemeBackend::auto_select;
        else if (backend == "jets")
            cfg.scheme_backend = SchemeBackend::taylor_jets;
        else if (backend == "fd")
            cfg.scheme_backend = SchemeBackend::finite_difference;
        else
            fail("scheme.backend", "expected \"auto\", \"jets\" or \"fd\"");
    }

    if (j.contains("simulation")) cfg.sim = parse_simulation(j["simulation"]);

    if (j.contains("initial")) {
        const auto& ini = j["initial"];
        cfg.initial.t0 = get_number_or(ini, "initial", "t0", 0.0);
        cfg.initial.x0 = get_number_or(ini, "initial", "x0", 1.0);
        cfg.initial.y0 = get_number(ini, "initial", "y0");
        if (!(cfg.initial.x0 > 0.0)) fail("initial.x0", "must be positive");
        if (cfg.initial.t0 < 0.0 || cfg.initial.t0 > cfg.horizon) fail("initial.t0", "must lie in [0, T]");
    }

    if (j.contains("strategies")) {
        cfg.strategies.clear();
        for (const auto& s : j["strategies"]) {
            if (!s.is_string()) fail("strategies", "entries must be strings");
            cfg.strategies.push_back(s.get<std::string>());
        }
        if (cfg.strategies.empty()) fail("strategies", "must not be empty");
    }

    if (j.contains("table_t")) {
        cfg.table_t.clear();
        for (const auto& v : j["table_t"]) cfg.table_t.push_back(v.get<double>());
    }

    cfg.check.y_grid = linear_grid(1.0, 100.0, 200);
    cfg.check.growth_grid = log_grid(1e-4, 1e4, 400);
    if (j.contains("check")) {
        const auto& c = j["check"];
        cfg.check.bound_constant = get_number_or(c, "check", "bound_constant", cfg.check.bound_constant);
        cfg.check.growth_eps = get_number_or(c, "check", "growth_eps", cfg.check.growth_eps);
        if (c.contains("y")) cfg.check.y_grid = parse_grid(c["y"], "check.y");
        if (c.contains("growth_grid")) cfg.check.growth_grid = parse_grid(c["growth_grid"], "check.growth_grid");
    }

    if (j.contains("sandwich")) {
        const auto& s = j["sandwich"];
        cfg.sandwich_opts.safety = get_number_or(s, "sandwich", "safety", cfg.sandwich_opts.safety);
        cfg.sandwich_opts.tau_count =
            static_cast<int>(get_number_or(s, "sandwich", "tau_count", cfg.sandwich_opts.tau_count));
    }

    if (j.contains("output")) {
        if (!j["output"].is_string()) fail("output", "expected a string");
        cfg.output = j["output"].get<std::string>();
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string builtin_preset(const std::string& name) {
    if (name == "fouque_cv") {
        return R"json({
  "utility": {"family": "power", "gamma": 3},
  "market": {"kind": "chacko_viceira", "mu": 0.0811, "m": 27.9345, "beta": 1.12, "rho": 0.5241, "r": 0.0},
  "T": 2.0,
  "grids": {
    "t": {"min": 0.0, "max": 1.99, "count": 20},
    "x": {"min": 0.5, "max": 2.0, "count": 20, "spacing": "log"},
    "y": {"min": 15.0, "max": 45.0, "count": 10}
  },
  "scheme": {"n": 4},
  "simulation": {"n_paths": 100000, "dt": 0.001, "seed": 20240601, "scheme": "log_euler", "antithetic": true},
  "initial": {"t0": 1.9, "x0": 1.0, "y0": 27.9345},
  "strategies": ["pi_hat"],
  "table_t": [1.5, 1.9]
})json";
    }
    return {};
}

ExperimentConfig load_preset(const std::string& name) {
    const std::filesystem::path file = std::filesystem::path("presets") / (name + ".json");
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) return load_config_file(file.string());
    const std::string text = builtin_preset(name);
    if (text.empty()) throw config_error("config: unknown preset '" + name + "'");
    return parse_config_text(text);
}

}  // namespace horizon
