#pragma once

#include "horizon/market.hpp"
#include "horizon/utility.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace horizon {

enum class StepScheme { euler, log_euler };

struct SimConfig {
    std::int64_t n_paths = 10000;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    StepScheme scheme = StepScheme::log_euler;
    double y_min = 1e-6;        // factor reflection floor
    bool antithetic = false;
    double x_floor = 1e-10;     // wealth floor under plain euler stepping
    double step_budget = 1e10;  // cap on n_paths * steps
    int threads = 0;            // 0: HORIZON_APPROX_THREADS env, else hardware
};

// A trading strategy as a deterministic map (t, x, y) -> amount in the risky
// asset.
struct StrategyMap {
    std::string label;
    std::function<double(double t, double x, double y)> pi;
};

struct MCEstimate {
    double mean = 0.0;
    double std_err = 0.0;          // sample std of the iid units / sqrt(units)
    std::int64_t n_paths_effective = 0;
    std::int64_t n_units = 0;      // iid units: paths, or antithetic pairs
    double min_wealth = 0.0;
    double floor_fraction = 0.0;   // fraction of paths that ever hit the wealth floor
    double moment_sigma_pi2 = 0.0; // estimate of E int sigma^2 pi^2 ds
    double moment_drawdown = 0.0;  // estimate of E int X^{-2 gamma} sigma^2 pi^2 ds
    double gamma_moment = 1.0;     // gamma used in the drawdown moment
    double sup_sigma_pi_over_x = 0.0;
    double brownian_corr = 0.0;    // sample correlation of the two driving increments
    std::int64_t reflections = 0;  // factor-floor reflections across all paths
};

// Simulates the correlated wealth/factor pair under the given strategy and
// returns the Monte Carlo estimate of E[U_T(X_T)] with diagnostics.
// Identical (seed, config) inputs produce bit-identical results, serial or
// parallel.
MCEstimate simulate_expected_utility(const StrategyMap& strategy, const UtilitySpec& u,
                                     const MarketModel& model, double t0, double x0, double y0,
                                     double T, const SimConfig& cfg, double gamma_moment = 1.0);

struct AdmissibilityDiagnostics {
    MCEstimate half;   // at n_paths / 2
    MCEstimate full;   // at n_paths
    double gamma_used = 1.0;
    bool gamma_clamped = false;   // case-2 exponents were all <= 1
    bool floor_hit = false;
    bool moments_divergent = false;
    bool divergent = false;
};

// Empirical admissibility checks: the two moment integrals of the
// admissibility definition (gamma from the growth case, clamped to at least
// 1 + 1e-3 with a flag), the proportional-allocation bound sup|sigma pi / x|,
// and a doubling test that flags superlinear growth of the moment estimates.
AdmissibilityDiagnostics admissibility_diagnostics(const StrategyMap& strategy, const UtilitySpec& u,
                                                   const MarketModel& model, double t0, double x0,
                                                   double y0, double T, const SimConfig& cfg,
                                                   const GrowthCase& gc);

struct ConvergenceFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    int n_used = 0;
    int n_dropped = 0;  // exact coincidences dropped with a warning
};

// Least-squares slope of log|error| against log(T - t); ts must increase
// toward T and stay below it.
ConvergenceFit convergence_study(const std::function<double(double)>& abs_error_at_t,
                                 const std::vector<double>& ts, double T);

}  // namespace horizon
