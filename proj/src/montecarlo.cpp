#include "horizon/montecarlo.hpp"

#include "horizon/errors.hpp"
#include "horizon/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace horizon {

namespace {

// Compensated summation over a fixed index order; results are independent of
// how paths were scheduled across threads.
double kahan_sum(const Eigen::ArrayXd& v) {
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double y = v[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

int resolve_threads(int requested, std::int64_t units) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("HORIZON_APPROX_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    n = std::clamp(n, 1, 256);
    return static_cast<int>(std::min<std::int64_t>(n, std::max<std::int64_t>(units, 1)));
}

struct PathStats {
    double payoff = 0.0;
    double m1 = 0.0;       // int sigma^2 pi^2 ds
    double m2 = 0.0;       // int X^{-2 gamma} sigma^2 pi^2 ds
    double min_wealth = 0.0;
    double sup_ratio = 0.0;
    double c_ab = 0.0, c_aa = 0.0, c_bb = 0.0;  // increment cross/auto sums
    std::int64_t reflections = 0;
    bool floor_hit = false;
};

struct EngineParams {
    double t0, x0, y0, T, dt, gamma_moment, y_floor;
    std::int64_t steps;
};

PathStats simulate_path(const StrategyMap& strategy, const UtilitySpec& u, const MarketModel& model,
                        const SimConfig& cfg, const EngineParams& ep, std::uint64_t path_index,
                        double sign) {
    GaussianStream rng(cfg.seed, path_index);
    const double sqrt_dt = std::sqrt(ep.dt);
    const double rho = model.rho();
    const double rho_perp = std::sqrt(1.0 - rho * rho);

    PathStats ps;
    double x = ep.x0;
    double y = ep.y0;
    double log_x = std::log(ep.x0);
    ps.min_wealth = x;

    for (std::int64_t i = 0; i < ep.steps; ++i) {
        const double t = ep.t0 + static_cast<double>(i) * ep.dt;
        const double pi = strategy.pi(t, x, y);
        if (!std::isfinite(pi))
            throw simulation_error("strategy '" + strategy.label + "' returned a non-finite allocation on path " +
                                   std::to_string(path_index) + " at step " + std::to_string(i));
        const double sigma = model.sigma(y);
        const double lambda = model.lambda(y);
        const double sp = sigma * pi;
        const double sp_over_x = sp / x;
        ps.sup_ratio = std::max(ps.sup_ratio, std::abs(sp_over_x));
        ps.m1 += sp * sp * ep.dt;
        ps.m2 += std::pow(x, -2.0 * ep.gamma_moment) * sp * sp * ep.dt;

        const double z1 = sign * rng.next();
        const double z2 = sign * rng.next();
        const double dw1 = sqrt_dt * z1;
        const double dwy = rho * dw1 + rho_perp * sqrt_dt * z2;

        if (cfg.scheme == StepScheme::log_euler) {
            log_x += sp_over_x * (lambda - 0.5 * sp_over_x) * ep.dt + sp_over_x * dw1;
            x = std::exp(log_x);
            if (x < cfg.x_floor) {  // exp underflow guard; keeps the payoff evaluable
                x = cfg.x_floor;
                log_x = std::log(cfg.x_floor);
                ps.floor_hit = true;
            }
        } else {
            x += sp * (lambda * ep.dt + dw1);
            if (x < cfg.x_floor) {
                x = cfg.x_floor;
                ps.floor_hit = true;
            }
        }
        y += model.b(y) * ep.dt + model.a(y) * dwy;
        if (y < ep.y_floor) {
            y = 2.0 * ep.y_floor - y;
            ++ps.reflections;
        }
        if (!std::isfinite(x) || !std::isfinite(y))
            throw simulation_error("non-finite state on path " + std::to_string(path_index) + " at step " +
                                   std::to_string(i));
        ps.min_wealth = std::min(ps.min_wealth, x);
        ps.c_ab += dw1 * dwy;
        ps.c_aa += dw1 * dw1;
        ps.c_bb += dwy * dwy;
    }
    ps.payoff = u.derivative(0, x);
    return ps;
}

}  // namespace

MCEstimate simulate_expected_utility(const StrategyMap& strategy, const UtilitySpec& u,
                                     const MarketModel& model, double t0, double x0, double y0,
                                     double T, const SimConfig& cfg, double gamma_moment) {
    if (!(x0 > 0.0)) throw std::domain_error("simulation requires positive initial wealth");
    if (!(T >= t0)) throw std::invalid_argument("horizon precedes the initial time");
    if (cfg.n_paths < 1) throw std::invalid_argument("n_paths must be at least 1");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (T > t0 && cfg.dt > (T - t0) * (1.0 + 1e-12))
        throw std::invalid_argument("dt exceeds the simulation horizon");

    EngineParams ep;
    ep.t0 = t0;
    ep.x0 = x0;
    ep.y0 = y0;
    ep.T = T;
    ep.steps = T > t0 ? static_cast<std::int64_t>(std::ceil((T - t0) / cfg.dt - 1e-9)) : 0;
    ep.dt = ep.steps > 0 ? (T - t0) / static_cast<double>(ep.steps) : 0.0;
    ep.gamma_moment = gamma_moment;
    ep.y_floor = std::max(cfg.y_min, model.y_min());
    if (static_cast<double>(cfg.n_paths) * static_cast<double>(ep.steps) > cfg.step_budget)
        throw std::invalid_argument("n_paths * steps exceeds the configured budget");

    const std::int64_t n_units = cfg.antithetic ? (cfg.n_paths + 1) / 2 : cfg.n_paths;
    Eigen::ArrayXd payoff(n_units), m1(n_units), m2(n_units), c_ab(n_units), c_aa(n_units), c_bb(n_units);
    Eigen::ArrayXd min_w(n_units), sup_r(n_units);
    std::vector<std::int64_t> refl(static_cast<size_t>(n_units));
    std::vector<unsigned char> hit(static_cast<size_t>(n_units));

    auto run_unit = [&](std::int64_t unit) {
        if (cfg.antithetic) {
            const PathStats p = simulate_path(strategy, u, model, cfg, ep, static_cast<std::uint64_t>(unit), 1.0);
            const PathStats q = simulate_path(strategy, u, model, cfg, ep, static_cast<std::uint64_t>(unit), -1.0);
            payoff[unit] = 0.5 * (p.payoff + q.payoff);
            m1[unit] = 0.5 * (p.m1 + q.m1);
            m2[unit] = 0.5 * (p.m2 + q.m2);
            min_w[unit] = std::min(p.min_wealth, q.min_wealth);
            sup_r[unit] = std::max(p.sup_ratio, q.sup_ratio);
            c_ab[unit] = p.c_ab + q.c_ab;
            c_aa[unit] = p.c_aa + q.c_aa;
            c_bb[unit] = p.c_bb + q.c_bb;
            refl[static_cast<size_t>(unit)] = p.reflections + q.reflections;
            hit[static_cast<size_t>(unit)] = static_cast<unsigned char>((p.floor_hit ? 1 : 0) + (q.floor_hit ? 1 : 0));
        } else {
            const PathStats p = simulate_path(strategy, u, model, cfg, ep, static_cast<std::uint64_t>(unit), 1.0);
            payoff[unit] = p.payoff;
            m1[unit] = p.m1;
            m2[unit] = p.m2;
            min_w[unit] = p.min_wealth;
            sup_r[unit] = p.sup_ratio;
            c_ab[unit] = p.c_ab;
            c_aa[unit] = p.c_aa;
            c_bb[unit] = p.c_bb;
            refl[static_cast<size_t>(unit)] = p.reflections;
            hit[static_cast<size_t>(unit)] = p.floor_hit ? 1 : 0;
        }
    };

    const int n_threads = resolve_threads(cfg.threads, n_units);
    std::exception_ptr first_error;
    if (n_threads == 1) {
        for (std::int64_t i = 0; i < n_units; ++i) run_unit(i);
    } else {
        std::vector<std::thread> pool;
        std::mutex err_mutex;
        const std::int64_t chunk = (n_units + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
            const std::int64_t hi = std::min(lo + chunk, n_units);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::int64_t i = lo; i < hi; ++i) run_unit(i);
                } catch (...) {
                    std::scoped_lock lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    MCEstimate est;
    est.n_units = n_units;
    est.n_paths_effective = cfg.antithetic ? 2 * n_units : n_units;
    est.gamma_moment = gamma_moment;
    est.mean = kahan_sum(payoff) / static_cast<double>(n_units);
    if (n_units > 1) {
        const Eigen::ArrayXd centered = payoff - est.mean;
        const double var = kahan_sum(centered.square()) / static_cast<double>(n_units - 1);
        est.std_err = std::sqrt(var / static_cast<double>(n_units));
    }
    est.moment_sigma_pi2 = kahan_sum(m1) / static_cast<double>(n_units);
    est.moment_drawdown = kahan_sum(m2) / static_cast<double>(n_units);
    est.min_wealth = min_w.minCoeff();
    est.sup_sigma_pi_over_x = sup_r.maxCoeff();
    const double saa = kahan_sum(c_aa), sbb = kahan_sum(c_bb), sab = kahan_sum(c_ab);
    est.brownian_corr = (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
    std::int64_t total_refl = 0, total_hits = 0;
    for (auto v : refl) total_refl += v;
    for (auto v : hit) total_hits += v;
    est.reflections = total_refl;
    est.floor_fraction = static_cast<double>(total_hits) / static_cast<double>(est.n_paths_effective);
    return est;
}

AdmissibilityDiagnostics admissibility_diagnostics(const StrategyMap& strategy, const UtilitySpec& u,
                                                   const MarketModel& model, double t0, double x0,
                                                   double y0, double T, const SimConfig& cfg,
                                                   const GrowthCase& gc) {
    constexpr double kEpsAdm = 1e-3;
    AdmissibilityDiagnostics diag;
    diag.gamma_used = gc.gamma_admissibility();
    if (!gc.is_case1() && diag.gamma_used <= 1.0) {
        diag.gamma_used = 1.0 + kEpsAdm;
        diag.gamma_clamped = true;
    }

    SimConfig half_cfg = cfg;
    half_cfg.n_paths = std::max<std::int64_t>(1, cfg.n_paths / 2);
    diag.half = simulate_expected_utility(strategy, u, model, t0, x0, y0, T, half_cfg, diag.gamma_used);
    diag.full = simulate_expected_utility(strategy, u, model, t0, x0, y0, T, cfg, diag.gamma_used);

    const auto superlinear = [](double small, double big) {
        if (!std::isfinite(small) || !std::isfinite(big)) return true;
        return std::abs(big) > 2.0 * std::abs(small) + 1e-12;
    };
    diag.moments_divergent = superlinear(diag.half.moment_sigma_pi2, diag.full.moment_sigma_pi2) ||
                             superlinear(diag.half.moment_drawdown, diag.full.moment_drawdown);
    diag.floor_hit = diag.full.floor_fraction > 0.0 || diag.half.floor_fraction > 0.0;
    diag.divergent = diag.moments_divergent || diag.floor_hit;
    return diag;
}

ConvergenceFit convergence_study(const std::function<double(double)>& abs_error_at_t,
                                 const std::vector<double>& ts, double T) {
    if (ts.size() < 2) throw std::invalid_argument("convergence study needs at least two times");
    for (size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] < T)) throw std::invalid_argument("convergence times must precede the horizon");
        if (i > 0 && !(ts[i] > ts[i - 1]))
            throw std::invalid_argument("convergence times must increase toward the horizon");
    }
    std::vector<double> lx, ly;
    ConvergenceFit fit;
    for (double t : ts) {
        const double err = std::abs(abs_error_at_t(t));
        if (err == 0.0) {
            ++fit.n_dropped;  // exact coincidence carries no slope information
            continue;
        }
        lx.push_back(std::log(T - t));
        ly.push_back(std::log(err));
    }
    fit.n_used = static_cast<int>(lx.size());
    if (fit.n_used < 2) return fit;
    const Eigen::Map<const Eigen::ArrayXd> ax(lx.data(), static_cast<Eigen::Index>(lx.size()));
    const Eigen::Map<const Eigen::ArrayXd> ay(ly.data(), static_cast<Eigen::Index>(ly.size()));
    const double mx = ax.mean(), my = ay.mean();
    const double var = ((ax - mx) * (ax - mx)).sum();
    fit.slope = ((ax - mx) * (ay - my)).sum() / var;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

}  // namespace horizon
