#pragma once

#include "horizon/market.hpp"
#include "horizon/utility.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <optional>

namespace horizon {

// Value and partial derivatives of a candidate value function at one point.
struct ValuePartials {
    double value = 0.0;
    double dt = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxx = 0.0;
    double dxy = 0.0;
    double dyy = 0.0;
};

enum class SurrogateKind { u_hat, sub_solution, super_solution, oracle, scheme };

// Anything that maps (t, x, y) to a value and its partials: the first-order
// approximation, the sandwich bounds, the exact solution, a scheme iterate.
struct ValueSurrogate {
    SurrogateKind kind = SurrogateKind::u_hat;
    double horizon = 0.0;
    std::function<ValuePartials(double t, double x, double y)> eval;

    ValuePartials operator()(double t, double x, double y) const { return eval(t, x, y); }
};

// First-order correction u1 = -lambda(y)^2/2 * U'(x)^2 / U''(x); non-negative
// by concavity.
double u1(double x, double y, const UtilitySpec& u, const MarketModel& model);

// Second-order expansion coefficient, as the sum of its eight product terms.
double u2(double x, double y, const UtilitySpec& u, const MarketModel& model);
std::array<double, 8> u2_terms(double x, double y, const UtilitySpec& u, const MarketModel& model);

// The first-order value approximation U_T(x) + (T-t) u1(x,y) with all
// partials in closed form (utility derivatives through order 4; lambda
// derivatives through order 2).
ValuePartials value_hat_partials(double t, double x, double y, const UtilitySpec& u,
                                 const MarketModel& model, double T);
ValueSurrogate make_value_hat(const UtilitySpec& u, const MarketModel& model, double T);

// Left-hand side of the reduced HJB equation evaluated on the given partials:
// dt - (lambda dx + rho a dxy)^2 / (2 dxx) + a^2/2 dyy + b dy.
double hjb_residual(const ValuePartials& p, const MarketModel& model, double y);
double hjb_residual(const ValueSurrogate& s, double t, double x, double y, const MarketModel& model);

// Maximizing allocation (-lambda dx - rho a dxy) / (sigma dxx); requires
// concavity in wealth (dxx < 0).
double pi_from_partials(const ValuePartials& p, const MarketModel& model, double y);

// Near-optimal strategy: the maximizer applied to the first-order surrogate.
double pi_hat(double t, double x, double y, const UtilitySpec& u, const MarketModel& model, double T);

// Grid on which the sandwich constant and validity window are estimated:
// x and y for the sup of |a_i|/h, tau = T - t (ascending) for the residual
// sign bracketing.
struct SandwichGrid {
    Eigen::ArrayXd x;
    Eigen::ArrayXd y;
    Eigen::ArrayXd tau;
};

struct SandwichBounds {
    double c2 = 0.0;
    // Largest time-to-horizon for which the sub-solution residual stayed
    // positive and the super-solution residual negative on the grid; empty
    // when the first grid time already fails ("not established").
    std::optional<double> delta;
    ValueSurrogate lower;
    ValueSurrogate upper;
};

// Sub/super-solution pair U_hat -/+ c2 (T-t)^2 h(x).  c2 is the grid estimate
// of (8 max_i sup |a_i|/h) scaled by the safety factor, plus 1; the +1 floor
// is exact, the safety factor hedges the gap between grid sup and true sup.
SandwichBounds sandwich(const UtilitySpec& u, const MarketModel& model, double T, const GrowthCase& gc,
                        const SandwichGrid& grid, double safety = 1.5);

}  // namespace horizon
