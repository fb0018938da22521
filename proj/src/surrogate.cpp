#include "horizon/surrogate.hpp"

#include "horizon/errors.hpp"

#include <cmath>

namespace horizon {

namespace {

struct UtilityDerivs {
    double u1, u2, u3, u4;  // U', U'', U^(3), U^(4)
};

UtilityDerivs utility_derivs(const UtilitySpec& u, double x) {
    UtilityDerivs d{u.derivative(1, x), u.derivative(2, x), u.derivative(3, x), u.derivative(4, x)};
    if (d.u2 == 0.0) throw singularity_error("U_T'' vanished at x = " + std::to_string(x));
    return d;
}

// R = U'^2 / U'' and its first two x-derivatives.
struct RatioDerivs {
    double r, r1, r2;
};

RatioDerivs ratio_derivs(const UtilityDerivs& d) {
    const double q = d.u1 / d.u2;  // U'/U''
    RatioDerivs rd;
    rd.r = d.u1 * q;
    rd.r1 = 2.0 * d.u1 - q * q * d.u3;
    rd.r2 = 2.0 * d.u2 - 2.0 * d.u1 * d.u3 / d.u2 - q * q * d.u4 + 2.0 * q * q * d.u3 * d.u3 / d.u2;
    return rd;
}

}  // namespace

double u1(double x, double y, const UtilitySpec& u, const MarketModel& model) {
    const auto d = utility_derivs(u, x);
    const double lam = model.lambda(y);
    return -0.5 * lam * lam * d.u1 * d.u1 / d.u2;
}

std::array<double, 8> u2_terms(double x, double y, const UtilitySpec& u, const MarketModel& model) {
    const auto d = utility_derivs(u, x);
    const double lam = model.lambda(y);
    const double lam1 = model.lambda_prime(y);
    const double lam2 = model.lambda_second(y);
    const double a = model.a(y);
    const double b = model.b(y);
    const double rho = model.rho();

    const double s = d.u1 * d.u1 / d.u2;                       // U'^2 / U''
    const double t3 = std::pow(d.u1 / d.u2, 3);                // U'^3 / U''^3
    const double lam4 = lam * lam * lam * lam;

    return {
        s * 0.25 * lam4,
        -s * 0.5 * b * lam * lam1,
        s * rho * a * lam * lam * lam1,
        -s * 0.25 * a * a * lam1 * lam1,
        -s * 0.25 * a * a * lam * lam2,
        -t3 * 0.5 * rho * a * lam * lam * lam1 * d.u3,
        -t3 * 0.25 * lam4 * d.u1 * d.u3 * d.u3 / (d.u2 * d.u2),
        t3 * 0.125 * lam4 * d.u1 * d.u4 / d.u2,
    };
}

double u2(double x, double y, const UtilitySpec& u, const MarketModel& model) {
    const auto terms = u2_terms(x, y, u, model);
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

ValuePartials value_hat_partials(double t, double x, double y, const UtilitySpec& u,
                                 const MarketModel& model, double T) {
    const auto d = utility_derivs(u, x);
    const auto rd = ratio_derivs(d);
    const double tau = T - t;
    const double lam = model.lambda(y);
    const double lam1 = model.lambda_prime(y);
    const double lam2 = model.lambda_second(y);
    const double half_l2 = 0.5 * lam * lam;

    ValuePartials p;
    p.value = u.derivative(0, x) - tau * half_l2 * rd.r;
    p.dt = half_l2 * rd.r;
    p.dx = d.u1 - tau * half_l2 * rd.r1;
    p.dxx = d.u2 - tau * half_l2 * rd.r2;
    p.dy = -tau * lam * lam1 * rd.r;
    p.dyy = -tau * (lam1 * lam1 + lam * lam2) * rd.r;
    p.dxy = -tau * lam * lam1 * rd.r1;
    return p;
}

ValueSurrogate make_value_hat(const UtilitySpec& u, const MarketModel& model, double T) {
    ValueSurrogate s;
    s.kind = SurrogateKind::u_hat;
    s.horizon = T;
    s.eval = [u, model, T](double t, double x, double y) {
        return value_hat_partials(t, x, y, u, model, T);
    };
    return s;
}

double hjb_residual(const ValuePartials& p, const MarketModel& model, double y) {
    if (p.dxx == 0.0) throw singularity_error("hjb_residual at a point with vanishing second wealth derivative");
    const double a = model.a(y);
    const double num = model.lambda(y) * p.dx + model.rho() * a * p.dxy;
    return p.dt - 0.5 * num * num / p.dxx + 0.5 * a * a * p.dyy + model.b(y) * p.dy;
}

double hjb_residual(const ValueSurrogate& s, double t, double x, double y, const MarketModel& model) {
    return hjb_residual(s(t, x, y), model, y);
}

double pi_from_partials(const ValuePartials& p, const MarketModel& model, double y) {
    if (!(p.dxx < 0.0))
        throw concavity_error("portfolio requested where the surrogate is not concave in wealth");
    return (-model.lambda(y) * p.dx - model.rho() * model.a(y) * p.dxy) / (model.sigma(y) * p.dxx);
}

double pi_hat(double t, double x, double y, const UtilitySpec& u, const MarketModel& model, double T) {
    return pi_from_partials(value_hat_partials(t, x, y, u, model, T), model, y);
}

namespace {

ValueSurrogate make_bound(const UtilitySpec& u, const MarketModel& model, double T, const GrowthCase& gc,
                          double c2, double sign, SurrogateKind kind) {
    ValueSurrogate s;
    s.kind = kind;
    s.horizon = T;
    s.eval = [u, model, T, gc, c2, sign](double t, double x, double y) {
        ValuePartials p = value_hat_partials(t, x, y, u, model, T);
        const double tau = T - t;
        p.value += sign * c2 * tau * tau * gc.weight_h(x);
        p.dt += -sign * 2.0 * c2 * tau * gc.weight_h(x);
        p.dx += sign * c2 * tau * tau * gc.weight_h_deriv(1, x);
        p.dxx += sign * c2 * tau * tau * gc.weight_h_deriv(2, x);
        return p;
    };
    return s;
}

}  // namespace

SandwichBounds sandwich(const UtilitySpec& u, const MarketModel& model, double T, const GrowthCase& gc,
                        const SandwichGrid& grid, double safety) {
    if (grid.x.size() == 0 || grid.y.size() == 0)
        throw std::invalid_argument("sandwich needs nonempty x and y grids");

    double max_ratio = 0.0;
    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        const double x = grid.x[ix];
        const double h = gc.weight_h(x);
        for (Eigen::Index iy = 0; iy < grid.y.size(); ++iy) {
            const auto terms = u2_terms(x, grid.y[iy], u, model);
            for (double a_i : terms) max_ratio = std::max(max_ratio, std::abs(a_i) / h);
        }
    }
    SandwichBounds out;
    out.c2 = safety * 8.0 * max_ratio + 1.0;
    out.lower = make_bound(u, model, T, gc, out.c2, -1.0, SurrogateKind::sub_solution);
    out.upper = make_bound(u, model, T, gc, out.c2, +1.0, SurrogateKind::super_solution);

    // Bracket the validity window: walk tau upward while both bounds stay
    // concave in wealth, the sub-solution residual stays positive and the
    // super-solution residual negative at every grid point.  Concavity is
    // part of the window: the maximized-Hamiltonian form only represents the
    // supremum while dxx < 0.  The window never extends past min{1, T}.
    const double tau_cap = std::min(1.0, T);
    std::optional<double> delta;
    for (Eigen::Index it = 0; it < grid.tau.size(); ++it) {
        const double tau = grid.tau[it];
        if (!(tau > 0.0) || !(tau < tau_cap)) continue;
        const double t = T - tau;
        bool ok = true;
        for (Eigen::Index ix = 0; ok && ix < grid.x.size(); ++ix) {
            for (Eigen::Index iy = 0; ok && iy < grid.y.size(); ++iy) {
                try {
                    const ValuePartials pl = out.lower(t, grid.x[ix], grid.y[iy]);
                    const ValuePartials pu = out.upper(t, grid.x[ix], grid.y[iy]);
                    ok = pl.dxx < 0.0 && pu.dxx < 0.0 &&
                         hjb_residual(pl, model, grid.y[iy]) > 0.0 &&
                         hjb_residual(pu, model, grid.y[iy]) < 0.0;
                } catch (const singularity_error&) {
                    ok = false;
                }
            }
        }
        if (!ok) break;
        delta = tau;
    }
    out.delta = delta;
    return out;
}

}  // namespace horizon
