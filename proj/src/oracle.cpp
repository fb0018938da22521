#include "horizon/oracle.hpp"

#include "horizon/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace horizon {

CRRAParams::CRRAParams(double gamma, double mu, double m, double beta_vol, double rho, double r, double T)
    : gamma_(gamma), mu_(mu), m_(m), beta_vol_(beta_vol), rho_(rho), r_(r), T_(T) {
    if (!(gamma > 0.0) || gamma == 1.0) throw std::invalid_argument("CRRA oracle requires gamma > 0, gamma != 1");
    if (beta_vol == 0.0) throw std::invalid_argument("CRRA oracle requires a nonzero factor volatility");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("correlation must lie in (-1, 1)");
    if (!(T >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
    const double mu_e = mu_ - r_;
    const double denom = gamma + (1.0 - gamma) * rho * rho;  // = gamma (1 - rho^2) + rho^2 > 0
    q2_ = beta_vol * beta_vol / 2.0;
    q1_ = ((1.0 - gamma) * beta_vol * mu_e * rho - gamma) / gamma;
    q0_ = denom * (1.0 - gamma) * mu_e * mu_e / (2.0 * gamma * gamma);
    k_exp_ = gamma / denom;
    const double disc = q1_ * q1_ - 4.0 * q2_ * q0_;
    if (!(disc > 0.0)) throw std::invalid_argument("Riccati quadratic has no two real roots for these parameters");
    alpha_disc_ = std::sqrt(disc);
    a_plus_ = (-q1_ + alpha_disc_) / (2.0 * q2_);
    a_minus_ = (-q1_ - alpha_disc_) / (2.0 * q2_);
    if (!(a_plus_ > 0.0 && a_minus_ < 0.0))
        throw std::invalid_argument("Riccati roots do not straddle zero (needs gamma > 1)");
}

MarketModel CRRAParams::market() const {
    return MarketModel::chacko_viceira(mu_, m_, beta_vol_, rho_, r_);
}

std::pair<double, double> crra_coeffs(double t, const CRRAParams& p) {
    const double tau = p.horizon() - t;
    if (tau < 0.0) throw std::domain_error("crra_coeffs evaluated past the horizon");
    const double ratio = p.a_minus() / p.a_plus();
    const double e = std::exp(-p.alpha_disc() * tau);
    const double den = 1.0 - ratio * e;
    const double A = (1.0 - e) * p.a_minus() / den;
    const double B = p.m() * (tau * p.a_minus() -
                              2.0 / (p.beta_vol() * p.beta_vol()) * std::log(den / (1.0 - ratio)));
    return {A, B};
}

namespace {

double x_power_part(double x, double gamma) { return std::pow(x, 1.0 - gamma) / (1.0 - gamma); }

}  // namespace

double crra_exact_value(double t, double x, double y, const CRRAParams& p) {
    if (!(x > 0.0)) throw std::domain_error("value requested at non-positive wealth");
    const auto [A, B] = crra_coeffs(t, p);
    return x_power_part(x, p.gamma()) * std::exp(p.exponent_multiplier() * (y * A + B));
}

ValuePartials crra_exact_partials(double t, double x, double y, const CRRAParams& p) {
    if (!(x > 0.0)) throw std::domain_error("value requested at non-positive wealth");
    const auto [A, B] = crra_coeffs(t, p);
    const double k = p.exponent_multiplier();
    const double e = std::exp(k * (y * A + B));
    const double g = p.gamma();
    const double value = x_power_part(x, g) * e;
    const double vx = std::pow(x, -g) * e;

    ValuePartials out;
    out.value = value;
    out.dx = vx;
    out.dxx = -g * vx / x;
    out.dxy = k * A * vx;
    out.dy = k * A * value;
    out.dyy = k * A * k * A * value;
    // A' in t is -f(A) by the Riccati equation, B' is -m A.
    out.dt = -k * (y * p.f(A) + p.m() * A) * value;
    return out;
}

ValueSurrogate make_crra_oracle(const CRRAParams& p) {
    ValueSurrogate s;
    s.kind = SurrogateKind::oracle;
    s.horizon = p.horizon();
    s.eval = [p](double t, double x, double y) { return crra_exact_partials(t, x, y, p); };
    return s;
}

double crra_exact_portfolio(double t, double x, double y, const CRRAParams& p) {
    return pi_from_partials(crra_exact_partials(t, x, y, p), p.market(), y);
}

double merton_value(double t, double x, const MertonParams& mp) {
    if (!(mp.gamma > 0.0) || mp.gamma == 1.0) throw std::invalid_argument("Merton baseline requires gamma > 0, gamma != 1");
    if (!(mp.sigma > 0.0)) throw std::invalid_argument("Merton baseline requires sigma > 0");
    if (!(x > 0.0)) throw std::domain_error("value requested at non-positive wealth");
    const double tau = mp.T - t;
    return x_power_part(x, mp.gamma) *
           std::exp((1.0 - mp.gamma) * mp.lambda * mp.lambda * tau / (2.0 * mp.gamma));
}

double merton_portfolio(double x, const MertonParams& mp) {
    if (!(mp.gamma > 0.0) || mp.gamma == 1.0) throw std::invalid_argument("Merton baseline requires gamma > 0, gamma != 1");
    if (!(mp.sigma > 0.0)) throw std::invalid_argument("Merton baseline requires sigma > 0");
    return mp.lambda * x / (mp.gamma * mp.sigma);
}

}  // namespace horizon
