#pragma once

#include "horizon/market.hpp"
#include "horizon/surrogate.hpp"

#include <utility>

namespace horizon {

// Exact CRRA value function for the inverse-sqrt-volatility market: the
// x-part separates as x^{1-gamma}/(1-gamma) and the factor part solves a
// Riccati equation whose quadratic f has one positive and one negative root.
// Construction validates the root layout; the general-gamma form is checked
// by the vanishing HJB residual rather than by derivation.
class CRRAParams {
  public:
    CRRAParams(double gamma, double mu, double m, double beta_vol, double rho, double r, double T);

    double gamma() const { return gamma_; }
    double horizon() const { return T_; }
    double m() const { return m_; }
    double beta_vol() const { return beta_vol_; }
    double rho() const { return rho_; }

    double a_plus() const { return a_plus_; }
    double a_minus() const { return a_minus_; }
    double alpha_disc() const { return alpha_disc_; }
    double exponent_multiplier() const { return k_exp_; }

    // The Riccati quadratic f(v); f(a_plus) = f(a_minus) = 0.
    double f(double v) const { return (q2_ * v + q1_) * v + q0_; }

    // The market these parameters describe.
    MarketModel market() const;

  private:
    double gamma_, mu_, m_, beta_vol_, rho_, r_, T_;
    double q2_, q1_, q0_;
    double alpha_disc_, a_plus_, a_minus_, k_exp_;
};

// Time coefficients (A, B) of the exponent y*A(t,T) + B(t,T); both vanish at
// t = T and A tends to the negative root as T - t grows.
std::pair<double, double> crra_coeffs(double t, const CRRAParams& p);

double crra_exact_value(double t, double x, double y, const CRRAParams& p);
ValuePartials crra_exact_partials(double t, double x, double y, const CRRAParams& p);
ValueSurrogate make_crra_oracle(const CRRAParams& p);
double crra_exact_portfolio(double t, double x, double y, const CRRAParams& p);

// Constant-coefficient baseline: value U_T(x) exp((1-gamma) lambda^2 (T-t) /
// (2 gamma)), allocation lambda x / (gamma sigma), constant in time.
struct MertonParams {
    double gamma;
    double lambda;
    double sigma;
    double T;
};

double merton_value(double t, double x, const MertonParams& mp);
double merton_portfolio(double x, const MertonParams& mp);

}  // namespace horizon
