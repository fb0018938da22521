#pragma once

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace horizon {

// Coefficient bundle of the two-factor market: risky-asset drift/volatility
// mu(y), sigma(y), factor drift b(y), factor volatility a(y), Brownian
// correlation rho and risk-free rate r, with the Sharpe ratio
// lambda(y) = (mu(y) - r) / sigma(y) and the y-derivatives the expansion
// formulas consume.  Immutable and pure; evaluation outside the factor
// domain throws std::domain_error.
class MarketModel {
  public:
    // All y-derivatives identically zero; degenerate one-factor case.
    static MarketModel constant(double mu, double sigma, double b, double a, double rho, double r);
    // sigma(y) = 1/sqrt(y), b(y) = m - y, a(y) = beta_vol * sqrt(y), constant mu.
    // Evaluation requires y > y_min (sqrt singularities at the origin).
    static MarketModel chacko_viceira(double mu, double m, double beta_vol, double rho, double r,
                                      double y_min = 1e-6);

    double mu(double y) const;
    double sigma(double y) const;
    double sigma_prime(double y) const;
    double b(double y) const;
    double b_prime(double y) const;
    double a(double y) const;
    double a_prime(double y) const;
    double a_second(double y) const;
    double lambda(double y) const;
    double lambda_prime(double y) const;
    double lambda_second(double y) const;

    double rho() const { return rho_; }
    double rate() const { return r_; }
    double y_min() const { return y_min_; }
    const std::string& kind() const { return kind_; }

    // Taylor coefficients f^(k)(y0)/k!, k = 0..degree, for the scheme jets.
    std::vector<double> lambda_series(double y0, int degree) const;
    std::vector<double> a_series(double y0, int degree) const;
    std::vector<double> b_series(double y0, int degree) const;

  private:
    MarketModel() = default;
    void require_domain(double y) const;

    enum class Kind { constant, chacko_viceira };
    Kind kind_enum_ = Kind::constant;
    std::string kind_;
    double mu_ = 0.0, sigma_ = 0.0, b_ = 0.0, a_ = 0.0;  // constant-kind values
    double m_ = 0.0, beta_vol_ = 0.0;                    // chacko_viceira parameters
    double rho_ = 0.0, r_ = 0.0;
    double y_min_ = -std::numeric_limits<double>::infinity();
};

// Grid estimate of the boundedness sum |a| + |1/a| + |a'| + |a''| + |b| +
// |b'| + |lambda| + |lambda'| + |lambda''| against a user budget.  Violations
// are advisory: the inverse-sqrt-volatility example deliberately exceeds any
// fixed budget as y grows, yet the approximations remain usable.
struct ModelBoundsReport {
    double sup = 0.0;
    double argmax_y = 0.0;
    double bound = 0.0;
    bool pass = false;
};

ModelBoundsReport validate_model_bounds(const MarketModel& model, const Eigen::ArrayXd& y_grid, double c);

}  // namespace horizon
