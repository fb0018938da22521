#include "horizon/market.hpp"

#include <cmath>
#include <stdexcept>

namespace horizon {

namespace {

// Taylor coefficients of scale * y^q around y0 > 0.
std::vector<double> power_series(double scale, double q, double y0, int degree) {
    std::vector<double> c(static_cast<size_t>(degree) + 1);
    double cur = scale * std::pow(y0, q);
    c[0] = cur;
    for (int n = 1; n <= degree; ++n) {
        cur *= (q - static_cast<double>(n - 1)) / (static_cast<double>(n) * y0);
        c[static_cast<size_t>(n)] = cur;
    }
    return c;
}

std::vector<double> constant_series(double value, int degree) {
    std::vector<double> c(static_cast<size_t>(degree) + 1, 0.0);
    c[0] = value;
    return c;
}

}  // namespace

MarketModel MarketModel::constant(double mu, double sigma, double b, double a, double rho, double r) {
    if (!(sigma > 0.0)) throw std::invalid_argument("constant model requires sigma > 0");
    if (a < 0.0) throw std::invalid_argument("constant model requires a >= 0");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("correlation must lie in (-1, 1)");
    if (r < 0.0) throw std::invalid_argument("risk-free rate must be non-negative");
    MarketModel m;
    m.kind_enum_ = Kind::constant;
    m.kind_ = "constant";
    m.mu_ = mu;
    m.sigma_ = sigma;
    m.b_ = b;
    m.a_ = a;
    m.rho_ = rho;
    m.r_ = r;
    return m;
}

MarketModel MarketModel::chacko_viceira(double mu, double m, double beta_vol, double rho, double r,
                                        double y_min) {
    if (!(std::isfinite(mu) && std::isfinite(m) && std::isfinite(beta_vol)))
        throw std::invalid_argument("chacko_viceira parameters must be finite");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("correlation must lie in (-1, 1)");
    if (r < 0.0) throw std::invalid_argument("risk-free rate must be non-negative");
    if (!(y_min > 0.0)) throw std::invalid_argument("factor floor y_min must be positive");
    MarketModel out;
    out.kind_enum_ = Kind::chacko_viceira;
    out.kind_ = "chacko_viceira";
    out.mu_ = mu;
    out.m_ = m;
    out.beta_vol_ = beta_vol;
    out.rho_ = rho;
    out.r_ = r;
    out.y_min_ = y_min;
    return out;
}

void MarketModel::require_domain(double y) const {
    if (kind_enum_ == Kind::chacko_viceira && !(y >= y_min_))
        throw std::domain_error("chacko_viceira model evaluated at y below the factor floor");
}

double MarketModel::mu(double y) const {
    require_domain(y);
    return mu_;
}

double MarketModel::sigma(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? sigma_ : 1.0 / std::sqrt(y);
}

double MarketModel::sigma_prime(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : -0.5 * std::pow(y, -1.5);
}

double MarketModel::b(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? b_ : m_ - y;
}

double MarketModel::b_prime(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : -1.0;
}

double MarketModel::a(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? a_ : beta_vol_ * std::sqrt(y);
}

double MarketModel::a_prime(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : 0.5 * beta_vol_ / std::sqrt(y);
}

double MarketModel::a_second(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : -0.25 * beta_vol_ * std::pow(y, -1.5);
}

double MarketModel::lambda(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? (mu_ - r_) / sigma_ : (mu_ - r_) * std::sqrt(y);
}

double MarketModel::lambda_prime(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : 0.5 * (mu_ - r_) / std::sqrt(y);
}

double MarketModel::lambda_second(double y) const {
    require_domain(y);
    return kind_enum_ == Kind::constant ? 0.0 : -0.25 * (mu_ - r_) * std::pow(y, -1.5);
}

std::vector<double> MarketModel::lambda_series(double y0, int degree) const {
    require_domain(y0);
    if (kind_enum_ == Kind::constant) return constant_series((mu_ - r_) / sigma_, degree);
    return power_series(mu_ - r_, 0.5, y0, degree);
}

std::vector<double> MarketModel::a_series(double y0, int degree) const {
    require_domain(y0);
    if (kind_enum_ == Kind::constant) return constant_series(a_, degree);
    return power_series(beta_vol_, 0.5, y0, degree);
}

std::vector<double> MarketModel::b_series(double y0, int degree) const {
    require_domain(y0);
    if (kind_enum_ == Kind::constant) return constant_series(b_, degree);
    auto c = constant_series(m_ - y0, degree);
    if (degree >= 1) c[1] = -1.0;
    return c;
}

ModelBoundsReport validate_model_bounds(const MarketModel& model, const Eigen::ArrayXd& y_grid, double c) {
    if (y_grid.size() == 0) throw std::invalid_argument("model bounds check needs a nonempty grid");
    ModelBoundsReport rep;
    rep.bound = c;
    rep.sup = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < y_grid.size(); ++i) {
        const double y = y_grid[i];
        const double a = model.a(y);
        const double sum = std::abs(a) + std::abs(1.0 / a) + std::abs(model.a_prime(y)) +
                           std::abs(model.a_second(y)) + std::abs(model.b(y)) +
                           std::abs(model.b_prime(y)) + std::abs(model.lambda(y)) +
                           std::abs(model.lambda_prime(y)) + std::abs(model.lambda_second(y));
        if (sum > rep.sup) {
            rep.sup = sum;
            rep.argmax_y = y;
        }
    }
    rep.pass = rep.sup <= c;
    return rep;
}

}  // namespace horizon
