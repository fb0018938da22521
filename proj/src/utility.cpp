#include "horizon/utility.hpp"

#include "horizon/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace horizon {

namespace {

void require_positive_x(double x) {
    if (!(x > 0.0)) throw std::domain_error("utility evaluated at non-positive wealth");
}

// k-th derivative of c * x^p / p.
double power_term_derivative(double coef, double p, int k, double x) {
    if (k == 0) return coef * std::pow(x, p) / p;
    double factor = coef;
    for (int i = 1; i < k; ++i) factor *= (p - static_cast<double>(i));
    return factor * std::pow(x, p - static_cast<double>(k));
}

// k-th derivative of log(x).
double log_derivative(int k, double x) {
    if (k == 0) return std::log(x);
    double factor = (k % 2 == 1) ? 1.0 : -1.0;
    for (int i = 1; i < k; ++i) factor *= static_cast<double>(i);
    return factor * std::pow(x, -static_cast<double>(k));
}

}  // namespace

UtilitySpec UtilitySpec::power(double gamma) {
    if (!(gamma > 0.0) || gamma == 1.0)
        throw std::invalid_argument("power utility requires gamma > 0, gamma != 1");
    UtilitySpec u;
    u.family_ = UtilityFamily::power;
    u.label_ = "power";
    u.terms_ = {{1.0, 1.0 - gamma}};
    u.gamma_ = gamma;
    return u;
}

UtilitySpec UtilitySpec::log_utility() {
    UtilitySpec u;
    u.family_ = UtilityFamily::log;
    u.label_ = "log";
    u.log_weight_ = 1.0;
    u.gamma_ = 1.0;
    return u;
}

UtilitySpec UtilitySpec::power_mixture(double c_a, double alpha, double c_b, double beta) {
    if (!(c_a > 0.0) || !(c_b > 0.0))
        throw std::invalid_argument("mixture weights must be positive");
    if (!(alpha > 0.0) || alpha == 1.0 || !(beta > 0.0) || beta == 1.0)
        throw std::invalid_argument("mixture exponents must be positive and != 1");
    UtilitySpec u;
    u.family_ = UtilityFamily::power_mixture;
    u.label_ = "mixture";
    u.terms_ = {{c_a, 1.0 - alpha}, {c_b, 1.0 - beta}};
    u.gamma_ = std::max(alpha, beta);
    return u;
}

UtilitySpec UtilitySpec::custom(std::function<double(int, double)> derivative_fn, int max_order,
                                std::string label) {
    if (max_order < 4) throw std::invalid_argument("custom utilities must supply derivatives through order 4");
    if (!derivative_fn) throw std::invalid_argument("custom utility needs a derivative callback");
    UtilitySpec u;
    u.family_ = UtilityFamily::custom;
    u.label_ = std::move(label);
    u.custom_ = std::move(derivative_fn);
    u.max_order_ = max_order;
    return u;
}

double UtilitySpec::derivative(int k, double x) const {
    if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
    require_positive_x(x);
    if (family_ == UtilityFamily::custom) {
        if (k > max_order_)
            throw capability_error("custom utility '" + label_ + "' supplies derivatives up to order " +
                                   std::to_string(max_order_) + ", requested " + std::to_string(k));
        return custom_(k, x);
    }
    double v = 0.0;
    for (const auto& t : terms_) v += power_term_derivative(t.coef, t.exponent, k, x);
    if (log_weight_ != 0.0) v += log_weight_ * log_derivative(k, x);
    return v;
}

std::vector<double> UtilitySpec::taylor_coefficients(double x0, int degree) const {
    std::vector<double> c(static_cast<size_t>(degree) + 1);
    double kfact = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) kfact *= static_cast<double>(k);
        c[static_cast<size_t>(k)] = derivative(k, x0) / kfact;
    }
    return c;
}

GrowthCase GrowthCase::case1() { return GrowthCase{}; }

GrowthCase GrowthCase::case2(double alpha, double beta) {
    if (!(alpha > 0.0) || alpha == 1.0 || !(beta > 0.0) || beta == 1.0)
        throw std::invalid_argument("case 2 exponents must be positive and != 1");
    GrowthCase gc;
    gc.case1_ = false;
    gc.alpha_ = alpha;
    gc.beta_ = beta;
    return gc;
}

double GrowthCase::gamma_admissibility() const { return case1_ ? 1.0 : std::max(alpha_, beta_); }

double GrowthCase::reference_m(double x) const { return reference_m_deriv(0, x); }

double GrowthCase::reference_m_deriv(int k, double x) const {
    require_positive_x(x);
    if (case1_) return log_derivative(k, x);
    return power_term_derivative(1.0, 1.0 - alpha_, k, x) + power_term_derivative(1.0, 1.0 - beta_, k, x);
}

double GrowthCase::weight_h(double x) const { return weight_h_deriv(0, x); }

double GrowthCase::weight_h_deriv(int k, double x) const {
    require_positive_x(x);
    if (case1_) return k == 0 ? 1.0 : 0.0;
    // h = x^{1-alpha} + x^{1-beta}
    auto mono = [&](double p) {
        double factor = 1.0;
        for (int i = 0; i < k; ++i) factor *= (p - static_cast<double>(i));
        return factor * std::pow(x, p - static_cast<double>(k));
    };
    return mono(1.0 - alpha_) + mono(1.0 - beta_);
}

double GrowthCase::domination_g(double x) const {
    require_positive_x(x);
    return case1_ ? std::log(x) + 1.0 : weight_h(x);
}

double GrowthCase::residual_weight(double x) const {
    require_positive_x(x);
    if (case1_) return std::pow(x, -4.0);
    return weight_h(x) * (std::pow(x, -2.0 - 2.0 * alpha_) + std::pow(x, -2.0 - 2.0 * beta_));
}

ReferenceFunctions reference_functions(const GrowthCase& gc, double x) {
    return {gc.reference_m(x), gc.weight_h(x), gc.domination_g(x), gc.residual_weight(x)};
}

GrowthReport check_growth_conditions(const UtilitySpec& u, const GrowthCase& gc,
                                     const Eigen::ArrayXd& grid, double eps) {
    if (grid.size() == 0) throw std::invalid_argument("growth check needs a nonempty grid");
    GrowthReport rep;
    rep.eps = eps;
    rep.monotone_ok = true;
    rep.concave_ok = true;
    const double cap = 1.0 / eps;
    bool all_pass = true;
    for (int k = 1; k <= 4; ++k) {
        auto& cond = rep.conditions[static_cast<size_t>(k - 1)];
        cond.order = k;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double x = grid[i];
            const double m = gc.reference_m_deriv(k, x);
            if (m == 0.0) throw std::domain_error("reference derivative vanished on the growth grid");
            const double uk = u.derivative(k, x);
            if (k == 1 && !(uk > 0.0)) rep.monotone_ok = false;
            if (k == 2 && !(uk < 0.0)) rep.concave_ok = false;
            const double ratio = uk / m;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        cond.ratio_min = lo;
        cond.ratio_max = hi;
        cond.pass = std::isfinite(lo) && std::isfinite(hi) && lo > eps && hi < cap;
        all_pass = all_pass && cond.pass;
    }
    rep.pass = all_pass && rep.monotone_ok && rep.concave_ok;
    return rep;
}

}  // namespace horizon
