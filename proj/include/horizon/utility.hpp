#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace horizon {

enum class UtilityFamily { power, log, power_mixture, custom };

// Terminal utility U_T with a derivative oracle.  Built-in families are sums
// of c * x^p / p terms plus an optional logarithmic part, so every derivative
// order is available in closed form; custom utilities supply a callback and
// an order cap (at least 4).
class UtilitySpec {
  public:
    static UtilitySpec power(double gamma);
    static UtilitySpec log_utility();
    static UtilitySpec power_mixture(double c_a, double alpha, double c_b, double beta);
    static UtilitySpec custom(std::function<double(int, double)> derivative_fn, int max_order,
                              std::string label = "custom");

    UtilityFamily family() const { return family_; }
    const std::string& label() const { return label_; }
    int derivative_order_available() const { return max_order_; }

    // d^k U_T / dx^k at x; k = 0 evaluates U_T itself.
    double derivative(int k, double x) const;
    double operator()(double x) const { return derivative(0, x); }

    // Taylor coefficients U_T^(k)(x0)/k!, k = 0..degree.
    std::vector<double> taylor_coefficients(double x0, int degree) const;

    double power_gamma() const { return gamma_; }

  private:
    UtilitySpec() = default;

    struct PowerTerm {
        double coef;      // c in c * x^p / p
        double exponent;  // p = 1 - (power exponent)
    };

    UtilityFamily family_ = UtilityFamily::custom;
    std::string label_;
    std::vector<PowerTerm> terms_;
    double log_weight_ = 0.0;
    double gamma_ = std::numeric_limits<double>::quiet_NaN();
    std::function<double(int, double)> custom_;
    int max_order_ = std::numeric_limits<int>::max();
};

// Asymptotic growth case: logarithmic (case 1) or power-mixture (case 2)
// reference behaviour.  Fixes the comparison function M, the error weight h,
// the domination weight G and the residual weight h_tilde.
class GrowthCase {
  public:
    static GrowthCase case1();
    static GrowthCase case2(double alpha, double beta);

    bool is_case1() const { return case1_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    // gamma of the admissibility moment condition: 1 under case 1,
    // max{alpha, beta} under case 2.
    double gamma_admissibility() const;

    double reference_m(double x) const;        // M
    double reference_m_deriv(int k, double x) const;
    double weight_h(double x) const;           // h
    double weight_h_deriv(int k, double x) const;
    double domination_g(double x) const;       // G
    double residual_weight(double x) const;    // h_tilde

  private:
    GrowthCase() = default;
    bool case1_ = true;
    double alpha_ = 0.0, beta_ = 0.0;
};

struct ReferenceFunctions {
    double m, h, g, h_tilde;
};

// (M, h, G, h_tilde) at x for the given growth case.
ReferenceFunctions reference_functions(const GrowthCase& gc, double x);

struct GrowthReport {
    struct Condition {
        int order = 0;          // derivative order k
        double ratio_min = 0.0; // estimated inf of U^(k)/M^(k) over the grid
        double ratio_max = 0.0; // estimated sup
        bool pass = false;
    };
    std::array<Condition, 4> conditions;
    bool monotone_ok = false;   // U' > 0 on the grid
    bool concave_ok = false;    // U'' < 0 on the grid
    bool pass = false;
    double eps = 0.0;
};

inline constexpr double kDefaultGrowthEps = 1e-8;

// Estimates the four derivative-ratio conditions on a (log-spaced) grid.
// Pass requires every ratio within (eps, 1/eps); the upper cap stands in for
// "finite" on a truncated grid.
GrowthReport check_growth_conditions(const UtilitySpec& u, const GrowthCase& gc,
                                     const Eigen::ArrayXd& grid, double eps = kDefaultGrowthEps);

}  // namespace horizon
