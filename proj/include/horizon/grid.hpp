#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace horizon {

inline Eigen::ArrayXd linear_grid(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("grid needs at least one point");
    if (n == 1) return Eigen::ArrayXd::Constant(1, lo);
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

inline Eigen::ArrayXd log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("log grid endpoints must be positive");
    return linear_grid(std::log(lo), std::log(hi), n).exp();
}

}  // namespace horizon
