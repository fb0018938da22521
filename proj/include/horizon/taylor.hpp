#pragma once

#include <Eigen/Dense>

#include <span>

namespace horizon {

// Truncated bivariate Taylor expansion around a point, up to a fixed total
// degree: coefficients c_ij of (dx)^i (dy)^j, i + j <= degree.  Arithmetic on
// these is forward-mode automatic differentiation to arbitrary order; the
// recursion in scheme.cpp runs entirely on this type.  Division requires a
// nonzero constant term.
class Taylor2 {
  public:
    Taylor2() : deg_(0), c_(Eigen::ArrayXd::Zero(1)) {}
    explicit Taylor2(int degree, double constant = 0.0)
        : deg_(degree), c_(Eigen::ArrayXd::Zero(size_for(degree))) {
        c_[0] = constant;
    }

    // dx resp. dy as a jet: value + the first-order coefficient set to 1.
    static Taylor2 variable_x(double value, int degree);
    static Taylor2 variable_y(double value, int degree);
    // Jet of a univariate function of x (resp. y) from its Taylor
    // coefficients f^(k)(x0)/k!, k = 0..degree.
    static Taylor2 from_x_series(std::span<const double> coeffs, int degree);
    static Taylor2 from_y_series(std::span<const double> coeffs, int degree);

    int degree() const { return deg_; }
    double coeff(int i, int j) const { return c_[index(i, j)]; }
    double& coeff(int i, int j) { return c_[index(i, j)]; }

    double value() const { return c_[0]; }
    // Partial derivatives at the expansion point (coefficients times factorials).
    double dx() const { return deg_ >= 1 ? c_[index(1, 0)] : 0.0; }
    double dy() const { return deg_ >= 1 ? c_[index(0, 1)] : 0.0; }
    double dxx() const { return deg_ >= 2 ? 2.0 * c_[index(2, 0)] : 0.0; }
    double dxy() const { return deg_ >= 2 ? c_[index(1, 1)] : 0.0; }
    double dyy() const { return deg_ >= 2 ? 2.0 * c_[index(0, 2)] : 0.0; }

    Taylor2 truncated(int degree) const;
    // Formal derivative jets, one degree lower.
    Taylor2 deriv_x() const;
    Taylor2 deriv_y() const;

    Taylor2 operator-() const;
    Taylor2& operator+=(const Taylor2& o);
    Taylor2& operator-=(const Taylor2& o);
    Taylor2& operator+=(double s) { c_[0] += s; return *this; }
    Taylor2& operator-=(double s) { c_[0] -= s; return *this; }
    Taylor2& operator*=(double s) { c_ *= s; return *this; }

    friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
    friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
    friend Taylor2 operator+(Taylor2 a, double s) { return a += s; }
    friend Taylor2 operator-(Taylor2 a, double s) { return a -= s; }
    friend Taylor2 operator*(Taylor2 a, double s) { return a *= s; }
    friend Taylor2 operator*(double s, Taylor2 a) { return a *= s; }
    friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) { return mul(a, b); }
    friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return div(a, b); }

    static Taylor2 mul(const Taylor2& a, const Taylor2& b);
    static Taylor2 div(const Taylor2& num, const Taylor2& den);

  private:
    static int size_for(int degree) { return (degree + 1) * (degree + 2) / 2; }
    static int index(int i, int j) {
        const int d = i + j;
        return d * (d + 1) / 2 + j;
    }

    int deg_;
    Eigen::ArrayXd c_;
};

}  // namespace horizon
