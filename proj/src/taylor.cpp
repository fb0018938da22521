#include "horizon/taylor.hpp"

#include "horizon/errors.hpp"

#include <algorithm>
#include <cmath>

namespace horizon {

Taylor2 Taylor2::variable_x(double value, int degree) {
    Taylor2 t(degree, value);
    if (degree >= 1) t.coeff(1, 0) = 1.0;
    return t;
}

Taylor2 Taylor2::variable_y(double value, int degree) {
    Taylor2 t(degree, value);
    if (degree >= 1) t.coeff(0, 1) = 1.0;
    return t;
}

Taylor2 Taylor2::from_x_series(std::span<const double> coeffs, int degree) {
    Taylor2 t(degree);
    const int n = std::min<int>(degree + 1, static_cast<int>(coeffs.size()));
    for (int i = 0; i < n; ++i) t.coeff(i, 0) = coeffs[i];
    return t;
}

Taylor2 Taylor2::from_y_series(std::span<const double> coeffs, int degree) {
    Taylor2 t(degree);
    const int n = std::min<int>(degree + 1, static_cast<int>(coeffs.size()));
    for (int j = 0; j < n; ++j) t.coeff(0, j) = coeffs[j];
    return t;
}

Taylor2 Taylor2::truncated(int degree) const {
    Taylor2 t(degree);
    const int d = std::min(degree, deg_);
    t.c_.head(size_for(d)) = c_.head(size_for(d));
    return t;
}

Taylor2 Taylor2::deriv_x() const {
    const int d = std::max(deg_ - 1, 0);
    Taylor2 t(d);
    for (int i = 1; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j) t.coeff(i - 1, j) = static_cast<double>(i) * coeff(i, j);
    return t;
}

Taylor2 Taylor2::deriv_y() const {
    const int d = std::max(deg_ - 1, 0);
    Taylor2 t(d);
    for (int j = 1; j <= deg_; ++j)
        for (int i = 0; i + j <= deg_; ++i) t.coeff(i, j - 1) = static_cast<double>(j) * coeff(i, j);
    return t;
}

Taylor2 Taylor2::operator-() const {
    Taylor2 t(*this);
    t.c_ = -t.c_;
    return t;
}

Taylor2& Taylor2::operator+=(const Taylor2& o) {
    if (o.deg_ == deg_) {
        c_ += o.c_;
    } else if (o.deg_ < deg_) {
        c_.head(size_for(o.deg_)) += o.c_;
    } else {
        Taylor2 t = o;
        t.c_.head(size_for(deg_)) += c_;
        *this = std::move(t);
    }
    return *this;
}

Taylor2& Taylor2::operator-=(const Taylor2& o) {
    *this += -o;
    return *this;
}

Taylor2 Taylor2::mul(const Taylor2& a, const Taylor2& b) {
    const int deg = std::min(a.deg_, b.deg_);
    Taylor2 t(deg);
    for (int da = 0; da <= deg; ++da) {
        for (int ia = da; ia >= 0; --ia) {
            const double ca = a.coeff(ia, da - ia);
            if (ca == 0.0) continue;
            for (int db = 0; da + db <= deg; ++db) {
                for (int ib = db; ib >= 0; --ib) {
                    const double cb = b.coeff(ib, db - ib);
                    if (cb == 0.0) continue;
                    t.coeff(ia + ib, da - ia + db - ib) += ca * cb;
                }
            }
        }
    }
    return t;
}

Taylor2 Taylor2::div(const Taylor2& num, const Taylor2& den) {
    const int deg = std::min(num.deg_, den.deg_);
    if (den.value() == 0.0) throw singularity_error("Taylor2 division by a series with zero constant term");
    Taylor2 t(deg);
    // graded forward substitution: num = t * den order by order
    for (int d = 0; d <= deg; ++d) {
        for (int i = d; i >= 0; --i) {
            const int j = d - i;
            double acc = num.deg_ >= d ? num.coeff(i, j) : 0.0;
            // subtract all products t_(k,l) * den_(i-k, j-l) with (k,l) != (i,j)
            for (int k = 0; k <= i; ++k) {
                for (int l = 0; l <= j; ++l) {
                    if (k == i && l == j) continue;
                    const double tc = t.coeff(k, l);
                    if (tc == 0.0) continue;
                    acc -= tc * den.coeff(i - k, j - l);
                }
            }
            t.coeff(i, j) = acc / den.value();
        }
    }
    return t;
}

}  // namespace horizon
