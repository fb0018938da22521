#include "horizon/taylor.hpp"

#include "horizon/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace horizon;

TEST_CASE("product of coordinate jets reproduces polynomial partials") {
    // f(x, y) = x^2 y + 3 x at (2, 3)
    const Taylor2 X = Taylor2::variable_x(2.0, 4);
    const Taylor2 Y = Taylor2::variable_y(3.0, 4);
    const Taylor2 f = X * X * Y + 3.0 * X;
    CHECK(f.value() == doctest::Approx(18.0).epsilon(1e-15));
    CHECK(f.dx() == doctest::Approx(15.0).epsilon(1e-15));
    CHECK(f.dy() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(f.dxx() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(f.dxy() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(f.dyy() == doctest::Approx(0.0));
}

TEST_CASE("quotient jet matches hand-derived partials") {
    // g = (x^2 y + 3x) / (x + y) at (2, 3); quotient-rule values below
    const Taylor2 X = Taylor2::variable_x(2.0, 4);
    const Taylor2 Y = Taylor2::variable_y(3.0, 4);
    const Taylor2 g = (X * X * Y + 3.0 * X) / (X + Y);
    CHECK(g.value() == doctest::Approx(3.6).epsilon(1e-14));
    CHECK(g.dx() == doctest::Approx(57.0 / 25.0).epsilon(1e-14));
    CHECK(g.dy() == doctest::Approx(2.0 / 25.0).epsilon(1e-14));
    CHECK(g.dxx() == doctest::Approx(0.288).epsilon(1e-13));
    CHECK(g.dxy() == doctest::Approx(0.328).epsilon(1e-13));
    CHECK(g.dyy() == doctest::Approx(-0.032).epsilon(1e-13));
}

TEST_CASE("division round-trips against multiplication") {
    Taylor2 p(5);
    Taylor2 q(5, 2.0);
    // fill with a deterministic pattern, q kept invertible
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            p.coeff(i, j) = std::sin(3.0 * i + j + 1.0);
            if (i + j > 0) q.coeff(i, j) = 0.3 * std::cos(2.0 * i - j);
        }
    const Taylor2 r = p / q;
    const Taylor2 back = r * q;
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j)
            CHECK(back.coeff(i, j) == doctest::Approx(p.coeff(i, j)).epsilon(1e-12));
}

TEST_CASE("division by a zero constant term is a singularity") {
    Taylor2 p(3, 1.0);
    Taylor2 q(3, 0.0);
    q.coeff(1, 0) = 1.0;
    CHECK_THROWS_AS(p / q, singularity_error);
}

TEST_CASE("univariate series load into the expected axis") {
    // coefficients of -x^-2/2 around x0 = 1: derivatives -0.5, 1, -3, 12, -60
    const double coeffs[] = {-0.5, 1.0, -1.5, 2.0, -2.5};
    const Taylor2 u = Taylor2::from_x_series(coeffs, 4);
    CHECK(u.value() == -0.5);
    CHECK(u.dx() == 1.0);
    CHECK(u.dxx() == -3.0);
    CHECK(u.dy() == 0.0);

    const Taylor2 v = Taylor2::from_y_series(coeffs, 4);
    CHECK(v.dy() == 1.0);
    CHECK(v.dyy() == -3.0);
    CHECK(v.dx() == 0.0);
}

TEST_CASE("formal derivatives shift coefficients") {
    const Taylor2 X = Taylor2::variable_x(1.5, 5);
    const Taylor2 Y = Taylor2::variable_y(0.5, 5);
    const Taylor2 f = X * X * X * Y * Y;  // x^3 y^2
    const Taylor2 fx = f.deriv_x();       // 3 x^2 y^2
    CHECK(fx.value() == doctest::Approx(3.0 * 1.5 * 1.5 * 0.25).epsilon(1e-14));
    const Taylor2 fxy = fx.deriv_y();     // 6 x^2 y
    CHECK(fxy.value() == doctest::Approx(6.0 * 2.25 * 0.5).epsilon(1e-14));
    CHECK(f.deriv_x().deriv_x().value() == doctest::Approx(6.0 * 1.5 * 0.25).epsilon(1e-14));
}

TEST_CASE("mixed-degree arithmetic truncates to the shorter operand") {
    const Taylor2 a = Taylor2::variable_x(1.0, 4);
    const Taylor2 b = Taylor2::variable_x(2.0, 2);
    CHECK((a * b).degree() == 2);
    CHECK((a + b).degree() == 4);
    CHECK(a.truncated(1).degree() == 1);
}
