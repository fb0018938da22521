#include "horizon/market.hpp"

#include "horizon/grid.hpp"

#include <doctest.h>

#include <cmath>

using namespace horizon;

namespace {

MarketModel paper_model() { return MarketModel::chacko_viceira(0.0811, 27.9345, 1.12, 0.5241, 0.0); }

}  // namespace

TEST_CASE("constant model basics") {
    const auto m = MarketModel::constant(0.1, 0.2, 0.0, 0.0, 0.0, 0.0);
    CHECK(m.lambda(5.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.lambda_prime(5.0) == 0.0);

    const auto m2 = MarketModel::constant(0.1, 0.2, 1.0, 1.0, 0.5, 0.02);
    CHECK(m2.lambda(-3.0) == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(MarketModel::constant(0.1, 0.0, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MarketModel::constant(0.1, 0.2, 0.0, -1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MarketModel::constant(0.1, 0.2, 0.0, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("inverse-sqrt-volatility model at the calibration point") {
    const auto m = paper_model();
    const double y = 27.9345;
    const double l = m.lambda(y);
    CHECK(l * l == doctest::Approx(0.0811 * 0.0811 * y).epsilon(1e-15));
    CHECK(l * l == doctest::Approx(0.1837311).epsilon(1e-6));
    CHECK(m.b(y) == doctest::Approx(0.0).scale(1.0));
    CHECK(m.sigma(y) * m.a(y) == doctest::Approx(1.12).epsilon(1e-14));
}

TEST_CASE("mu reconstructs from lambda sigma plus r") {
    const auto models = {paper_model(), MarketModel::constant(0.1, 0.2, 1.0, 1.0, 0.5, 0.02),
                         MarketModel::chacko_viceira(0.05, 10.0, 0.7, -0.4, 0.01)};
    const auto ys = linear_grid(5.0, 100.0, 40);
    for (const auto& m : models)
        for (Eigen::Index i = 0; i < ys.size(); ++i) {
            const double y = ys[i];
            CHECK(m.mu(y) == doctest::Approx(m.lambda(y) * m.sigma(y) + m.rate()).epsilon(1e-12));
        }
}

TEST_CASE("analytic y-derivatives match finite differences") {
    const auto m = paper_model();
    const auto ys = linear_grid(5.0, 100.0, 40);
    for (Eigen::Index i = 0; i < ys.size(); ++i) {
        const double y = ys[i];
        const double h = 1e-5 * y;
        const auto fd1 = [&](auto f) { return (f(y + h) - f(y - h)) / (2.0 * h); };
        CHECK(m.lambda_prime(y) ==
              doctest::Approx(fd1([&](double v) { return m.lambda(v); })).epsilon(1e-6));
        CHECK(m.lambda_second(y) ==
              doctest::Approx(fd1([&](double v) { return m.lambda_prime(v); })).epsilon(1e-6));
        CHECK(m.a_prime(y) == doctest::Approx(fd1([&](double v) { return m.a(v); })).epsilon(1e-6));
        CHECK(m.a_second(y) == doctest::Approx(fd1([&](double v) { return m.a_prime(v); })).epsilon(1e-6));
        CHECK(m.sigma_prime(y) == doctest::Approx(fd1([&](double v) { return m.sigma(v); })).epsilon(1e-6));
        CHECK(m.b_prime(y) == doctest::Approx(fd1([&](double v) { return m.b(v); })).epsilon(1e-6));
    }
}

TEST_CASE("series coefficients extend the closed-form derivatives") {
    const auto m = paper_model();
    const double y0 = 27.9345;
    const auto lam = m.lambda_series(y0, 5);
    CHECK(lam[0] == doctest::Approx(m.lambda(y0)).epsilon(1e-15));
    CHECK(lam[1] == doctest::Approx(m.lambda_prime(y0)).epsilon(1e-14));
    CHECK(2.0 * lam[2] == doctest::Approx(m.lambda_second(y0)).epsilon(1e-14));
    // third derivative of sqrt is (3/8) y^{-5/2}
    CHECK(6.0 * lam[3] == doctest::Approx(0.0811 * 0.375 * std::pow(y0, -2.5)).epsilon(1e-13));

    const auto b = m.b_series(y0, 4);
    CHECK(b[0] == doctest::Approx(m.b(y0)).scale(1.0));
    CHECK(b[1] == -1.0);
    CHECK(b[2] == 0.0);

    const auto c = MarketModel::constant(0.1, 0.2, 1.0, 1.0, 0.5, 0.0).lambda_series(0.0, 3);
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == 0.0);
}

TEST_CASE("factor domain guard") {
    const auto m = paper_model();
    CHECK_THROWS_AS(m.lambda(0.0), std::domain_error);
    CHECK_THROWS_AS(m.sigma(-1.0), std::domain_error);
    CHECK_THROWS_AS(m.a_series(1e-9, 3), std::domain_error);
    CHECK_NOTHROW(m.lambda(1e-5));
}

TEST_CASE("model bounds report") {
    const auto grid = linear_grid(1.0, 100.0, 200);
    const auto ok = validate_model_bounds(MarketModel::constant(0.1, 0.2, 0.0, 1.0, 0.0, 0.0), grid, 10.0);
    CHECK(ok.pass);
    CHECK(ok.sup == doctest::Approx(2.5).epsilon(1e-14));

    const auto warn = validate_model_bounds(paper_model(), grid, 10.0);
    CHECK_FALSE(warn.pass);
    CHECK(warn.sup > 10.0);
    CHECK(warn.argmax_y == doctest::Approx(100.0));

    const auto inf_budget = validate_model_bounds(
        MarketModel::constant(0.1, 0.2, 0.0, 0.0, 0.0, 0.0), grid, std::numeric_limits<double>::infinity());
    CHECK(inf_budget.pass);  // 1/a is infinite, only an infinite budget accepts it
}
