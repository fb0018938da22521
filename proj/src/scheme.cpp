#include "horizon/scheme.hpp"

#include "horizon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace horizon {

Partition Partition::uniform(int n, double T) {
    if (n < 1) throw std::invalid_argument("partition needs at least one interval");
    if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
    Partition p;
    p.knots.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) p.knots[static_cast<size_t>(k)] = T * static_cast<double>(k) / n;
    p.knots.back() = T;
    return p;
}

Partition Partition::from_knots(std::vector<double> knots) {
    if (knots.size() < 2) throw std::invalid_argument("partition needs at least two knots");
    if (knots.front() != 0.0) throw std::invalid_argument("partition must start at time 0");
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1])) throw std::invalid_argument("partition knots must be strictly increasing");
    if (!std::isfinite(knots.back())) throw std::invalid_argument("partition knots must be finite");
    Partition p;
    p.knots = std::move(knots);
    return p;
}

SchemeSurrogate::SchemeSurrogate(Partition partition, UtilitySpec utility, MarketModel model,
                                 SchemeDerivMode mode, SchemeBackend backend)
    : partition_(std::move(partition)), utility_(std::move(utility)), model_(std::move(model)), mode_(mode) {
    switch (backend) {
        case SchemeBackend::taylor_jets: use_fd_ = false; break;
        case SchemeBackend::finite_difference: use_fd_ = true; break;
        case SchemeBackend::auto_select:
            use_fd_ = utility_.derivative_order_available() < required_derivative_order();
            break;
    }
}

int SchemeSurrogate::required_derivative_order() const {
    return 4 + 2 * (partition_.intervals() - 1);
}

int SchemeSurrogate::interval_index(double t) const {
    const auto& k = partition_.knots;
    if (!(t >= k.front() && t <= k.back())) throw std::domain_error("scheme evaluated outside [0, T]");
    auto it = std::upper_bound(k.begin(), k.end(), t);
    int idx = static_cast<int>(it - k.begin()) - 1;
    return std::min(idx, partition_.intervals() - 1);
}

Taylor2 SchemeSurrogate::step_operator(const Taylor2& g, double y, int out_degree, int knot) const {
    const Taylor2 gx = g.deriv_x().truncated(out_degree);
    const Taylor2 gxx = g.deriv_x().deriv_x().truncated(out_degree);
    if (gxx.value() >= 0.0)
        throw concavity_error("scheme iterate lost wealth-concavity at knot t_" + std::to_string(knot) +
                              " = " + std::to_string(partition_.knots[static_cast<size_t>(knot)]) +
                              "; refine the partition");
    const Taylor2 gxy = g.deriv_x().deriv_y().truncated(out_degree);
    const Taylor2 gy = g.deriv_y().truncated(out_degree);
    const Taylor2 gyy = g.deriv_y().deriv_y().truncated(out_degree);

    const Taylor2 lam = Taylor2::from_y_series(model_.lambda_series(y, out_degree), out_degree);
    const Taylor2 a = Taylor2::from_y_series(model_.a_series(y, out_degree), out_degree);
    const Taylor2 b = Taylor2::from_y_series(model_.b_series(y, out_degree), out_degree);

    const Taylor2 num = lam * gx + model_.rho() * (a * gxy);
    return -0.5 * (num * num) / gxx + 0.5 * ((a * a) * gyy) + b * gy;
}

Taylor2 SchemeSurrogate::knot_jet(int k, double x, double y, int degree) const {
    if (!(x > 0.0)) throw std::domain_error("scheme evaluated at non-positive wealth");
    if (k == partition_.intervals())
        return Taylor2::from_x_series(utility_.taylor_coefficients(x, degree), degree);
    const Taylor2 g = knot_jet(k + 1, x, y, degree + 2);
    const double dt = partition_.knots[static_cast<size_t>(k) + 1] - partition_.knots[static_cast<size_t>(k)];
    return g.truncated(degree) + dt * step_operator(g, y, degree, k + 1);
}

namespace {

struct SpatialPartials {
    double v, dx, dy, dxx, dxy, dyy;
};

double step_value(const SpatialPartials& p, const MarketModel& model, double y, int knot,
                  const std::vector<double>& knots) {
    if (p.dxx >= 0.0)
        throw concavity_error("scheme iterate lost wealth-concavity at knot t_" + std::to_string(knot) +
                              " = " + std::to_string(knots[static_cast<size_t>(knot)]) +
                              "; refine the partition");
    const double a = model.a(y);
    const double num = model.lambda(y) * p.dx + model.rho() * a * p.dxy;
    return -0.5 * num * num / p.dxx + 0.5 * a * a * p.dyy + model.b(y) * p.dy;
}

SpatialPartials stencil(const std::function<double(double, double)>& f, double x, double y) {
    // stencils nest across recursion levels, and each second difference
    // amplifies the inner level's roundoff by 1/h^2; the step must stay much
    // larger than the 1e-5 a single differentiation would use
    const double hx = 2e-3 * std::max(1.0, std::abs(x));
    const double hy = 2e-3 * std::max(1.0, std::abs(y));
    SpatialPartials p;
    p.v = f(x, y);
    const double fpx = f(x + hx, y), fmx = f(x - hx, y);
    const double fpy = f(x, y + hy), fmy = f(x, y - hy);
    p.dx = (fpx - fmx) / (2.0 * hx);
    p.dxx = (fpx - 2.0 * p.v + fmx) / (hx * hx);
    p.dy = (fpy - fmy) / (2.0 * hy);
    p.dyy = (fpy - 2.0 * p.v + fmy) / (hy * hy);
    p.dxy = (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) /
            (4.0 * hx * hy);
    return p;
}

}  // namespace

double SchemeSurrogate::knot_value_fd(int k, double x, double y) const {
    if (!(x > 0.0)) throw std::domain_error("scheme evaluated at non-positive wealth");
    if (k == partition_.intervals()) return utility_(x);
    const auto next = [this, k](double xx, double yy) { return knot_value_fd(k + 1, xx, yy); };
    const SpatialPartials p = stencil(next, x, y);
    const double dt = partition_.knots[static_cast<size_t>(k) + 1] - partition_.knots[static_cast<size_t>(k)];
    return p.v + dt * step_value(p, model_, y, k + 1, partition_.knots);
}

ValuePartials SchemeSurrogate::partials_fd(int k, double t, double x, double y) const {
    const int anchor = k + 1;
    const double tau = partition_.knots[static_cast<size_t>(anchor)] - t;
    const SpatialPartials pa = stencil(
        [this, anchor](double xx, double yy) { return knot_value_fd(anchor, xx, yy); }, x, y);
    const double h_val = step_value(pa, model_, y, anchor, partition_.knots);

    SpatialPartials ps = pa;
    if (mode_ == SchemeDerivMode::full_expression && tau != 0.0) {
        ps = stencil([this, t](double xx, double yy) { return value(t, xx, yy); }, x, y);
        ps.v = pa.v + tau * h_val;
    } else {
        ps.v = pa.v + tau * h_val;
    }
    ValuePartials out;
    out.value = ps.v;
    out.dt = -h_val;
    out.dx = ps.dx;
    out.dy = ps.dy;
    out.dxx = ps.dxx;
    out.dxy = ps.dxy;
    out.dyy = ps.dyy;
    return out;
}

double SchemeSurrogate::value(double t, double x, double y) const {
    const int k = interval_index(t);
    const int anchor = k + 1;
    const double tau = partition_.knots[static_cast<size_t>(anchor)] - t;
    if (use_fd_) {
        const auto next = [this, anchor](double xx, double yy) { return knot_value_fd(anchor, xx, yy); };
        const SpatialPartials p = stencil(next, x, y);
        return p.v + tau * step_value(p, model_, y, anchor, partition_.knots);
    }
    const Taylor2 g = knot_jet(anchor, x, y, 2);
    const SpatialPartials p{g.value(), g.dx(), g.dy(), g.dxx(), g.dxy(), g.dyy()};
    return p.v + tau * step_value(p, model_, y, anchor, partition_.knots);
}

ValuePartials SchemeSurrogate::eval(double t, double x, double y) const {
    const int k = interval_index(t);
    if (use_fd_) return partials_fd(k, t, x, y);

    const int anchor = k + 1;
    const double tau = partition_.knots[static_cast<size_t>(anchor)] - t;
    const Taylor2 g = knot_jet(anchor, x, y, 4);
    const Taylor2 h = step_operator(g, y, 2, anchor);

    ValuePartials out;
    out.dt = -h.value();
    if (mode_ == SchemeDerivMode::full_expression) {
        const Taylor2 comb = g.truncated(2) + tau * h;
        out.value = comb.value();
        out.dx = comb.dx();
        out.dy = comb.dy();
        out.dxx = comb.dxx();
        out.dxy = comb.dxy();
        out.dyy = comb.dyy();
    } else {
        out.value = g.value() + tau * h.value();
        out.dx = g.dx();
        out.dy = g.dy();
        out.dxx = g.dxx();
        out.dxy = g.dxy();
        out.dyy = g.dyy();
    }
    return out;
}

double SchemeSurrogate::portfolio(double t, double x, double y) const {
    return pi_from_partials(eval(t, x, y), model_, y);
}

ValueSurrogate SchemeSurrogate::as_surrogate() const {
    ValueSurrogate s;
    s.kind = SurrogateKind::scheme;
    s.horizon = partition_.horizon();
    s.eval = [copy = *this](double t, double x, double y) { return copy.eval(t, x, y); };
    return s;
}

}  // namespace horizon
