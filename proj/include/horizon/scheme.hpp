#pragma once

#include "horizon/market.hpp"
#include "horizon/surrogate.hpp"
#include "horizon/taylor.hpp"
#include "horizon/utility.hpp"

#include <vector>

namespace horizon {

// Knot times 0 = t_0 < t_1 < ... < t_n = T of the backward recursion.
struct Partition {
    std::vector<double> knots;

    static Partition uniform(int n, double T);
    static Partition from_knots(std::vector<double> knots);

    double horizon() const { return knots.back(); }
    int intervals() const { return static_cast<int>(knots.size()) - 1; }
};

// Which partials the in-interval strategy differentiates: the whole
// one-step expression including its bracket, or only the anchor iterate.
enum class SchemeDerivMode { full_expression, anchor_only };

// How iterate partials are produced: exact truncated-Taylor (forward-mode AD)
// arithmetic over the recursion, or nested central differences.  auto_select
// uses the Taylor route whenever the utility supplies derivatives of the
// order the recursion depth needs and falls back to differences otherwise
// (lower accuracy; step 1e-5 * max(1, |coordinate|)).
enum class SchemeBackend { auto_select, taylor_jets, finite_difference };

// The backward one-step extension of the first-order approximation over a
// partition: each knot value adds (t_{k+1} - t) times the HJB spatial
// operator of the next knot's iterate, anchored at U_T.  For y-independent
// terminal data and a single interval this reproduces the first-order
// surrogate exactly.
class SchemeSurrogate {
  public:
    SchemeSurrogate(Partition partition, UtilitySpec utility, MarketModel model,
                    SchemeDerivMode mode = SchemeDerivMode::full_expression,
                    SchemeBackend backend = SchemeBackend::auto_select);

    ValuePartials eval(double t, double x, double y) const;
    double value(double t, double x, double y) const;
    double portfolio(double t, double x, double y) const;
    ValueSurrogate as_surrogate() const;

    const Partition& partition() const { return partition_; }
    SchemeDerivMode mode() const { return mode_; }
    bool uses_finite_differences() const { return use_fd_; }
    // Utility-derivative order the Taylor route needs at the deepest knot.
    int required_derivative_order() const;

  private:
    int interval_index(double t) const;
    Taylor2 knot_jet(int k, double x, double y, int degree) const;
    Taylor2 step_operator(const Taylor2& g, double y, int out_degree, int knot) const;
    double knot_value_fd(int k, double x, double y) const;
    ValuePartials partials_fd(int k, double t, double x, double y) const;

    Partition partition_;
    UtilitySpec utility_;
    MarketModel model_;
    SchemeDerivMode mode_;
    bool use_fd_;
};

}  // namespace horizon
