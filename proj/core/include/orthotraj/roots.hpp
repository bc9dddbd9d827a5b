#pragma once

#include <functional>
#include <vector>

namespace orthotraj {

/// a3 p^3 + a2 p^2 + a1 p + a0
struct CubicCoeffs {
    double a3 = 0.0;
    double a2 = 0.0;
    double a1 = 0.0;
    double a0 = 0.0;

    double operator()(double p) const noexcept { return ((a3 * p + a2) * p + a1) * p + a0; }
    double derivative(double p) const noexcept { return (3.0 * a3 * p + 2.0 * a2) * p + a1; }
    double max_abs() const noexcept;
};

/// Distinct real roots in ascending order with their multiplicities.
struct RootSet {
    std::vector<double> roots;
    std::vector<int> multiplicities;

    std::size_t size() const noexcept { return roots.size(); }
    bool empty() const noexcept { return roots.empty(); }
    int total_multiplicity() const noexcept;
};

/// Relative threshold below which a leading coefficient is treated as zero.
inline constexpr double kDegreeReductionTol = 1e-12;

/// All real roots of a polynomial of degree <= 3.
///
/// Leading coefficients with |a| <= 1e-12 max|a_i| are dropped before solving, so
/// the slope cubic collapses to its quadratic on the x-axis. Three-real-root cases
/// use the trigonometric form, one-real-root cases use Cardano, and near-zero
/// discriminants (|D| <= 1e-10 scale) are resolved as repeated roots. Each simple
/// root then gets one Newton step against the original coefficients, and roots
/// closer than 1e-8 are merged.
///
/// Throws Indeterminate when every coefficient is zero.
RootSet real_roots_cubic(const CubicCoeffs& c);

/// Real slopes p of orthogonal trajectories through (x, y): roots of
/// y p^3 + (x - 2) p^2 - 1.
RootSet slopes_at(double x, double y);

/// Root of f inside [lo, hi] to a bracket width of `tol`. Requires a sign change.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace orthotraj
