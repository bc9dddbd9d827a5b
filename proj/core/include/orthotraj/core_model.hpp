#pragma once

#include <vector>

namespace orthotraj {

/// Default comparison: relative 1e-9 with an absolute floor of 1e-12.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

bool approx_equal(double a, double b, double rel = kRelTol, double abs = kAbsTol) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Line {
    double slope = 0.0;
    double intercept = 0.0;

    double y_at(double x) const noexcept { return slope * x + intercept; }
};

/// One-parameter family of lines y = m x + f(m), with f a polynomial given by
/// its coefficients in ascending powers. Trailing zero coefficients are dropped
/// on construction (a single zero is kept for f = 0).
class LineFamily {
public:
    explicit LineFamily(std::vector<double> f_coeffs);

    /// f(m) = -2m - m^3, the family normal to the parabola y^2 = 4x.
    static LineFamily cubic();

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double f(double m) const noexcept;
    bool is_cubic_family() const noexcept;

private:
    std::vector<double> coeffs_;
};

/// Member of the orthogonal family
///   x = t^2 - C / sqrt(1 + t^2),  y = 2t + C t / sqrt(1 + t^2).
struct TrajectoryCurve {
    double C = 0.0;

    explicit TrajectoryCurve(double c);
};

struct Velocity {
    double dx = 0.0;
    double dy = 0.0;
};

struct CurveSample {
    double t = 0.0;
    Point point;
    Velocity velocity;
    bool regular = true;
};

/// dy/dx of a curve sample. `vertical` marks the t = 0 tangent, where the value
/// is +inf and the direction is carried by the velocity vector.
struct Slope {
    double value = 0.0;
    bool vertical = false;
};

Line line_at(const LineFamily& family, double m);

Point curve_point(const TrajectoryCurve& curve, double t);

/// dx/dt = t g(t), dy/dt = g(t) with g(t) = 2 + C (1 + t^2)^(-3/2).
Velocity curve_velocity(const TrajectoryCurve& curve, double t);

CurveSample sample(const TrajectoryCurve& curve, double t);

/// Throws DegeneratePoint at a cusp; returns a vertical slope at t = 0.
Slope curve_slope(const TrajectoryCurve& curve, double t);

/// y - (p x - 2p - p^3): zero iff (x, y, p) satisfies the line-family ODE.
double ode_c_residual(double x, double y, double p) noexcept;

/// y p^3 - p^2 (2 - x) - 1: zero iff p is an orthogonal-trajectory slope at (x, y).
double ode_o_residual(double x, double y, double p) noexcept;

/// Point where line m meets the curve at right angles; always at t = -m.
CurveSample orthogonal_foot(const LineFamily& family, double m, const TrajectoryCurve& curve);

/// Parameters where both velocity components vanish, ascending.
std::vector<double> cusp_parameters(const TrajectoryCurve& curve);

}  // namespace orthotraj
