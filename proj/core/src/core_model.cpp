#include "orthotraj/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orthotraj/error.hpp"

namespace orthotraj {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::DegeneratePoint: return "degenerate-point";
        case ErrorKind::DegenerateFoot: return "degenerate-foot";
        case ErrorKind::UnsupportedFamily: return "unsupported-family";
        case ErrorKind::Indeterminate: return "indeterminate-polynomial";
        case ErrorKind::NoBracket: return "no-bracket";
        case ErrorKind::SingularFactor: return "singular-factor";
        case ErrorKind::NoBranch: return "no-branch";
        case ErrorKind::DegenerateInput: return "degenerate-input";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

bool approx_equal(double a, double b, double rel, double abs) noexcept {
    if (a == b) {
        return true;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(abs, rel * scale);
}

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::Domain, std::string(name) + " must be finite");
    }
}

}  // namespace

LineFamily::LineFamily(std::vector<double> f_coeffs) : coeffs_(std::move(f_coeffs)) {
    if (coeffs_.empty()) {
        throw Error(ErrorKind::Domain, "line family needs at least one coefficient");
    }
    for (double c : coeffs_) {
        require_finite(c, "line family coefficient");
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

LineFamily LineFamily::cubic() { return LineFamily({0.0, -2.0, 0.0, -1.0}); }

double LineFamily::f(double m) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * m + *it;
    }
    return acc;
}

bool LineFamily::is_cubic_family() const noexcept {
    return coeffs_ == std::vector<double>{0.0, -2.0, 0.0, -1.0};
}

TrajectoryCurve::TrajectoryCurve(double c) : C(c) { require_finite(c, "C"); }

Line line_at(const LineFamily& family, double m) {
    require_finite(m, "m");
    return Line{m, family.f(m)};
}

Point curve_point(const TrajectoryCurve& curve, double t) {
    require_finite(t, "t");
    const double s = std::sqrt(1.0 + t * t);
    return Point{t * t - curve.C / s, 2.0 * t + curve.C * t / s};
}

Velocity curve_velocity(const TrajectoryCurve& curve, double t) {
    require_finite(t, "t");
    const double w = 1.0 + t * t;
    const double g = 2.0 + curve.C / (w * std::sqrt(w));
    return Velocity{t * g, g};
}

CurveSample sample(const TrajectoryCurve& curve, double t) {
    CurveSample s;
    s.t = t;
    s.point = curve_point(curve, t);
    s.velocity = curve_velocity(curve, t);
    s.regular = std::max(std::abs(s.velocity.dx), std::abs(s.velocity.dy)) > 0.0;
    return s;
}

Slope curve_slope(const TrajectoryCurve& curve, double t) {
    const Velocity v = curve_velocity(curve, t);
    if (v.dx == 0.0 && v.dy == 0.0) {
        throw Error(ErrorKind::DegeneratePoint,
                    "curve C=" + std::to_string(curve.C) + " is singular at t=" + std::to_string(t));
    }
    if (v.dx == 0.0) {
        return Slope{std::numeric_limits<double>::infinity(), true};
    }
    return Slope{v.dy / v.dx, false};
}

double ode_c_residual(double x, double y, double p) noexcept {
    return y - (p * x - 2.0 * p - p * p * p);
}

double ode_o_residual(double x, double y, double p) noexcept {
    const double p2 = p * p;
    return y * p2 * p - p2 * (2.0 - x) - 1.0;
}

CurveSample orthogonal_foot(const LineFamily& family, double m, const TrajectoryCurve& curve) {
    if (!family.is_cubic_family()) {
        throw Error(ErrorKind::UnsupportedFamily,
                    "orthogonal_foot is only available for f(m) = -2m - m^3");
    }
    require_finite(m, "m");
    CurveSample foot = sample(curve, -m);
    if (!foot.regular) {
        throw Error(ErrorKind::DegenerateFoot,
                    "foot of line m=" + std::to_string(m) + " lands on a cusp of C=" +
                        std::to_string(curve.C));
    }
    return foot;
}

std::vector<double> cusp_parameters(const TrajectoryCurve& curve) {
    // g(t) = 0  <=>  (1 + t^2)^(3/2) = -C/2, which needs C <= -2.
    const double C = curve.C;
    if (C > -2.0) {
        return {};
    }
    if (C == -2.0) {
        return {0.0};
    }
    const double t = std::sqrt(std::max(0.0, std::cbrt(C * C / 4.0) - 1.0));
    if (t == 0.0) {
        return {0.0};
    }
    return {-t, t};
}

}  // namespace orthotraj
