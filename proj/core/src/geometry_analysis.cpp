#include "orthotraj/geometry_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "orthotraj/error.hpp"
#include "orthotraj/roots.hpp"

namespace orthotraj {

std::string_view to_string(ConicVerdict v) noexcept {
    switch (v) {
        case ConicVerdict::Parabola: return "parabola";
        case ConicVerdict::OtherConic: return "other-conic";
        case ConicVerdict::NotConic: return "not-conic";
        case ConicVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

constexpr double kDedupTol = 1e-8;
constexpr double kVerticalSnap = 1e-12;
constexpr double kRefineTol = 1e-13;

IntersectionRecord make_record(double m, const TrajectoryCurve& curve, double t) {
    if (std::abs(t) <= kVerticalSnap) {
        t = 0.0;
    }
    IntersectionRecord rec;
    rec.t = t;
    rec.point = curve_point(curve, t);
    if (t == 0.0) {
        // Vertical tangent: only the horizontal line meets it at a right angle.
        rec.slope_product = SlopeProduct{std::numeric_limits<double>::infinity(), true};
        rec.orthogonal = std::abs(m) <= kVerticalSnap;
    } else {
        // The curve slope is 1/t wherever it is defined, including the limit at a cusp.
        rec.slope_product = SlopeProduct{m / t, false};
        rec.orthogonal = std::abs(rec.slope_product.value + 1.0) <= kOrthogonalTol;
    }
    return rec;
}

}  // namespace

std::vector<IntersectionRecord> intersections(double m, const TrajectoryCurve& curve, double t_min,
                                              double t_max) {
    if (!std::isfinite(m) || !std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
        throw Error(ErrorKind::Domain, "intersections needs finite m and t_min < t_max");
    }
    const Line line = line_at(LineFamily::cubic(), m);
    auto gap = [&](double t) {
        const Point p = curve_point(curve, t);
        return p.y - line.y_at(p.x);
    };

    std::vector<double> roots;
    const double dt = (t_max - t_min) / (kScanPoints - 1);
    double t_prev = t_min;
    double g_prev = gap(t_prev);
    if (g_prev == 0.0) {
        roots.push_back(t_prev);
    }
    for (int i = 1; i < kScanPoints; ++i) {
        const double t = (i == kScanPoints - 1) ? t_max : t_min + i * dt;
        const double g = gap(t);
        if (g == 0.0) {
            roots.push_back(t);
        } else if (g_prev != 0.0 && std::signbit(g) != std::signbit(g_prev)) {
            roots.push_back(bracketed_root(gap, t_prev, t, kRefineTol));
        }
        t_prev = t;
        g_prev = g;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<IntersectionRecord> out;
    for (double r : roots) {
        if (!out.empty() && std::abs(r - out.back().t) <= kDedupTol) {
            continue;
        }
        out.push_back(make_record(m, curve, r));
    }
    return out;
}

ConicFit fit_conic(std::span<const Point> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 12) {
        throw Error(ErrorKind::DegenerateInput,
                    "conic fit needs at least 12 points, got " + std::to_string(n));
    }
    double cx = 0.0;
    double cy = 0.0;
    for (const Point& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorKind::Domain, "conic fit points must be finite");
        }
        cx += p.x;
        cy += p.y;
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    double ms = 0.0;
    for (const Point& p : points) {
        ms += (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
    }
    const double s = std::sqrt(ms / (2.0 * static_cast<double>(n)));
    if (!(s > 0.0)) {
        throw Error(ErrorKind::DegenerateInput, "conic fit points are all coincident");
    }

    Eigen::MatrixXd design(n, 6);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double X = (points[static_cast<std::size_t>(i)].x - cx) / s;
        const double Y = (points[static_cast<std::size_t>(i)].y - cy) / s;
        design.row(i) << X * X, X * Y, Y * Y, X, Y, 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(4) <= 1e-10 * sv(0)) {
        throw Error(ErrorKind::DegenerateInput,
                    "conic fit is not unique (points are collinear or too few distinct)");
    }
    const Eigen::VectorXd v = svd.matrixV().col(5);

    // Undo the centring and scaling: X = (x - cx)/s, Y = (y - cy)/s.
    const double s2 = s * s;
    const double A = v(0) / s2, B = v(1) / s2, C = v(2) / s2;
    const double D = v(3) / s, E = v(4) / s, F = v(5);
    Eigen::Matrix<double, 6, 1> c;
    c << A, B, C, -2.0 * A * cx - B * cy + D, -B * cx - 2.0 * C * cy + E,
        A * cx * cx + B * cx * cy + C * cy * cy - D * cx - E * cy + F;
    c.normalize();
    Eigen::Index imax = 0;
    c.cwiseAbs().maxCoeff(&imax);
    if (c(imax) < 0.0) {
        c = -c;
    }

    ConicFit fit;
    for (int i = 0; i < 6; ++i) {
        fit.coeffs[static_cast<std::size_t>(i)] = c(i);
    }
    fit.residual_rms = sv(5) / std::sqrt(static_cast<double>(n));
    return fit;
}

Classification classify(const TrajectoryCurve& curve, int samples, double t_min, double t_max) {
    if (samples < 12 || !(t_min < t_max)) {
        throw Error(ErrorKind::Domain, "classify needs >= 12 samples and t_min < t_max");
    }
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1);
        pts.push_back(curve_point(curve, t));
    }
    Classification out;
    out.fit = fit_conic(pts);
    const auto& k = out.fit.coeffs;
    out.discriminant = k[1] * k[1] - 4.0 * k[0] * k[2];
    if (out.fit.residual_rms <= kConicAccept) {
        out.verdict = std::abs(out.discriminant) <= kParabolaDiscriminantTol
                          ? ConicVerdict::Parabola
                          : ConicVerdict::OtherConic;
    } else if (out.fit.residual_rms >= kConicReject) {
        out.verdict = ConicVerdict::NotConic;
    } else {
        out.verdict = ConicVerdict::Inconclusive;
    }
    out.cusps = cusp_parameters(curve);
    return out;
}

bool is_parabola(const TrajectoryCurve& curve) {
    return classify(curve).verdict == ConicVerdict::Parabola;
}

}  // namespace orthotraj
