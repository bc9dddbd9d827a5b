#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "orthotraj/core_model.hpp"

namespace orthotraj {

/// Product of the line slope and the curve slope at a crossing. `infinite`
/// marks a crossing at the curve's vertical tangent (t = 0).
struct SlopeProduct {
    double value = 0.0;
    bool infinite = false;
};

struct IntersectionRecord {
    double t = 0.0;
    Point point;
    SlopeProduct slope_product;
    bool orthogonal = false;
};

inline constexpr int kScanPoints = 10'000;
inline constexpr double kOrthogonalTol = 1e-6;

/// Crossings of the line y = m x - 2m - m^3 with the curve for t in [t_min, t_max].
///
/// g(t) = y(t) - line(x(t)) is sign-scanned on kScanPoints uniform points and
/// each bracket is refined with bracketed_root. Tangential contacts and root
/// pairs closer than the scan spacing are not resolved.
std::vector<IntersectionRecord> intersections(double m, const TrajectoryCurve& curve, double t_min,
                                              double t_max);

/// Coefficients (a, b, c, d, e, f) of a x^2 + b xy + c y^2 + d x + e y + f, unit norm.
struct ConicFit {
    std::array<double, 6> coeffs{};
    double residual_rms = 0.0;  // in the centred, unit-RMS coordinates used for the fit
};

/// Algebraic least-squares conic through the points: the right singular vector
/// of the smallest singular value of the design matrix. Points are centred and
/// isotropically scaled before fitting; the coefficients are mapped back to the
/// input coordinates.
///
/// Throws DegenerateInput for fewer than 12 points or when the fit is not unique
/// (e.g. collinear points).
ConicFit fit_conic(std::span<const Point> points);

inline constexpr double kConicAccept = 1e-8;
inline constexpr double kConicReject = 1e-3;
inline constexpr double kParabolaDiscriminantTol = 1e-6;

enum class ConicVerdict { Parabola, OtherConic, NotConic, Inconclusive };

std::string_view to_string(ConicVerdict v) noexcept;

struct Classification {
    ConicFit fit;
    double discriminant = 0.0;  // b^2 - 4ac of the unit-norm coefficients
    ConicVerdict verdict = ConicVerdict::Inconclusive;
    std::vector<double> cusps;
};

/// Samples the curve uniformly in t and classifies it by conic residual.
/// Residuals between kConicAccept and kConicReject are reported as Inconclusive.
Classification classify(const TrajectoryCurve& curve, int samples = 200, double t_min = -3.0,
                        double t_max = 3.0);

/// True iff the sampled curve fits a conic to 1e-8 RMS with a vanishing discriminant.
bool is_parabola(const TrajectoryCurve& curve);

}  // namespace orthotraj
