#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "orthotraj/core_model.hpp"

namespace orthotraj {

/// Which way to leave the start point. Forward moves with dy/ds > 0 for the
/// orthogonal family, and along the field vector for the classic fixtures.
enum class TraceDirection { Forward, Backward };

struct TraceConfig {
    Point start;
    std::optional<double> initial_slope_hint;
    double step = 1e-2;    // initial arc-length step; accepted steps never exceed 2x this
    double max_arc = 50.0;
    double tol = 1e-8;     // local error per accepted step
    TraceDirection direction = TraceDirection::Forward;

    void validate() const;
};

enum class TraceTermination { ArcLimit, BranchLoss, Singularity, DomainExit };

std::string_view to_string(TraceTermination t) noexcept;

struct TraceSample {
    Point point;
    double p = 0.0;    // dy/dx; +-inf on a vertical tangent
    double arc = 0.0;  // arc length from the start
};

struct TraceResult {
    std::vector<TraceSample> samples;
    TraceTermination terminated_by = TraceTermination::ArcLimit;
    double potential_drift = 0.0;  // max |F - F0| along the trace
    double level = 0.0;            // starting value of the conserved quantity
};

/// Integrates y (y')^3 = (y')^2 (2 - x) + 1 in arc length from cfg.start.
///
/// The state is (x, y); the tangent at each stage comes from the real roots of
/// q^3 - (x - 2) q - y = 0 with q = dx/dy = 1/p, taking the root nearest the one
/// at the start of the step. Working in q keeps vertical tangents (p = inf) on
/// the x-axis regular. Steps use Dormand-Prince 5(4) with local error control.
///
/// The drift is measured on the level of the closed-form family,
/// potential(y, p) * sign(q), which equals C for the member through the start.
/// Samples with |p| > 1e3 are left out of the drift, since the potential is
/// singular where the curve crosses the x-axis.
///
/// Throws NoBranch if no real slope passes through the start, or if the hint
/// is not within 0.1 of one.
TraceResult trace_orthogonal(const TraceConfig& cfg);

enum class ClassicKind { HyperbolaPair, Monopole, ShiftedMonopole };

std::string_view to_string(ClassicKind k) noexcept;

/// Conserved quantity of the textbook pairs: xy, x^2 + y^2, (x + 1)^2 + y^2.
double classic_invariant(ClassicKind kind, Point pt) noexcept;

/// Integrates y' = -y/x, -x/y or -(x + 1)/y from `start` (cfg.start is ignored).
/// potential_drift holds the drift of classic_invariant.
TraceResult trace_classic(ClassicKind kind, Point start, const TraceConfig& cfg);

/// Level of the closed-form family through (y, q = dx/dy); see trace_orthogonal.
double family_level(double y, double q);

}  // namespace orthotraj
