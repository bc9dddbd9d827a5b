#include "orthotraj/tracer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "orthotraj/error.hpp"
#include "orthotraj/exact_ode.hpp"
#include "orthotraj/roots.hpp"

namespace orthotraj {

void TraceConfig::validate() const {
    if (!std::isfinite(start.x) || !std::isfinite(start.y)) {
        throw Error(ErrorKind::Domain, "trace start must be finite");
    }
    if (!(step > 0.0) || !(max_arc > 0.0) || !(tol > 0.0) || !std::isfinite(step) ||
        !std::isfinite(max_arc) || !std::isfinite(tol)) {
        throw Error(ErrorKind::Domain, "trace step, max_arc and tol must be positive");
    }
    if (initial_slope_hint && !std::isfinite(*initial_slope_hint)) {
        throw Error(ErrorKind::Domain, "slope hint must be finite");
    }
}

std::string_view to_string(TraceTermination t) noexcept {
    switch (t) {
        case TraceTermination::ArcLimit: return "arc-limit";
        case TraceTermination::BranchLoss: return "branch-loss";
        case TraceTermination::Singularity: return "singularity";
        case TraceTermination::DomainExit: return "domain-exit";
    }
    return "unknown";
}

std::string_view to_string(ClassicKind k) noexcept {
    switch (k) {
        case ClassicKind::HyperbolaPair: return "hyperbola-pair";
        case ClassicKind::Monopole: return "monopole";
        case ClassicKind::ShiftedMonopole: return "shifted-monopole";
    }
    return "unknown";
}

double family_level(double y, double q) {
    // potential() is in terms of p = 1/q; multiplying by sign(q) folds the two
    // p-sign branches back onto one x-axis-symmetric curve.
    return potential(y, 1.0 / q).F * (q < 0.0 ? -1.0 : 1.0);
}

namespace {

struct Dir {
    double x = 0.0;
    double y = 0.0;
};

double dot(const Dir& a, const Dir& b) { return a.x * b.x + a.y * b.y; }

Dir oriented(Dir d, const Dir& ref) {
    if (dot(d, ref) < 0.0) {
        d.x = -d.x;
        d.y = -d.y;
    }
    return d;
}

double slope_of(const Dir& d) {
    if (d.x == 0.0) {
        return d.y >= 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    }
    return d.y / d.x;
}

constexpr double kBoundary = 1e8;
constexpr double kBranchJump = 0.5;

// Dormand-Prince 5(4) tableau.
constexpr std::array<std::array<double, 6>, 7> kA{{
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
constexpr std::array<double, 7> kErr{71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                                     -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// Field interface used by integrate():
//   std::optional<Dir> direction(Point) const   unit tangent near the current branch
//   void accept(Point, Dir)                    move the branch reference
//   double slope() const                       dy/dx at the reference
//   std::optional<double> level(Point) const   conserved quantity, if measurable here
//   bool singular_here(Point) const            explains a collapsed step
template <class Field>
TraceResult integrate(Field& field, const TraceConfig& cfg, Point start, Dir dir0) {
    TraceResult out;
    const double h_max = 2.0 * cfg.step;
    const double h_min = cfg.tol;

    Point pt = start;
    Dir dir = dir0;
    double arc = 0.0;
    double h = cfg.step;

    out.samples.push_back(TraceSample{pt, field.slope(), 0.0});
    const std::optional<double> level0 = field.level(pt);
    out.level = level0.value_or(std::numeric_limits<double>::quiet_NaN());

    auto record_level = [&](Point p) {
        if (!level0) {
            return;
        }
        if (auto lv = field.level(p)) {
            out.potential_drift = std::max(out.potential_drift, std::abs(*lv - *level0));
        }
    };

    while (arc < cfg.max_arc) {
        h = std::min({h, h_max, cfg.max_arc - arc});

        std::array<Dir, 7> k{};
        k[0] = dir;
        bool stage_failed = false;
        Point trial{};
        for (int s = 1; s < 7 && !stage_failed; ++s) {
            Point stage = pt;
            for (int j = 0; j < s; ++j) {
                stage.x += h * kA[s][j] * k[j].x;
                stage.y += h * kA[s][j] * k[j].y;
            }
            if (s == 6) {
                trial = stage;
            }
            auto d = field.direction(stage);
            if (!d) {
                stage_failed = true;
                break;
            }
            k[s] = *d;
        }

        double err = std::numeric_limits<double>::infinity();
        if (!stage_failed) {
            double ex = 0.0;
            double ey = 0.0;
            for (int j = 0; j < 7; ++j) {
                ex += kErr[j] * k[j].x;
                ey += kErr[j] * k[j].y;
            }
            err = h * std::max(std::abs(ex), std::abs(ey));
        }

        if (stage_failed || !(err <= cfg.tol)) {
            double factor = 0.5;
            if (!stage_failed && std::isfinite(err) && err > 0.0) {
                factor = std::clamp(0.9 * std::pow(cfg.tol / err, 0.2), 0.1, 0.5);
            }
            h *= factor;
            if (h < h_min) {
                out.terminated_by = field.singular_here(pt) ? TraceTermination::Singularity
                                                            : TraceTermination::BranchLoss;
                return out;
            }
            continue;
        }

        if (!std::isfinite(trial.x) || !std::isfinite(trial.y) ||
            std::max(std::abs(trial.x), std::abs(trial.y)) > kBoundary) {
            out.terminated_by = TraceTermination::DomainExit;
            return out;
        }

        pt = trial;
        dir = k[6];
        arc += h;
        field.accept(pt, dir);
        out.samples.push_back(TraceSample{pt, field.slope(), arc});
        record_level(pt);

        const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(cfg.tol / err, 0.2), 1.0, 5.0) : 5.0;
        h *= grow;
    }
    out.terminated_by = TraceTermination::ArcLimit;
    return out;
}

// Orthogonal family: tangent (q, 1) / sqrt(1 + q^2), q a root of q^3 - (x - 2) q - y.
class OrthogonalField {
public:
    OrthogonalField(double q0, Dir dir0) : q_(q0), dir_(dir0) {}

    static CubicCoeffs cubic_at(Point pt) { return CubicCoeffs{1.0, 0.0, -(pt.x - 2.0), -pt.y}; }

    static Dir tangent(double q) {
        const double n = std::sqrt(1.0 + q * q);
        return Dir{q / n, 1.0 / n};
    }

    std::optional<double> nearest_root(Point pt) const {
        if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
            return std::nullopt;
        }
        const RootSet rs = real_roots_cubic(cubic_at(pt));
        std::optional<double> best;
        for (double r : rs.roots) {
            if (!best || std::abs(r - q_) < std::abs(*best - q_)) {
                best = r;
            }
        }
        if (!best || std::abs(*best - q_) > kBranchJump) {
            return std::nullopt;
        }
        return best;
    }

    std::optional<Dir> direction(Point pt) const {
        auto q = nearest_root(pt);
        if (!q) {
            return std::nullopt;
        }
        return oriented(tangent(*q), dir_);
    }

    void accept(Point pt, Dir dir) {
        // The root at the accepted point replaces the stage-7 estimate.
        if (auto q = nearest_root(pt)) {
            q_ = *q;
            dir_ = oriented(tangent(q_), dir);
        } else {
            dir_ = dir;
        }
    }

    double slope() const { return 1.0 / q_; }

    std::optional<double> level(Point pt) const {
        if (std::abs(q_) < 1e-3) {
            return std::nullopt;
        }
        return family_level(pt.y, q_);
    }

    bool singular_here(Point pt) const {
        // A collapsed step next to a double root of the q-cubic is a cusp of the
        // closed-form curve (the trace has reached the envelope of the lines).
        const CubicCoeffs c = cubic_at(pt);
        const double dq = c.derivative(q_);
        return std::abs(dq) <= 1e-2 * std::max({1.0, std::abs(c.a1), 3.0 * q_ * q_});
    }

private:
    double q_;
    Dir dir_;
};

class ClassicField {
public:
    ClassicField(ClassicKind kind, Dir dir0) : kind_(kind), dir_(dir0) {}

    static std::optional<Dir> raw(ClassicKind kind, Point pt) {
        Dir v;
        switch (kind) {
            case ClassicKind::HyperbolaPair: v = {pt.x, -pt.y}; break;
            case ClassicKind::Monopole: v = {pt.y, -pt.x}; break;
            case ClassicKind::ShiftedMonopole: v = {pt.y, -(pt.x + 1.0)}; break;
        }
        const double n = std::hypot(v.x, v.y);
        if (!(n > 1e-12) || !std::isfinite(n)) {
            return std::nullopt;
        }
        return Dir{v.x / n, v.y / n};
    }

    std::optional<Dir> direction(Point pt) const {
        auto d = raw(kind_, pt);
        if (!d) {
            return std::nullopt;
        }
        return oriented(*d, dir_);
    }

    void accept(Point, Dir dir) { dir_ = dir; }
    double slope() const { return slope_of(dir_); }
    std::optional<double> level(Point pt) const { return classic_invariant(kind_, pt); }
    bool singular_here(Point pt) const { return !raw(kind_, pt).has_value(); }

private:
    ClassicKind kind_;
    Dir dir_;
};

}  // namespace

TraceResult trace_orthogonal(const TraceConfig& cfg) {
    cfg.validate();
    const RootSet slopes = slopes_at(cfg.start.x, cfg.start.y);
    if (slopes.empty()) {
        throw Error(ErrorKind::NoBranch, "no real orthogonal slope through (" +
                                             std::to_string(cfg.start.x) + ", " +
                                             std::to_string(cfg.start.y) + ")");
    }
    double p0 = slopes.roots.front();
    if (cfg.initial_slope_hint) {
        const double hint = *cfg.initial_slope_hint;
        auto it = std::min_element(slopes.roots.begin(), slopes.roots.end(),
                                   [hint](double a, double b) {
                                       return std::abs(a - hint) < std::abs(b - hint);
                                   });
        if (std::abs(*it - hint) > 0.1) {
            throw Error(ErrorKind::NoBranch, "no slope within 0.1 of the hint " +
                                                 std::to_string(hint));
        }
        p0 = *it;
    }

    const double q0 = 1.0 / p0;
    Dir dir0 = OrthogonalField::tangent(q0);
    if (cfg.direction == TraceDirection::Backward) {
        dir0 = Dir{-dir0.x, -dir0.y};
    }
    OrthogonalField field(q0, dir0);
    return integrate(field, cfg, cfg.start, dir0);
}

double classic_invariant(ClassicKind kind, Point pt) noexcept {
    switch (kind) {
        case ClassicKind::HyperbolaPair: return pt.x * pt.y;
        case ClassicKind::Monopole: return pt.x * pt.x + pt.y * pt.y;
        case ClassicKind::ShiftedMonopole: return (pt.x + 1.0) * (pt.x + 1.0) + pt.y * pt.y;
    }
    return 0.0;
}

TraceResult trace_classic(ClassicKind kind, Point start, const TraceConfig& cfg) {
    TraceConfig local = cfg;
    local.start = start;
    local.validate();
    auto d = ClassicField::raw(kind, start);
    if (!d) {
        throw Error(ErrorKind::Domain, std::string("start is the singular point of ") +
                                           std::string(to_string(kind)));
    }
    Dir dir0 = *d;
    if (cfg.direction == TraceDirection::Backward) {
        dir0 = Dir{-dir0.x, -dir0.y};
    }
    ClassicField field(kind, dir0);
    return integrate(field, local, start, dir0);
}

}  // namespace orthotraj
