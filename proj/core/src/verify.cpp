#include "orthotraj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orthotraj/core_model.hpp"
#include "orthotraj/error.hpp"
#include "orthotraj/exact_ode.hpp"
#include "orthotraj/geometry_analysis.hpp"
#include "orthotraj/plot.hpp"
#include "orthotraj/tracer.hpp"

namespace orthotraj {

bool SuiteResult::pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

Check at_most(std::string name, double measured, double threshold) {
    return Check{std::move(name), measured, threshold, measured <= threshold};
}

Check at_least(std::string name, double measured, double threshold) {
    return Check{std::move(name), measured, threshold, measured >= threshold};
}

Check exactly(std::string name, double measured, double expected) {
    return Check{std::move(name), measured, expected, measured == expected};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v.push_back(lo + (hi - lo) * i / (n - 1));
    }
    return v;
}

std::vector<double> signed_p_grid(int n) {
    std::vector<double> v = linspace(0.1, 10.0, n);
    for (int i = 0; i < n; ++i) {
        v.push_back(-v[static_cast<std::size_t>(i)]);
    }
    return v;
}

const std::vector<double> kCurveGrid{-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0};

SuiteResult exactness_suite() {
    constexpr double h = 1e-6;
    const DifferentialForm raw = raw_form();
    const DifferentialForm scaled = scaled_form();
    double raw_err = 0.0;
    double scaled_defect = 0.0;
    double grad_err = 0.0;
    for (double y : linspace(-10.0, 10.0, 25)) {
        for (double p : signed_p_grid(20)) {
            const double expect = 2.0 * p * p + 1.0;
            raw_err = std::max(raw_err, std::abs(exactness_defect(raw, y, p, h) - expect) / expect);
            scaled_defect = std::max(scaled_defect, std::abs(exactness_defect(scaled, y, p, h)));

            const double dfdy = (potential(y + h, p).F - potential(y - h, p).F) / (2.0 * h);
            const double dfdp = (potential(y, p + h).F - potential(y, p - h).F) / (2.0 * h);
            const double mt = scaled.m(y, p);
            const double nt = scaled.n(y, p);
            grad_err = std::max(grad_err, std::abs(dfdy - mt) / std::max(1.0, std::abs(mt)));
            grad_err = std::max(grad_err, std::abs(dfdp - nt) / std::max(1.0, std::abs(nt)));
        }
    }
    return SuiteResult{"exactness",
                       {at_most("raw defect vs 2p^2+1 (rel)", raw_err, 1e-8),
                        at_most("scaled defect", scaled_defect, 1e-8),
                        at_most("grad F vs scaled form (rel)", grad_err, 1e-6)}};
}

SuiteResult potential_suite() {
    double level_err = 0.0;
    double param_err = 0.0;
    double sign_err = 0.0;
    for (double C = -4.0; C <= 4.0; C += 1.0) {
        const TrajectoryCurve curve(C);
        for (double p : signed_p_grid(50)) {
            const Point pt = solve_for_xy(p, C);
            level_err = std::max(level_err, std::abs(potential(pt.y, p).F - C));
            const double t = 1.0 / p;
            const Point cp = curve_point(curve, t);
            if (p > 0.0) {
                const double scale = std::max({1.0, std::abs(cp.x), std::abs(cp.y)});
                param_err = std::max(param_err,
                                     std::max(std::abs(pt.x - cp.x), std::abs(pt.y - cp.y)) / scale);
            } else {
                sign_err = std::max(sign_err, std::abs(potential(cp.y, p).F + C));
            }
        }
    }
    return SuiteResult{"potential",
                       {at_most("|F(solve_for_xy(p,C)) - C|", level_err, 1e-9),
                        at_most("solve_for_xy vs curve_point (rel)", param_err, 1e-12),
                        at_most("|F + C| for t < 0", sign_err, 1e-9)}};
}

SuiteResult ode_identity_suite() {
    constexpr double fd_step = 1e-6;
    double ode_o = 0.0;
    double slope_err = 0.0;
    double fd_slope_err = 0.0;
    double vel_err = 0.0;
    double ode_c = 0.0;
    const LineFamily family = LineFamily::cubic();
    for (double C : kCurveGrid) {
        const TrajectoryCurve curve(C);
        for (double t : linspace(-5.0, 5.0, 1001)) {
            const Point a = curve_point(curve, t - fd_step);
            const Point b = curve_point(curve, t + fd_step);
            const Velocity v = curve_velocity(curve, t);
            vel_err = std::max(vel_err, std::abs((b.x - a.x) / (2.0 * fd_step) - v.dx));
            vel_err = std::max(vel_err, std::abs((b.y - a.y) / (2.0 * fd_step) - v.dy));
            if (std::abs(t) < 1e-3) {
                continue;
            }
            const Point pt = curve_point(curve, t);
            const double p = 1.0 / t;
            const double scale =
                std::max({1.0, std::abs(pt.y * p * p * p), std::abs(p * p * (2.0 - pt.x))});
            ode_o = std::max(ode_o, std::abs(ode_o_residual(pt.x, pt.y, p)) / scale);
            const CurveSample s = sample(curve, t);
            if (s.regular) {
                slope_err = std::max(slope_err, std::abs(curve_slope(curve, t).value - p));
            }
            // The difference quotient is rounding-bound where g = dy/dt nears zero (cusps).
            if (std::abs(s.velocity.dy) >= 1e-2) {
                fd_slope_err = std::max(fd_slope_err, std::abs((b.y - a.y) / (b.x - a.x) - p) /
                                                          std::max(1.0, std::abs(p)));
            }
        }
    }
    for (double m : linspace(-3.0, 3.0, 101)) {
        const Line line = line_at(family, m);
        for (double x : linspace(-10.0, 10.0, 41)) {
            const double y = line.y_at(x);
            const double scale = std::max({1.0, std::abs(y), std::abs(m * x), std::abs(m * m * m)});
            ode_c = std::max(ode_c, std::abs(ode_c_residual(x, y, m)) / scale);
        }
    }
    return SuiteResult{"ode-identity",
                       {at_most("ODE(o) residual on curves (rel)", ode_o, 1e-9),
                        at_most("ODE(c) residual on lines (rel)", ode_c, 1e-12),
                        at_most("velocity vs central differences", vel_err, 1e-6),
                        at_most("|curve_slope - 1/t|", slope_err, 1e-9),
                        at_most("finite-difference slope vs 1/t (rel)", fd_slope_err, 1e-6)}};
}

SuiteResult orthogonality_suite() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> m_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> c_dist(-4.0, 4.0);
    const LineFamily family = LineFamily::cubic();
    double incidence = 0.0;
    double product = 0.0;
    double foot_t = 0.0;
    int wrong_count = 0;
    int tested = 0;
    while (tested < 1000) {
        const double m = m_dist(rng);
        const TrajectoryCurve curve(c_dist(rng));
        CurveSample foot;
        try {
            foot = orthogonal_foot(family, m, curve);
        } catch (const Error&) {
            continue;
        }
        ++tested;
        const Line line = line_at(family, m);
        incidence = std::max(incidence, std::abs(foot.point.y - line.y_at(foot.point.x)));
        product = std::max(product, std::abs(m * curve_slope(curve, foot.t).value + 1.0));
        int orthogonal = 0;
        for (const auto& rec : intersections(m, curve, -10.0, 10.0)) {
            if (rec.orthogonal) {
                ++orthogonal;
                foot_t = std::max(foot_t, std::abs(rec.t + m));
            }
        }
        wrong_count += (orthogonal != 1);
    }
    return SuiteResult{"orthogonality",
                       {at_most("foot incidence", incidence, 1e-9),
                        at_most("|m * slope + 1| at foot", product, 1e-9),
                        exactly("pairs without exactly one orthogonal crossing", wrong_count, 0),
                        at_most("|t_orthogonal + m|", foot_t, 1e-8)}};
}

SuiteResult intersections_suite() {
    const auto recs = intersections(1.0, TrajectoryCurve(0.0), -5.0, 5.0);
    Check count = exactly("record count (m=1, C=0)", static_cast<double>(recs.size()), 2.0);
    if (recs.size() != 2) {
        return SuiteResult{"intersections", {count}};
    }
    const auto& a = recs[0];
    const auto& b = recs[1];
    return SuiteResult{
        "intersections",
        {count, at_most("|t1 + 1|", std::abs(a.t + 1.0), 1e-8),
         exactly("t1 orthogonal", a.orthogonal ? 1.0 : 0.0, 1.0),
         at_most("|t2 - 3|", std::abs(b.t - 3.0), 1e-8),
         at_most("|P2 - (9, 6)|", std::hypot(b.point.x - 9.0, b.point.y - 6.0), 1e-8),
         at_most("|slope product - 1/3|", std::abs(b.slope_product.value - 1.0 / 3.0), 1e-8),
         exactly("t2 orthogonal", b.orthogonal ? 1.0 : 0.0, 0.0)}};
}

SuiteResult conic_suite() {
    SuiteResult out{"conic", {}};
    for (double C : kCurveGrid) {
        const Classification k = classify(TrajectoryCurve(C));
        const std::string tag = "C=" + std::to_string(static_cast<int>(C));
        if (C == 0.0) {
            out.checks.push_back(
                exactly(tag + " is_parabola", k.verdict == ConicVerdict::Parabola ? 1.0 : 0.0, 1.0));
            // y^2 - 4x normalised: (0, 0, 1, -4, 0, 0) / sqrt(17)
            const auto& c = k.fit.coeffs;
            const double cosine = std::abs(c[2] - 4.0 * c[3]) / std::sqrt(17.0);
            out.checks.push_back(at_least(tag + " cosine to y^2 - 4x", cosine, 1.0 - 1e-8));
        } else {
            out.checks.push_back(
                exactly(tag + " is_parabola", k.verdict == ConicVerdict::Parabola ? 1.0 : 0.0, 0.0));
            out.checks.push_back(at_least(tag + " conic residual", k.fit.residual_rms, 1e-3));
        }
    }
    return out;
}

SuiteResult cusps_suite() {
    SuiteResult out{"cusps", {}};
    for (double C : {0.0, 1.0, -1.0}) {
        out.checks.push_back(exactly("cusp count C=" + std::to_string(static_cast<int>(C)),
                                     static_cast<double>(cusp_parameters(TrajectoryCurve(C)).size()),
                                     0.0));
    }
    out.checks.push_back(exactly("cusp count C=-2",
                                 static_cast<double>(cusp_parameters(TrajectoryCurve(-2.0)).size()),
                                 1.0));
    const auto c4 = cusp_parameters(TrajectoryCurve(-4.0));
    out.checks.push_back(exactly("cusp count C=-4", static_cast<double>(c4.size()), 2.0));
    if (c4.size() == 2) {
        out.checks.push_back(at_most("|t_cusp + 0.766421|", std::abs(c4[0] + 0.766421), 1e-6));
        out.checks.push_back(at_most("|t_cusp - 0.766421|", std::abs(c4[1] - 0.766421), 1e-6));
    }
    return out;
}

// Distance from pt to the curve, searching t near the hint.
double distance_to_curve(const TrajectoryCurve& curve, Point pt, double t_hint) {
    auto d2 = [&](double t) {
        const Point c = curve_point(curve, t);
        return (c.x - pt.x) * (c.x - pt.x) + (c.y - pt.y) * (c.y - pt.y);
    };
    double lo = t_hint - 0.05;
    double hi = t_hint + 0.05;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 120 && hi - lo > 1e-15; ++i) {
        const double a = hi - ratio * (hi - lo);
        const double b = lo + ratio * (hi - lo);
        if (d2(a) < d2(b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    return std::sqrt(d2(0.5 * (lo + hi)));
}

SuiteResult tracer_suite() {
    SuiteResult out{"tracer", {}};
    TraceConfig base;
    for (double C : {-1.0, 0.0, 1.0, 3.0}) {
        const TrajectoryCurve curve(C);
        double dev = 0.0;
        double drift = 0.0;
        for (auto dir : {TraceDirection::Forward, TraceDirection::Backward}) {
            TraceConfig cfg = base;
            cfg.start = curve_point(curve, 1.0);
            cfg.initial_slope_hint = 1.0;
            cfg.direction = dir;
            const TraceResult r = trace_orthogonal(cfg);
            drift = std::max(drift, r.potential_drift);
            for (const auto& s : r.samples) {
                dev = std::max(dev, distance_to_curve(curve, s.point, 1.0 / s.p));
            }
        }
        const std::string tag = "C=" + std::to_string(static_cast<int>(C));
        out.checks.push_back(at_most(tag + " closed-form deviation", dev, 1e-5));
        out.checks.push_back(at_most(tag + " potential drift", drift, 10.0 * base.tol));
    }
    return out;
}

SuiteResult classic_suite() {
    SuiteResult out{"classic", {}};
    const TraceConfig cfg;
    const std::pair<ClassicKind, Point> cases[] = {
        {ClassicKind::HyperbolaPair, {1.0, 1.0}},
        {ClassicKind::Monopole, {3.0, 4.0}},
        {ClassicKind::ShiftedMonopole, {0.0, 1.0}},
    };
    for (const auto& [kind, start] : cases) {
        const TraceResult r = trace_classic(kind, start, cfg);
        out.checks.push_back(
            at_most(std::string(to_string(kind)) + " invariant drift", r.potential_drift, 1e-6));
    }
    return out;
}

std::size_t count_of(const std::string& hay, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

SuiteResult figure_suite() {
    SuiteResult out{"figure", {}};
    std::size_t curves = 0;
    for (const char* name : {"fig1a", "fig1b"}) {
        const std::string svg = render_figure(preset(name));
        const std::string tag = name;
        curves += count_of(svg, "<path class=\"curve\"");
        out.checks.push_back(exactly(tag + " dashed curves",
                                     static_cast<double>(count_of(svg, "stroke-dasharray")), 1.0));
        out.checks.push_back(exactly(tag + " dashed curve is C=0",
                                     count_of(svg, "data-C=\"0\" stroke-dasharray") == 1 ? 1.0 : 0.0,
                                     1.0));
        out.checks.push_back(exactly(tag + " line paths",
                                     static_cast<double>(count_of(svg, "<path class=\"line\"")), 3.0));
        out.checks.push_back(
            exactly(tag + " deterministic", svg == render_figure(preset(name)) ? 1.0 : 0.0, 1.0));
    }
    out.checks.push_back(exactly("curve paths across presets", static_cast<double>(curves), 8.0));
    return out;
}

using SuiteFn = SuiteResult (*)();

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"exactness", exactness_suite},
        {"potential", potential_suite},
        {"ode-identity", ode_identity_suite},
        {"orthogonality", orthogonality_suite},
        {"intersections", intersections_suite},
        {"conic", conic_suite},
        {"cusps", cusps_suite},
        {"tracer", tracer_suite},
        {"classic", classic_suite},
        {"figure", figure_suite},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

SuiteResult run_suite(std::string_view name) {
    for (const auto& [n, fn] : registry()) {
        if (n == name) {
            return fn();
        }
    }
    throw Error(ErrorKind::Config, "invalid field 'suite': unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_suites(std::string_view name) {
    if (name != "all") {
        return {run_suite(name)};
    }
    std::vector<SuiteResult> out;
    for (const auto& [n, fn] : registry()) {
        out.push_back(fn());
    }
    return out;
}

}  // namespace orthotraj
