// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Reference values come from tests/oracles.hpp, not from the library under test.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "orthotraj/core_model.hpp"
#include "orthotraj/error.hpp"
#include "orthotraj/exact_ode.hpp"
#include "orthotraj/geometry_analysis.hpp"
#include "orthotraj/tracer.hpp"

using namespace orthotraj;

namespace {

int failures = 0;

void report(int n, const char* what, bool pass, const std::string& measured) {
    std::printf("%s [%d] %-48s %s\n", pass ? "PASS" : "FAIL", n, what, measured.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, spec, a, b, c);
    return buf;
}

std::vector<double> p_grid() {
    std::vector<double> v;
    for (int i = 0; i < 20; ++i) {
        const double p = 0.1 + 9.9 * i / 19.0;
        v.push_back(p);
        v.push_back(-p);
    }
    return v;
}

double cusp_oracle() {
    return oracle::bisect([](double t) { return 2.0 - 4.0 * std::pow(1.0 + t * t, -1.5); }, 0.5, 1.0);
}

void exactness() {
    double raw = 0.0, scaled = 0.0;
    for (int j = 0; j < 25; ++j) {
        const double y = -10.0 + 20.0 * j / 24.0;
        for (double p : p_grid()) {
            raw = std::max(raw, std::abs(exactness_defect(raw_form(), y, p, 1e-6) - (2 * p * p + 1)));
            scaled = std::max(scaled, std::abs(exactness_defect(scaled_form(), y, p, 1e-6)));
        }
    }
    report(1, "exactness: raw = 2p^2+1, scaled = 0", raw <= 1e-8 && scaled <= 1e-8,
           fmt("raw_err=%.3g scaled=%.3g tol=1e-8", raw, scaled));
}

void potential_consistency() {
    double level = 0.0, param = 0.0;
    for (double C = -4.0; C <= 4.0; C += 0.5) {
        for (double p : p_grid()) {
            const Point a = solve_for_xy(p, C);
            level = std::max(level, std::abs(potential(a.y, p).F - C));
            if (p > 0) {
                double x, y;
                oracle::curve_xy(C, 1.0 / p, x, y);
                param = std::max({param, std::abs(a.x - x), std::abs(a.y - y)});
            }
        }
    }
    report(2, "potential level and parametrization", level <= 1e-9 && param <= 1e-12,
           fmt("level_err=%.3g (1e-9) param_err=%.3g (1e-12)", level, param));
}

void ode_identity() {
    double worst = 0.0;
    for (double C : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
        for (int i = 0; i <= 1200; ++i) {
            const double t = -6.0 + 12.0 * i / 1200.0;
            if (std::abs(t) < 0.1) continue;
            const Point pt = curve_point(TrajectoryCurve(C), t);
            worst = std::max(worst, std::abs(ode_o_residual(pt.x, pt.y, 1.0 / t)));
        }
    }
    report(3, "closed form satisfies the slope cubic", worst <= 1e-9,
           fmt("max_residual=%.3g tol=1e-9", worst));
}

void orthogonality() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> md(-3.0, 3.0), cd(-4.0, 4.0);
    double incidence = 0.0, product = 0.0;
    int pairs = 0, bad_count = 0;
    while (pairs < 1000) {
        const double m = md(rng);
        const double C = cd(rng);
        const TrajectoryCurve curve(C);
        CurveSample foot;
        try {
            foot = orthogonal_foot(LineFamily::cubic(), m, curve);
        } catch (const Error&) {
            continue;
        }
        ++pairs;
        incidence = std::max(incidence, std::abs(foot.point.y - (m * foot.point.x - 2 * m - m * m * m)));
        // Slope of the curve from central differences of the closed form.
        const double h = 1e-6;
        double x0, y0, x1, y1;
        oracle::curve_xy(C, foot.t - h, x0, y0);
        oracle::curve_xy(C, foot.t + h, x1, y1);
        const double dxdt = x1 - x0;
        const double dydt = y1 - y0;
        product = std::max(product, std::abs(m * curve_slope(curve, foot.t).value + 1.0));
        if (std::abs(dxdt) > 1e-3 * std::abs(dydt)) {
            // Finite-difference slope agrees to O(h^2); bounds the analytic slope independently.
            if (std::abs(m * dydt / dxdt + 1.0) > 1e-5) ++bad_count;
        }
        const auto recs = intersections(m, curve, -10.0, 10.0);
        const auto n = std::count_if(recs.begin(), recs.end(),
                                     [](const IntersectionRecord& r) { return r.orthogonal; });
        const bool at_foot = std::any_of(recs.begin(), recs.end(), [&](const IntersectionRecord& r) {
            return r.orthogonal && std::abs(r.t + m) <= 1e-8;
        });
        if (n != 1 || !at_foot) ++bad_count;
    }
    report(4, "orthogonal foot: incidence, product, uniqueness",
           incidence <= 1e-9 && product <= 1e-9 && bad_count == 0,
           fmt("incidence=%.3g product_err=%.3g (1e-9) bad_pairs=%g", incidence, product, bad_count));
}

void extra_crossing() {
    const auto recs = intersections(1.0, TrajectoryCurve(0.0), -10.0, 10.0);
    bool ok = recs.size() == 2;
    double err = 0.0;
    if (ok) {
        err = std::max({std::abs(recs[0].t + 1.0), std::abs(recs[1].t - 3.0), std::abs(recs[1].point.x - 9.0),
                        std::abs(recs[1].point.y - 6.0), std::abs(recs[1].slope_product.value - 1.0 / 3.0)});
        ok = recs[0].orthogonal && !recs[1].orthogonal && !recs[1].slope_product.infinite && err <= 1e-8;
    }
    const auto scan = oracle::sign_scan(
        [](double t) {
            double x, y;
            oracle::curve_xy(0.0, t, x, y);
            return y - (x - 3.0);
        },
        -10.0, 10.0, 1e-4);
    ok = ok && scan.size() == 2;
    report(5, "m=1, C=0: t=-1 orthogonal, t=3 at (9,6), 1/3", ok,
           fmt("records=%g max_err=%.3g tol=1e-8", static_cast<double>(recs.size()), err));
}

void parabola_dichotomy() {
    const Classification zero = classify(TrajectoryCurve(0.0));
    const std::array<double, 6> ref{0, 0, 1, -4, 0, 0};
    double ab = 0, aa = 0, bb = 0;
    for (int i = 0; i < 6; ++i) {
        ab += zero.fit.coeffs[i] * ref[i];
        aa += zero.fit.coeffs[i] * zero.fit.coeffs[i];
        bb += ref[i] * ref[i];
    }
    const double cos_sim = std::abs(ab) / std::sqrt(aa * bb);
    bool ok = is_parabola(TrajectoryCurve(0.0)) && cos_sim >= 1.0 - 1e-8;
    double min_resid = INFINITY;
    for (double C : {-4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0}) {
        const double r = classify(TrajectoryCurve(C)).fit.residual_rms;
        min_resid = std::min(min_resid, r);
        ok = ok && !is_parabola(TrajectoryCurve(C)) && r >= 1e-3;
    }
    report(6, "parabola iff C = 0", ok,
           fmt("1-cos(C=0)=%.3g (1e-8) min_resid(C!=0)=%.3g (>=1e-3)", 1.0 - cos_sim, min_resid));
}

void cusps() {
    bool ok = true;
    for (double C : {0.0, 1.0, -1.0}) ok = ok && cusp_parameters(TrajectoryCurve(C)).empty();
    ok = ok && cusp_parameters(TrajectoryCurve(-2.0)).size() == 1;
    const auto c4 = cusp_parameters(TrajectoryCurve(-4.0));
    double err = INFINITY;
    if (c4.size() == 2) {
        err = std::max(std::abs(c4[0] + 0.766421), std::abs(c4[1] - 0.766421));
        ok = ok && std::abs(c4[1] - cusp_oracle()) <= 1e-12;
    } else {
        ok = false;
    }
    ok = ok && err <= 1e-6;
    report(7, "cusps: 0,0,0 / 1 at C=-2 / +-0.766421 at C=-4", ok, fmt("C=-4 err=%.3g tol=1e-6", err));
}

void tracer_fidelity() {
    double deviation = 0.0, drift_ratio = 0.0;
    for (double C : {-1.0, 0.0, 1.0, 3.0}) {
        for (TraceDirection dir : {TraceDirection::Forward, TraceDirection::Backward}) {
            double x, y;
            oracle::curve_xy(C, 1.0, x, y);
            TraceConfig cfg;
            cfg.start = {x, y};
            cfg.initial_slope_hint = 1.0;
            cfg.max_arc = 10.0;
            cfg.direction = dir;
            const TraceResult r = trace_orthogonal(cfg);
            drift_ratio = std::max(drift_ratio, r.potential_drift / cfg.tol);
            for (const TraceSample& s : r.samples) {
                deviation = std::max(deviation, oracle::distance_to_curve(C, s.point.x, s.point.y, -8, 8, 4000));
            }
        }
    }
    double classic = 0.0;
    const std::pair<ClassicKind, Point> fixtures[] = {
        {ClassicKind::HyperbolaPair, {1.0, 1.0}},
        {ClassicKind::Monopole, {3.0, 4.0}},
        {ClassicKind::ShiftedMonopole, {0.0, 1.0}},
    };
    for (const auto& [kind, start] : fixtures) {
        TraceConfig cfg;
        cfg.max_arc = 20.0;
        const double level = classic_invariant(kind, start);
        for (const TraceSample& s : trace_classic(kind, start, cfg).samples) {
            classic = std::max(classic, std::abs(classic_invariant(kind, s.point) - level));
        }
    }
    report(8, "tracer vs closed form; conserved quantities",
           deviation <= 1e-5 && drift_ratio <= 10.0 && classic <= 1e-6,
           fmt("deviation=%.3g (1e-5) drift/tol=%.3g (10) classic=%.3g (1e-6)", deviation, drift_ratio,
               classic));
}

void figure() {
    auto plot = [](const std::string& name) {
        std::ostringstream out, err;
        const std::vector<std::string> args{"plot", "--preset", name};
        const int code = cli::run(args, out, err);
        return code == 0 ? out.str() : std::string{};
    };
    bool ok = true;
    std::size_t curves = 0;
    for (const char* name : {"fig1a", "fig1b"}) {
        const std::string svg = plot(name);
        ok = ok && !svg.empty() && oracle::xml_well_formed(svg) && svg == plot(name);
        curves += oracle::count_occurrences(svg, "class=\"curve\"");
        ok = ok && oracle::count_occurrences(svg, "stroke-dasharray") == 1;
        ok = ok && svg.find("data-C=\"0\" stroke-dasharray") != std::string::npos;
        ok = ok && oracle::count_occurrences(svg, "class=\"line\"") == 3;
        for (const char* m : {"data-m=\"1\"", "data-m=\"2\"", "data-m=\"-3\""}) {
            ok = ok && svg.find(m) != std::string::npos;
        }
    }
    ok = ok && curves == 8;
    report(9, "figure presets: 8 curves, C=0 dashed, 3 lines", ok,
           fmt("curve_paths=%g", static_cast<double>(curves)));
}

}  // namespace

int main() {
    exactness();
    potential_consistency();
    ode_identity();
    orthogonality();
    extra_crossing();
    parabola_dichotomy();
    cusps();
    tracer_fidelity();
    figure();
    std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
