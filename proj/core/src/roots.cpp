#include "orthotraj/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "orthotraj/error.hpp"

namespace orthotraj {

double CubicCoeffs::max_abs() const noexcept {
    return std::max({std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
}

int RootSet::total_multiplicity() const noexcept {
    int n = 0;
    for (int m : multiplicities) {
        n += m;
    }
    return n;
}

namespace {

constexpr double kDiscriminantTol = 1e-10;
constexpr double kMergeTol = 1e-8;
constexpr int kMaxPolish = 3;

using Candidate = std::pair<double, int>;  // root, multiplicity

void solve_linear(double a1, double a0, std::vector<Candidate>& out) {
    out.emplace_back(-a0 / a1, 1);
}

void solve_quadratic(double a2, double a1, double a0, std::vector<Candidate>& out) {
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    const double disc_scale = std::max(a1 * a1, std::abs(4.0 * a2 * a0));
    if (std::abs(disc) <= kDiscriminantTol * disc_scale) {
        out.emplace_back(-a1 / (2.0 * a2), 2);
        return;
    }
    if (disc < 0.0) {
        return;
    }
    // Sign-matched form avoids cancellation in the smaller root.
    const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
    out.emplace_back(q / a2, 1);
    out.emplace_back(a0 / q, 1);
}

void solve_cubic(double a3, double a2, double a1, double a0, std::vector<Candidate>& out) {
    const double b = a2 / a3;
    const double c = a1 / a3;
    const double d = a0 / a3;
    const double shift = b / 3.0;

    // Depressed cubic u^3 + P u + Q with p = u - b/3.
    const double P = c - b * b / 3.0;
    const double Q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double four_p3 = 4.0 * P * P * P;
    const double q2_27 = 27.0 * Q * Q;
    const double disc = -(four_p3 + q2_27);
    const double disc_scale = std::max(std::abs(four_p3), q2_27);

    if (disc_scale == 0.0) {
        out.emplace_back(-shift, 3);
        return;
    }
    if (std::abs(disc) <= kDiscriminantTol * disc_scale) {
        // One simple and one double root.
        out.emplace_back(3.0 * Q / P - shift, 1);
        out.emplace_back(-1.5 * Q / P - shift, 2);
        return;
    }
    if (disc > 0.0) {
        const double r = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(1.5 * Q / P * std::sqrt(-3.0 / P), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            out.emplace_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift, 1);
        }
        return;
    }
    const double s = std::sqrt(-disc / 108.0);  // sqrt(Q^2/4 + P^3/27)
    const double A = -std::copysign(std::cbrt(std::abs(Q) / 2.0 + s), Q);
    const double B = (A == 0.0) ? 0.0 : -P / (3.0 * A);
    out.emplace_back(A + B - shift, 1);
}

double polish(const CubicCoeffs& c, double r) {
    double fr = std::abs(c(r));
    for (int i = 0; i < kMaxPolish && fr > 0.0; ++i) {
        const double df = c.derivative(r);
        if (df == 0.0) {
            break;
        }
        const double next = r - c(r) / df;
        const double fn = std::abs(c(next));
        if (!(fn < fr)) {
            break;
        }
        r = next;
        fr = fn;
    }
    return r;
}

}  // namespace

RootSet real_roots_cubic(const CubicCoeffs& c) {
    for (double v : {c.a3, c.a2, c.a1, c.a0}) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::Domain, "cubic coefficients must be finite");
        }
    }
    const double scale = c.max_abs();
    if (scale == 0.0) {
        throw Error(ErrorKind::Indeterminate, "all polynomial coefficients vanish");
    }

    const std::array<double, 4> a{c.a0, c.a1, c.a2, c.a3};
    int degree = 3;
    while (degree > 0 && std::abs(a[degree]) <= kDegreeReductionTol * scale) {
        --degree;
    }

    std::vector<Candidate> found;
    switch (degree) {
        case 3: solve_cubic(a[3], a[2], a[1], a[0], found); break;
        case 2: solve_quadratic(a[2], a[1], a[0], found); break;
        case 1: solve_linear(a[1], a[0], found); break;
        default: break;  // nonzero constant
    }

    for (auto& [root, mult] : found) {
        if (mult == 1) {
            root = polish(c, root);
        }
    }
    std::sort(found.begin(), found.end());

    RootSet out;
    for (const auto& [root, mult] : found) {
        if (!out.empty()) {
            double& last = out.roots.back();
            if (std::abs(root - last) <= kMergeTol * std::max(1.0, std::abs(last))) {
                int& lm = out.multiplicities.back();
                last = (last * lm + root * mult) / (lm + mult);
                lm += mult;
                continue;
            }
        }
        out.roots.push_back(root);
        out.multiplicities.push_back(mult);
    }
    return out;
}

RootSet slopes_at(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::Domain, "slopes_at needs a finite point");
    }
    return real_roots_cubic(CubicCoeffs{y, x - 2.0, 0.0, -1.0});
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi) || !(tol > 0.0)) {
        throw Error(ErrorKind::Domain, "bracketed_root needs lo < hi and tol > 0");
    }
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw Error(ErrorKind::NoBracket, "f(lo) and f(hi) have the same sign");
    }
    std::uintmax_t max_iter = 200;
    auto width_ok = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto [a, b] =
        boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, width_ok, max_iter);
    if (f(a) == 0.0) {
        return a;
    }
    if (f(b) == 0.0) {
        return b;
    }
    return a + 0.5 * (b - a);
}

}  // namespace orthotraj
