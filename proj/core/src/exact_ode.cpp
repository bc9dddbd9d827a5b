#include "orthotraj/exact_ode.hpp"

#include <cmath>

#include "orthotraj/error.hpp"

namespace orthotraj {

namespace {

void require_nonzero_p(double p, const char* what) {
    if (!std::isfinite(p)) {
        throw Error(ErrorKind::Domain, std::string(what) + ": p must be finite");
    }
    if (p == 0.0) {
        throw Error(ErrorKind::Domain, std::string(what) + ": p = 0 is outside the domain");
    }
}

}  // namespace

double DifferentialForm::m(double y, double p) const {
    require_nonzero_p(p, "M");
    return static_cast<double>(M(y, p));
}

double DifferentialForm::n(double y, double p) const {
    require_nonzero_p(p, "N");
    return static_cast<double>(N(y, p));
}

DifferentialForm raw_form() {
    return DifferentialForm{
        [](long double, long double p) { return p * p * p + p; },
        [](long double y, long double p) { return y * p * p + 2.0L / p; },
        "(p^3 + p) dy + (y p^2 + 2/p) dp",
    };
}

DifferentialForm scaled_form() {
    return DifferentialForm{
        [](long double, long double p) { return std::sqrt(1.0L + p * p); },
        [](long double y, long double p) {
            return (p * y + 2.0L / (p * p)) / std::sqrt(1.0L + p * p);
        },
        "sqrt(1 + p^2) dy + (p y + 2/p^2) / sqrt(1 + p^2) dp",
    };
}

double exactness_defect(const DifferentialForm& form, double y, double p, double h) {
    require_nonzero_p(p, "exactness_defect");
    if (!(h > 0.0) || !std::isfinite(y)) {
        throw Error(ErrorKind::Domain, "exactness_defect needs finite y and h > 0");
    }
    const long double yl = y;
    const long double pl = p;
    const long double hl = h;
    const long double lo = pl - hl;
    const long double hi = pl + hl;
    if (lo * hi <= 0.0L) {
        throw Error(ErrorKind::Domain, "difference stencil crosses p = 0");
    }
    const long double dm_dp = (form.M(yl, hi) - form.M(yl, lo)) / (hi - lo);
    const long double dn_dy = (form.N(yl + hl, pl) - form.N(yl - hl, pl)) / (2.0L * hl);
    return static_cast<double>(dm_dp - dn_dy);
}

double integrating_factor(double p) {
    if (p == 0.0) {
        throw Error(ErrorKind::SingularFactor, "integrating factor is singular at p = 0");
    }
    require_nonzero_p(p, "integrating_factor");
    return 1.0 / (p * std::sqrt(1.0 + p * p));
}

PotentialValue potential(double y, double p) {
    if (p == 0.0) {
        throw Error(ErrorKind::SingularFactor, "potential is singular at p = 0");
    }
    require_nonzero_p(p, "potential");
    return PotentialValue{(y - 2.0 / p) * std::sqrt(1.0 + p * p)};
}

Point solve_for_xy(double p, double C) {
    if (p == 0.0) {
        throw Error(ErrorKind::SingularFactor, "solve_for_xy is singular at p = 0");
    }
    require_nonzero_p(p, "solve_for_xy");
    const double s = std::sqrt(1.0 + p * p);
    return Point{1.0 / (p * p) - C * p / s, 2.0 / p + C / s};
}

}  // namespace orthotraj
