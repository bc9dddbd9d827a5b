#pragma once

#include <functional>
#include <string>

#include "orthotraj/core_model.hpp"

namespace orthotraj {

/// M(y, p) dy + N(y, p) dp = 0 on the domain p != 0.
///
/// Components are evaluated in extended precision so that central-difference
/// checks at h = 1e-6 stay well below 1e-8 even where N ~ 2/p^2 is large.
struct DifferentialForm {
    using Component = std::function<long double(long double y, long double p)>;

    Component M;
    Component N;
    std::string description;

    double m(double y, double p) const;
    double n(double y, double p) const;
};

struct PotentialValue {
    double F = 0.0;
};

/// (p^3 + p) dy + (y p^2 + 2/p) dp = 0, obtained by eliminating x from the
/// orthogonal-slope cubic. Not exact.
DifferentialForm raw_form();

/// raw_form() scaled by integrating_factor(p):
///   sqrt(1 + p^2) dy + (p y + 2/p^2) / sqrt(1 + p^2) dp = 0.
DifferentialForm scaled_form();

/// dM/dp - dN/dy by central differences with step h. Zero iff the form is exact.
double exactness_defect(const DifferentialForm& form, double y, double p, double h);

/// 1 / (p sqrt(1 + p^2)). Throws SingularFactor at p = 0.
double integrating_factor(double p);

/// First integral of the scaled form: F = (y - 2/p) sqrt(1 + p^2).
PotentialValue potential(double y, double p);

/// (x, y) on the level set F = C at slope p:
///   y = 2/p + C / sqrt(1 + p^2),  x = 1/p^2 - C p / sqrt(1 + p^2).
Point solve_for_xy(double p, double C);

}  // namespace orthotraj
