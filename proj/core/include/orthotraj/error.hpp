#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthotraj {

enum class ErrorKind {
    Domain,              // non-finite input or argument outside the declared domain
    DegeneratePoint,     // both velocity components vanish
    DegenerateFoot,      // orthogonal foot falls on a cusp
    UnsupportedFamily,   // closed form only exists for f(m) = -2m - m^3
    Indeterminate,       // all polynomial coefficients vanish
    NoBracket,           // f(lo) and f(hi) share a sign
    SingularFactor,      // integrating factor evaluated at p = 0
    NoBranch,            // no real slope through the start point
    DegenerateInput,     // rank-deficient conic fit
    Config,              // invalid plot spec or run configuration
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace orthotraj
