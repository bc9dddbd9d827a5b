#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace orthotraj {

/// One measured quantity compared against its threshold.
struct Check {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;

    bool pass() const noexcept;
};

/// exactness, potential, ode-identity, orthogonality, intersections, conic,
/// cusps, tracer, classic, figure
const std::vector<std::string>& suite_names();

/// Throws ErrorKind::Config for an unknown suite.
SuiteResult run_suite(std::string_view name);

/// "all" runs every suite in suite_names() order.
std::vector<SuiteResult> run_suites(std::string_view name);

}  // namespace orthotraj
