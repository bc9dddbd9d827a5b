#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "orthotraj/plot.hpp"

namespace orthotraj::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
};

/// Entry point behind the ortho-traj binary. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Plot spec document:
///   {"curves": [{"C": 0, "t_range": [-3.5, 3.5], "dashed": true}, ...],
///    "lines": [1, 2, -3], "x_window": [-6, 10], "y_window": [-9, 9],
///    "samples_per_curve": 400, "width_px": 640, "height_px": 720}
/// Missing keys take the defaults; unknown keys throw ErrorKind::Config.
PlotSpec plot_spec_from_json(const nlohmann::json& doc);

}  // namespace orthotraj::cli
