#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace orthotraj {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct CurveSpec {
    double C = 0.0;
    Range t_range{-3.5, 3.5};
    bool dashed = false;
};

struct PlotSpec {
    std::vector<CurveSpec> curves;
    std::vector<double> lines;  // slopes m of y = m x - 2m - m^3
    Range x_window{-6.0, 10.0};
    Range y_window{-9.0, 9.0};
    int samples_per_curve = 400;
    int width_px = 640;
    int height_px = 720;

    /// Throws ErrorKind::Config naming the offending field.
    void validate() const;
};

/// Curves C = {0, 1, 2, 3} with C = 0 dashed, lines m = {1, 2, -3}.
PlotSpec preset_fig1a();
/// Curves C = {0, -1, -2, -4}; C = -4 is the innermost, cusped member.
PlotSpec preset_fig1b();
/// Throws ErrorKind::Config for an unknown name.
PlotSpec preset(std::string_view name);

/// SVG 1.1 document with one <path> per curve (sampled uniformly in t) and one
/// <path> per line (clipped to the window), plus axes and a legend. Output is a
/// pure function of the spec.
std::string render_figure(const PlotSpec& spec);

}  // namespace orthotraj
