#include "orthotraj/plot.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "orthotraj/core_model.hpp"
#include "orthotraj/error.hpp"

namespace orthotraj {

namespace {

constexpr double kMargin = 40.0;

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
    throw Error(ErrorKind::Config, "invalid plot spec field '" + field + "': " + why);
}

void check_range(const Range& r, const std::string& field) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
        config_error(field, "bounds must be finite");
    }
    if (!(r.lo < r.hi)) {
        config_error(field, "lower bound must be below upper bound");
    }
}

// Fixed two-decimal pixel coordinates keep the output byte-stable.
std::string px(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 2);
    std::string s(buf.data(), end);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

// Shortest round-trip form, for labels and data attributes.
std::string num(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

class Viewport {
public:
    explicit Viewport(const PlotSpec& spec)
        : x_(spec.x_window), y_(spec.y_window),
          w_(spec.width_px - 2.0 * kMargin), h_(spec.height_px - 2.0 * kMargin) {}

    double sx(double x) const { return kMargin + (x - x_.lo) / (x_.hi - x_.lo) * w_; }
    double sy(double y) const { return kMargin + (y_.hi - y) / (y_.hi - y_.lo) * h_; }
    double width() const { return w_; }
    double height() const { return h_; }

private:
    Range x_;
    Range y_;
    double w_;
    double h_;
};

// Segment of y = m x + b inside the window, if any.
std::optional<std::pair<Point, Point>> clip_line(double m, double b, const Range& xw,
                                                 const Range& yw) {
    double lo = xw.lo;
    double hi = xw.hi;
    if (m == 0.0) {
        if (b < yw.lo || b > yw.hi) {
            return std::nullopt;
        }
    } else {
        double xa = (yw.lo - b) / m;
        double xb = (yw.hi - b) / m;
        if (xa > xb) {
            std::swap(xa, xb);
        }
        lo = std::max(lo, xa);
        hi = std::min(hi, xb);
        if (lo > hi) {
            return std::nullopt;
        }
    }
    return std::make_pair(Point{lo, m * lo + b}, Point{hi, m * hi + b});
}

}  // namespace

void PlotSpec::validate() const {
    check_range(x_window, "x_window");
    check_range(y_window, "y_window");
    if (samples_per_curve < 2) {
        config_error("samples_per_curve", "must be at least 2");
    }
    if (width_px <= 2 * static_cast<int>(kMargin)) {
        config_error("width_px", "must exceed " + std::to_string(2 * static_cast<int>(kMargin)));
    }
    if (height_px <= 2 * static_cast<int>(kMargin)) {
        config_error("height_px", "must exceed " + std::to_string(2 * static_cast<int>(kMargin)));
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string field = "curves[" + std::to_string(i) + "]";
        if (!std::isfinite(curves[i].C)) {
            config_error(field + ".C", "must be finite");
        }
        check_range(curves[i].t_range, field + ".t_range");
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!std::isfinite(lines[i])) {
            config_error("lines[" + std::to_string(i) + "]", "must be finite");
        }
    }
}

PlotSpec preset_fig1a() {
    PlotSpec spec;
    for (double C : {0.0, 1.0, 2.0, 3.0}) {
        spec.curves.push_back(CurveSpec{C, {-3.5, 3.5}, C == 0.0});
    }
    spec.lines = {1.0, 2.0, -3.0};
    return spec;
}

PlotSpec preset_fig1b() {
    PlotSpec spec;
    for (double C : {0.0, -1.0, -2.0, -4.0}) {
        spec.curves.push_back(CurveSpec{C, {-3.5, 3.5}, C == 0.0});
    }
    spec.lines = {1.0, 2.0, -3.0};
    return spec;
}

PlotSpec preset(std::string_view name) {
    if (name == "fig1a") {
        return preset_fig1a();
    }
    if (name == "fig1b") {
        return preset_fig1b();
    }
    throw Error(ErrorKind::Config,
                "invalid field 'preset': unknown preset '" + std::string(name) + "'");
}

std::string render_figure(const PlotSpec& spec) {
    spec.validate();
    const Viewport vp(spec);
    const LineFamily family = LineFamily::cubic();
    std::ostringstream svg;

    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width_px
        << "\" height=\"" << spec.height_px << "\" viewBox=\"0 0 " << spec.width_px << ' '
        << spec.height_px << "\">\n"
        << "  <defs>\n"
        << "    <clipPath id=\"plot-area\">\n"
        << "      <rect x=\"" << px(kMargin) << "\" y=\"" << px(kMargin) << "\" width=\""
        << px(vp.width()) << "\" height=\"" << px(vp.height()) << "\"/>\n"
        << "    </clipPath>\n"
        << "  </defs>\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << spec.width_px << "\" height=\""
        << spec.height_px << "\" fill=\"white\"/>\n"
        << "  <rect x=\"" << px(kMargin) << "\" y=\"" << px(kMargin) << "\" width=\""
        << px(vp.width()) << "\" height=\"" << px(vp.height())
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";

    svg << "  <g class=\"axes\" stroke=\"black\" stroke-width=\"0.8\">\n";
    if (spec.y_window.lo <= 0.0 && 0.0 <= spec.y_window.hi) {
        svg << "    <line x1=\"" << px(vp.sx(spec.x_window.lo)) << "\" y1=\"" << px(vp.sy(0.0))
            << "\" x2=\"" << px(vp.sx(spec.x_window.hi)) << "\" y2=\"" << px(vp.sy(0.0))
            << "\"/>\n";
    }
    if (spec.x_window.lo <= 0.0 && 0.0 <= spec.x_window.hi) {
        svg << "    <line x1=\"" << px(vp.sx(0.0)) << "\" y1=\"" << px(vp.sy(spec.y_window.lo))
            << "\" x2=\"" << px(vp.sx(0.0)) << "\" y2=\"" << px(vp.sy(spec.y_window.hi))
            << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g class=\"curves\" clip-path=\"url(#plot-area)\" fill=\"none\" stroke=\"#1f4e9c\" "
           "stroke-width=\"1.4\">\n";
    for (const CurveSpec& cs : spec.curves) {
        const TrajectoryCurve curve(cs.C);
        svg << "    <path class=\"curve\" data-C=\"" << num(cs.C) << "\"";
        if (cs.dashed) {
            svg << " stroke-dasharray=\"6,4\"";
        }
        svg << " d=\"";
        for (int i = 0; i < spec.samples_per_curve; ++i) {
            const double t = cs.t_range.lo +
                             (cs.t_range.hi - cs.t_range.lo) * i / (spec.samples_per_curve - 1);
            const Point p = curve_point(curve, t);
            svg << (i == 0 ? "M" : " L") << px(vp.sx(p.x)) << ',' << px(vp.sy(p.y));
        }
        svg << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g class=\"lines\" fill=\"none\" stroke=\"#b03020\" stroke-width=\"1\">\n";
    for (double m : spec.lines) {
        const Line line = line_at(family, m);
        svg << "    <path class=\"line\" data-m=\"" << num(m) << "\" d=\"";
        if (auto seg = clip_line(line.slope, line.intercept, spec.x_window, spec.y_window)) {
            svg << 'M' << px(vp.sx(seg->first.x)) << ',' << px(vp.sy(seg->first.y)) << " L"
                << px(vp.sx(seg->second.x)) << ',' << px(vp.sy(seg->second.y));
        }
        svg << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    double ly = kMargin + 14.0;
    const double lx = kMargin + 8.0;
    for (const CurveSpec& cs : spec.curves) {
        svg << "    <text x=\"" << px(lx) << "\" y=\"" << px(ly) << "\">C = " << num(cs.C)
            << (cs.dashed ? " (dashed)" : "") << "</text>\n";
        ly += 14.0;
    }
    for (double m : spec.lines) {
        svg << "    <text x=\"" << px(lx) << "\" y=\"" << px(ly) << "\">line m = " << num(m)
            << "</text>\n";
        ly += 14.0;
    }
    svg << "  </g>\n"
        << "</svg>\n";
    return svg.str();
}

}  // namespace orthotraj
