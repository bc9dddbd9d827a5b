#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "orthotraj/error.hpp"
#include "orthotraj/plot.hpp"

using namespace orthotraj;

namespace {

std::string config_message(const PlotSpec& spec) {
    try {
        render_figure(spec);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

}  // namespace

TEST_CASE("presets render well-formed SVG with the declared paths") {
    for (const char* name : {"fig1a", "fig1b"}) {
        const PlotSpec spec = preset(name);
        const std::string svg = render_figure(spec);
        std::string why;
        CAPTURE(name);
        CHECK_MESSAGE(oracle::xml_well_formed(svg, &why), why);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(oracle::count_occurrences(svg, "<path ") == spec.curves.size() + spec.lines.size());
        CHECK(oracle::count_occurrences(svg, "class=\"curve\"") == 4);
        CHECK(oracle::count_occurrences(svg, "class=\"line\"") == 3);
        CHECK(oracle::count_occurrences(svg, "stroke-dasharray") == 1);
        CHECK(svg.find("data-C=\"0\" stroke-dasharray") != std::string::npos);
        for (const char* m : {"data-m=\"1\"", "data-m=\"2\"", "data-m=\"-3\""}) {
            CHECK(svg.find(m) != std::string::npos);
        }
        CHECK(svg == render_figure(spec));
    }
    CHECK(render_figure(preset_fig1b()).find("data-C=\"-4\"") != std::string::npos);
}

TEST_CASE("preset contents") {
    const PlotSpec a = preset_fig1a();
    REQUIRE(a.curves.size() == 4);
    CHECK(a.curves[0].C == 0.0);
    CHECK(a.curves[0].dashed);
    CHECK(a.lines == std::vector<double>{1.0, 2.0, -3.0});
    const PlotSpec b = preset_fig1b();
    REQUIRE(b.curves.size() == 4);
    CHECK(b.curves[3].C == -4.0);
    CHECK_FALSE(b.curves[3].dashed);
    CHECK_THROWS_AS(preset("fig2"), Error);
}

TEST_CASE("empty spec renders axes only") {
    const std::string svg = render_figure(PlotSpec{});
    CHECK(oracle::xml_well_formed(svg));
    CHECK(oracle::count_occurrences(svg, "<path ") == 0);
    CHECK(svg.find("class=\"axes\"") != std::string::npos);
}

TEST_CASE("a line that misses the window still yields one path") {
    PlotSpec spec;
    spec.lines = {10.0};
    const std::string svg = render_figure(spec);
    CHECK(oracle::xml_well_formed(svg));
    CHECK(oracle::count_occurrences(svg, "class=\"line\"") == 1);
}

TEST_CASE("invalid specs name the offending field") {
    PlotSpec spec;
    spec.x_window = {1.0, 1.0};
    CHECK(config_message(spec).find("x_window") != std::string::npos);

    spec = PlotSpec{};
    spec.samples_per_curve = 1;
    CHECK(config_message(spec).find("samples_per_curve") != std::string::npos);

    spec = PlotSpec{};
    spec.curves = {CurveSpec{}, CurveSpec{1.0, {2.0, -2.0}, false}};
    CHECK(config_message(spec).find("curves[1].t_range") != std::string::npos);

    spec = PlotSpec{};
    spec.width_px = 0;
    CHECK(config_message(spec).find("width_px") != std::string::npos);
}
