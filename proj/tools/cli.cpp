#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "orthotraj/core_model.hpp"
#include "orthotraj/error.hpp"
#include "orthotraj/geometry_analysis.hpp"
#include "orthotraj/tracer.hpp"
#include "orthotraj/verify.hpp"

namespace orthotraj::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        config_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const std::string& where) {
    if (!doc.is_object()) {
        config_error(where + " must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            config_error("unknown key '" + key + "' in " + where);
        }
    }
}

double finite_number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        config_error("field '" + field + "' must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        config_error("field '" + field + "' must be finite");
    }
    return d;
}

Range range_from(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) {
        config_error("field '" + field + "' must be a two-element array");
    }
    return Range{finite_number(v[0], field + "[0]"), finite_number(v[1], field + "[1]")};
}

int positive_int(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        config_error("field '" + field + "' must be a positive integer");
    }
    return v.get<int>();
}

// Numeric options registered on a subcommand. A value set by a flag wins over
// the same key in --config.
class NumericOptions {
public:
    void add(CLI::App* app, const std::string& flags, const std::string& key, std::string help,
             std::optional<double> fallback = std::nullopt) {
        auto& slot = values_[key];
        slot.value = fallback;
        slot.option = app->add_option(flags, slot.raw, std::move(help));
    }

    std::set<std::string> keys() const {
        std::set<std::string> k;
        for (const auto& [key, slot] : values_) {
            k.insert(key);
        }
        return k;
    }

    void resolve(const json* config) {
        for (auto& [key, slot] : values_) {
            if (slot.option->count() > 0) {
                if (!std::isfinite(slot.raw)) {
                    config_error("flag for '" + key + "' must be finite");
                }
                slot.value = slot.raw;
            } else if (config && config->contains(key)) {
                slot.value = finite_number(config->at(key), key);
            }
        }
    }

    std::optional<double> get(const std::string& key) const { return values_.at(key).value; }

    double require(const std::string& key) const {
        auto v = get(key);
        if (!v) {
            config_error("missing required value '" + key + "'");
        }
        return *v;
    }

    json echo() const {
        json j = json::object();
        for (const auto& [key, slot] : values_) {
            if (slot.value) {
                j[key] = *slot.value;
            }
        }
        return j;
    }

private:
    struct Slot {
        double raw = 0.0;
        std::optional<double> value;
        CLI::Option* option = nullptr;
    };
    std::map<std::string, Slot> values_;
};

json point_json(const Point& p) { return json::array({p.x, p.y}); }

json slope_json(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return v > 0 ? "inf" : "-inf";
}

struct Report {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    bool pass = true;

    json to_json() const {
        return json{{"command", command}, {"inputs", inputs}, {"results", results}, {"pass", pass}};
    }
};

void write_json(const std::string& path, const json& doc) {
    std::ofstream f(path);
    if (!f) {
        config_error("cannot write '" + path + "'");
    }
    f << std::setw(2) << doc << '\n';
}

Report do_verify(const std::string& suite, std::ostream& out) {
    Report rep{"verify"};
    rep.inputs["suite"] = suite;
    json suites = json::array();
    for (const SuiteResult& s : run_suites(suite)) {
        json checks = json::array();
        for (const Check& c : s.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(14) << s.name << ' '
                << std::setw(46) << c.name << " measured=" << std::setprecision(6) << c.measured
                << " threshold=" << c.threshold << '\n';
            checks.push_back(json{{"name", c.name},
                                  {"measured", c.measured},
                                  {"threshold", c.threshold},
                                  {"pass", c.pass}});
        }
        suites.push_back(json{{"name", s.name}, {"pass", s.pass()}, {"checks", checks}});
        rep.pass = rep.pass && s.pass();
    }
    rep.results["suites"] = suites;
    out << (rep.pass ? "all suites passed" : "verification FAILED") << '\n';
    return rep;
}

Report do_trace(const NumericOptions& opts, bool backward, std::ostream& out) {
    Report rep{"trace"};
    rep.inputs = opts.echo();
    rep.inputs["direction"] = backward ? "backward" : "forward";
    TraceConfig cfg;
    cfg.start = Point{opts.require("x0"), opts.require("y0")};
    cfg.initial_slope_hint = opts.get("p0");
    if (auto v = opts.get("tol")) cfg.tol = *v;
    if (auto v = opts.get("step")) cfg.step = *v;
    if (auto v = opts.get("max_arc")) cfg.max_arc = *v;
    cfg.direction = backward ? TraceDirection::Backward : TraceDirection::Forward;

    const TraceResult r = trace_orthogonal(cfg);
    json samples = json::array();
    for (const auto& s : r.samples) {
        samples.push_back(json{{"x", s.point.x}, {"y", s.point.y}, {"p", slope_json(s.p)}, {"arc", s.arc}});
    }
    rep.results = json{{"terminated_by", std::string(to_string(r.terminated_by))},
                       {"level", r.level},
                       {"potential_drift", r.potential_drift},
                       {"sample_count", r.samples.size()},
                       {"samples", samples}};
    rep.pass = r.potential_drift <= 10.0 * cfg.tol;
    const auto& last = r.samples.back();
    out << "trace from (" << cfg.start.x << ", " << cfg.start.y << "): " << r.samples.size()
        << " samples, arc " << last.arc << ", ended by " << to_string(r.terminated_by) << '\n'
        << "  level C = " << std::setprecision(12) << r.level << ", potential drift "
        << std::setprecision(3) << r.potential_drift << '\n'
        << "  end point (" << std::setprecision(10) << last.point.x << ", " << last.point.y << ")\n";
    return rep;
}

Report do_intersect(const NumericOptions& opts, std::ostream& out) {
    Report rep{"intersect"};
    rep.inputs = opts.echo();
    const double m = opts.require("m");
    const TrajectoryCurve curve(opts.require("C"));
    const double t_min = opts.get("t_min").value_or(-10.0);
    const double t_max = opts.get("t_max").value_or(10.0);
    const auto recs = intersections(m, curve, t_min, t_max);
    json list = json::array();
    int orthogonal = 0;
    out << recs.size() << " intersection(s) of line m=" << m << " with curve C=" << curve.C << '\n';
    for (const auto& r : recs) {
        orthogonal += r.orthogonal;
        list.push_back(json{{"t", r.t},
                            {"point", point_json(r.point)},
                            {"slope_product", r.slope_product.infinite ? json("inf")
                                                                       : json(r.slope_product.value)},
                            {"orthogonal", r.orthogonal}});
        out << "  t=" << std::setprecision(12) << r.t << "  point=(" << r.point.x << ", "
            << r.point.y << ")  slope product=";
        if (r.slope_product.infinite) {
            out << "inf (vertical tangent)";
        } else {
            out << r.slope_product.value;
        }
        out << (r.orthogonal ? "  orthogonal" : "  non-orthogonal") << '\n';
    }
    rep.results = json{{"intersections", list}, {"orthogonal_count", orthogonal}};
    return rep;
}

Report do_classify(const NumericOptions& opts, std::ostream& out) {
    Report rep{"classify"};
    rep.inputs = opts.echo();
    const TrajectoryCurve curve(opts.require("C"));
    const Classification k = classify(curve);
    rep.results = json{{"verdict", std::string(to_string(k.verdict))},
                       {"is_parabola", k.verdict == ConicVerdict::Parabola},
                       {"residual_rms", k.fit.residual_rms},
                       {"discriminant", k.discriminant},
                       {"coeffs", k.fit.coeffs},
                       {"cusps", k.cusps}};
    out << "curve C=" << curve.C << ": " << to_string(k.verdict) << '\n'
        << "  conic residual (rms) " << std::setprecision(6) << k.fit.residual_rms
        << ", discriminant " << k.discriminant << '\n'
        << "  cusps: " << k.cusps.size();
    for (double t : k.cusps) {
        out << "  t=" << std::setprecision(9) << t;
    }
    out << '\n';
    return rep;
}

}  // namespace

PlotSpec plot_spec_from_json(const json& doc) {
    reject_unknown_keys(doc,
                        {"curves", "lines", "x_window", "y_window", "samples_per_curve",
                         "width_px", "height_px"},
                        "plot spec");
    PlotSpec spec;
    if (doc.contains("curves")) {
        const json& arr = doc.at("curves");
        if (!arr.is_array()) {
            config_error("field 'curves' must be an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string field = "curves[" + std::to_string(i) + "]";
            reject_unknown_keys(arr[i], {"C", "t_range", "dashed"}, field);
            CurveSpec cs;
            if (!arr[i].contains("C")) {
                config_error("field '" + field + ".C' is required");
            }
            cs.C = finite_number(arr[i].at("C"), field + ".C");
            if (arr[i].contains("t_range")) {
                cs.t_range = range_from(arr[i].at("t_range"), field + ".t_range");
            }
            if (arr[i].contains("dashed")) {
                if (!arr[i].at("dashed").is_boolean()) {
                    config_error("field '" + field + ".dashed' must be a boolean");
                }
                cs.dashed = arr[i].at("dashed").get<bool>();
            }
            spec.curves.push_back(cs);
        }
    }
    if (doc.contains("lines")) {
        const json& arr = doc.at("lines");
        if (!arr.is_array()) {
            config_error("field 'lines' must be an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            spec.lines.push_back(finite_number(arr[i], "lines[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("x_window")) spec.x_window = range_from(doc.at("x_window"), "x_window");
    if (doc.contains("y_window")) spec.y_window = range_from(doc.at("y_window"), "y_window");
    if (doc.contains("samples_per_curve")) {
        spec.samples_per_curve = positive_int(doc.at("samples_per_curve"), "samples_per_curve");
    }
    if (doc.contains("width_px")) spec.width_px = positive_int(doc.at("width_px"), "width_px");
    if (doc.contains("height_px")) spec.height_px = positive_int(doc.at("height_px"), "height_px");
    spec.validate();
    return spec;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonal trajectories of the lines y = m x - 2m - m^3", "ortho-traj"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string config_path;
    std::string json_out;
    app.add_option("--config", config_path, "JSON file with subcommand parameters");
    app.add_option("--json-out", json_out, "write a JSON report to this path");

    auto* verify = app.add_subcommand("verify", "run the numerical verification suites");
    std::string suite = "all";
    auto* suite_opt = verify->add_option("--suite", suite, "suite name or 'all'");

    auto* trace = app.add_subcommand("trace", "integrate an orthogonal trajectory from a point");
    NumericOptions trace_opts;
    trace_opts.add(trace, "--x0", "x0", "start abscissa");
    trace_opts.add(trace, "--y0", "y0", "start ordinate");
    trace_opts.add(trace, "--p0", "p0", "initial slope hint");
    trace_opts.add(trace, "--tol", "tol", "local error tolerance");
    trace_opts.add(trace, "--step", "step", "initial arc-length step");
    trace_opts.add(trace, "--max-arc", "max_arc", "arc-length limit");
    bool backward = false;
    auto* backward_flag = trace->add_flag("--backward", backward, "leave the start with dy/ds < 0");

    auto* intersect = app.add_subcommand("intersect", "crossings of one line with one curve");
    NumericOptions intersect_opts;
    intersect_opts.add(intersect, "-m", "m", "line slope");
    intersect_opts.add(intersect, "-C", "C", "curve constant");
    intersect_opts.add(intersect, "--t-min", "t_min", "parameter window start");
    intersect_opts.add(intersect, "--t-max", "t_max", "parameter window end");

    auto* classify_cmd = app.add_subcommand("classify", "conic test and cusp count for one curve");
    NumericOptions classify_opts;
    classify_opts.add(classify_cmd, "-C", "C", "curve constant");

    auto* plot = app.add_subcommand("plot", "render curves and lines as SVG");
    std::string preset_name;
    std::string spec_path;
    std::string svg_path;
    auto* preset_opt = plot->add_option("--preset", preset_name, "fig1a or fig1b");
    auto* spec_opt = plot->add_option("--spec", spec_path, "plot spec JSON file");
    preset_opt->excludes(spec_opt);
    auto* output_opt = plot->add_option("-o,--output", svg_path, "output SVG path (default stdout)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "ortho-traj: " << e.what() << '\n';
        return kUsageError;
    }

    std::optional<Report> report;
    try {
        std::optional<json> config;
        if (!config_path.empty()) {
            config = load_json_file(config_path);
        }
        const json* cfg = config ? &*config : nullptr;

        if (verify->parsed()) {
            if (cfg) {
                reject_unknown_keys(*cfg, {"suite"}, "verify config");
                if (suite_opt->count() == 0 && cfg->contains("suite")) {
                    if (!cfg->at("suite").is_string()) {
                        config_error("field 'suite' must be a string");
                    }
                    suite = cfg->at("suite").get<std::string>();
                }
            }
            report = do_verify(suite, out);
        } else if (trace->parsed()) {
            auto keys = trace_opts.keys();
            keys.insert("direction");
            if (cfg) {
                reject_unknown_keys(*cfg, keys, "trace config");
                if (backward_flag->count() == 0 && cfg->contains("direction")) {
                    const json& d = cfg->at("direction");
                    if (d != "forward" && d != "backward") {
                        config_error("field 'direction' must be \"forward\" or \"backward\"");
                    }
                    backward = (d == "backward");
                }
            }
            trace_opts.resolve(cfg);
            report = do_trace(trace_opts, backward, out);
        } else if (intersect->parsed()) {
            if (cfg) reject_unknown_keys(*cfg, intersect_opts.keys(), "intersect config");
            intersect_opts.resolve(cfg);
            report = do_intersect(intersect_opts, out);
        } else if (classify_cmd->parsed()) {
            if (cfg) reject_unknown_keys(*cfg, classify_opts.keys(), "classify config");
            classify_opts.resolve(cfg);
            report = do_classify(classify_opts, out);
        } else if (plot->parsed()) {
            if (cfg) {
                reject_unknown_keys(*cfg, {"preset", "spec", "output"}, "plot config");
                auto str = [&](const char* key, std::string& dst, CLI::Option* opt) {
                    if (opt->count() == 0 && cfg->contains(key)) {
                        if (!cfg->at(key).is_string()) {
                            config_error(std::string("field '") + key + "' must be a string");
                        }
                        dst = cfg->at(key).get<std::string>();
                    }
                };
                str("preset", preset_name, preset_opt);
                str("spec", spec_path, spec_opt);
                str("output", svg_path, output_opt);
            }
            if (preset_name.empty() == spec_path.empty()) {
                config_error("plot needs exactly one of --preset or --spec");
            }
            const PlotSpec spec =
                preset_name.empty() ? plot_spec_from_json(load_json_file(spec_path)) : preset(preset_name);
            const std::string svg = render_figure(spec);
            if (svg_path.empty()) {
                out << svg;
            } else {
                std::ofstream f(svg_path, std::ios::binary);
                if (!f) {
                    config_error("cannot write '" + svg_path + "'");
                }
                f << svg;
                out << "wrote " << svg_path << " (" << spec.curves.size() << " curves, "
                    << spec.lines.size() << " lines)\n";
            }
            report = Report{"plot"};
            report->inputs = json{{"preset", preset_name}, {"spec", spec_path}, {"output", svg_path}};
            report->results = json{{"curves", spec.curves.size()}, {"lines", spec.lines.size()},
                                   {"bytes", svg.size()}};
        }

        if (report && !json_out.empty()) {
            write_json(json_out, report->to_json());
        }
    } catch (const Error& e) {
        err << "ortho-traj: " << to_string(e.kind()) << " error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Config ? kUsageError : kVerificationFailure;
    }
    return report && report->pass ? kSuccess : kVerificationFailure;
}

}  // namespace orthotraj::cli
