#pragma once

// Test-only reference computations. Nothing here calls into the library paths
// it is used to check: root scans, finite differences and nearest-point
// searches are done from scratch.

#include <cctype>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Bisection to machine precision; requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Sign changes of f on a uniform grid, each bisected to full precision.
inline std::vector<double> sign_scan(const std::function<double(double)>& f, double lo, double hi,
                                     double resolution) {
    std::vector<double> roots;
    const auto n = static_cast<long long>(std::ceil((hi - lo) / resolution));
    double a = lo;
    double fa = f(a);
    for (long long i = 1; i <= n; ++i) {
        const double b = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            roots.push_back(bisect(f, a, b));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) {
        roots.push_back(a);
    }
    return roots;
}

/// The closed-form curve written out independently of the library.
inline void curve_xy(double C, double t, double& x, double& y) {
    const double s = std::sqrt(1.0 + t * t);
    x = t * t - C / s;
    y = 2.0 * t + C * t / s;
}

/// Distance from (px, py) to curve C: dense scan over [t_lo, t_hi] then golden section.
inline double distance_to_curve(double C, double px, double py, double t_lo, double t_hi,
                                int scan = 2000) {
    auto d2 = [&](double t) {
        double x, y;
        curve_xy(C, t, x, y);
        return (x - px) * (x - px) + (y - py) * (y - py);
    };
    double best_t = t_lo;
    double best = d2(t_lo);
    const double dt = (t_hi - t_lo) / scan;
    for (int i = 1; i <= scan; ++i) {
        const double t = t_lo + dt * i;
        const double v = d2(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double lo = best_t - dt;
    double hi = best_t + dt;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double a = hi - r * (hi - lo);
        const double b = lo + r * (hi - lo);
        if (d2(a) < d2(b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    return std::sqrt(std::min(best, d2(0.5 * (lo + hi))));
}

inline std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

/// Minimal XML well-formedness check: one root element, balanced and properly
/// nested tags, quoted attribute values, no stray '<' or '&' in text.
/// Supports the XML declaration; comments, CDATA and DOCTYPE are rejected.
inline bool xml_well_formed(std::string_view doc, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    int roots = 0;
    auto is_name = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' ||
               c == '.';
    };
    auto skip_ws = [&] {
        while (i < doc.size() && std::isspace(static_cast<unsigned char>(doc[i]))) ++i;
    };
    auto check_text = [&](std::string_view text) {
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '&') {
                const auto semi = text.find(';', k);
                if (semi == std::string_view::npos) return false;
                const auto ent = text.substr(k + 1, semi - k - 1);
                if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos") {
                    return false;
                }
            }
        }
        return true;
    };

    if (doc.substr(0, 5) == "<?xml") {
        const auto end = doc.find("?>");
        if (end == std::string_view::npos) return fail("unterminated declaration");
        i = end + 2;
    }
    while (i < doc.size()) {
        const auto lt = doc.find('<', i);
        const auto text = doc.substr(i, (lt == std::string_view::npos ? doc.size() : lt) - i);
        if (!check_text(text)) return fail("bad entity in text");
        if (stack.empty()) {
            for (char c : text) {
                if (!std::isspace(static_cast<unsigned char>(c))) return fail("text outside root");
            }
        }
        if (lt == std::string_view::npos) break;
        i = lt + 1;
        if (i < doc.size() && (doc[i] == '!' || doc[i] == '?')) return fail("unsupported markup");
        const bool closing = i < doc.size() && doc[i] == '/';
        if (closing) ++i;
        const std::size_t name_start = i;
        while (i < doc.size() && is_name(doc[i])) ++i;
        const std::string name(doc.substr(name_start, i - name_start));
        if (name.empty()) return fail("empty tag name");
        if (closing) {
            skip_ws();
            if (i >= doc.size() || doc[i] != '>') return fail("bad closing tag " + name);
            ++i;
            if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
            stack.pop_back();
            continue;
        }
        bool self_closing = false;
        while (true) {
            skip_ws();
            if (i >= doc.size()) return fail("unterminated tag " + name);
            if (doc[i] == '>') {
                ++i;
                break;
            }
            if (doc[i] == '/') {
                if (i + 1 >= doc.size() || doc[i + 1] != '>') return fail("bad self-close");
                i += 2;
                self_closing = true;
                break;
            }
            const std::size_t an = i;
            while (i < doc.size() && is_name(doc[i])) ++i;
            if (i == an) return fail("bad attribute in " + name);
            skip_ws();
            if (i >= doc.size() || doc[i] != '=') return fail("attribute without value");
            ++i;
            skip_ws();
            if (i >= doc.size() || (doc[i] != '"' && doc[i] != '\'')) return fail("unquoted value");
            const char q = doc[i++];
            const auto close = doc.find(q, i);
            if (close == std::string_view::npos) return fail("unterminated attribute");
            const auto value = doc.substr(i, close - i);
            if (value.find('<') != std::string_view::npos || !check_text(value)) {
                return fail("bad attribute value");
            }
            i = close + 1;
        }
        if (stack.empty()) ++roots;
        if (roots > 1) return fail("more than one root element");
        if (!self_closing) stack.push_back(name);
    }
    if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
    if (roots != 1) return fail("no root element");
    return true;
}

}  // namespace oracle
