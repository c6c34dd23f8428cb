#include "cutcell/specfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cutcell {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        parse_fail("interface spec: missing field '" + std::string(key) + "' in " + where);
    return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number())
        parse_fail("interface spec: field '" + std::string(key) + "' in " + where +
                   " must be a number");
    return v.get<double>();
}

ImplicitRegion parse_implicit(const json& j) {
    const json& cs = require(j, "constraints", "the implicit spec");
    if (!cs.is_array() || cs.empty())
        parse_fail("interface spec: 'constraints' must be a nonempty array");
    std::vector<ImplicitConstraint> constraints;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const json& c = cs[k];
        const std::string where = "constraints[" + std::to_string(k) + "]";
        const json& kind = require(c, "kind", where);
        if (kind == "circle") {
            constraints.emplace_back(CircleConstraint{number(c, "cx", where),
                                                      number(c, "cy", where),
                                                      number(c, "r", where),
                                                      number(c, "sign", where)});
        } else if (kind == "halfplane") {
            constraints.emplace_back(HalfPlaneConstraint{number(c, "a", where),
                                                         number(c, "b", where),
                                                         number(c, "c", where),
                                                         number(c, "sign", where)});
        } else if (kind == "poly") {
            PolyConstraint p;
            p.degree = static_cast<int>(number(c, "degree", where));
            const json& co = require(c, "coeffs", where);
            if (!co.is_array()) parse_fail("interface spec: 'coeffs' in " + where +
                                           " must be an array");
            for (const auto& v : co) p.coeffs.push_back(v.get<double>());
            constraints.emplace_back(std::move(p));
        } else {
            parse_fail("interface spec: unknown constraint kind '" +
                       kind.get<std::string>() + "' in " + where);
        }
    }
    return ImplicitRegion(std::move(constraints));
}

ParametricRegion parse_parametric(const json& j) {
    const json& segs = require(j, "segments", "the parametric spec");
    if (!segs.is_array() || segs.empty())
        parse_fail("interface spec: 'segments' must be a nonempty array");
    std::vector<NurbsCurve> curves;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const json& s = segs[k];
        const std::string where = "segments[" + std::to_string(k) + "]";
        const int degree = static_cast<int>(number(s, "degree", where));
        const json& kn = require(s, "knots", where);
        const json& cp = require(s, "control_points", where);
        const json& wt = require(s, "weights", where);
        if (!kn.is_array() || !cp.is_array() || !wt.is_array())
            parse_fail("interface spec: knots/control_points/weights in " + where +
                       " must be arrays");
        std::vector<double> knots, weights;
        std::vector<Point2> cps;
        for (const auto& v : kn) knots.push_back(v.get<double>());
        for (const auto& v : wt) weights.push_back(v.get<double>());
        for (const auto& v : cp) {
            if (!v.is_array() || v.size() != 2)
                parse_fail("interface spec: each control point in " + where +
                           " must be [x, y]");
            cps.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        try {
            curves.emplace_back(degree, std::move(knots), std::move(cps), std::move(weights));
        } catch (const Error& e) {
            parse_fail("interface spec: invalid curve in " + where + ": " + e.what());
        }
    }
    try {
        return ParametricRegion(std::move(curves));
    } catch (const Error& e) {
        parse_fail(std::string("interface spec: invalid loop: ") + e.what());
    }
}

} // namespace

InterfaceSpec parse_interface_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Recover line/column from the byte offset for the diagnostic.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        parse_fail("interface spec: JSON syntax error at line " + std::to_string(line) +
                   ", column " + std::to_string(col) + ": " + e.what());
    }
    const json& type = require(j, "type", "the top-level object");
    if (type == "implicit") return InterfaceSpec{parse_implicit(j)};
    if (type == "parametric") return InterfaceSpec{parse_parametric(j)};
    parse_fail("interface spec: 'type' must be \"implicit\" or \"parametric\"");
}

InterfaceSpec load_interface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open interface spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_interface_spec(ss.str());
}

// ---------------------------------------------------------------------------
// Built-in cases

namespace {

ParametricRegion circle_loop(Point2 c, double r) {
    std::vector<NurbsCurve> loop;
    loop.push_back(make_circle_curve(c, r));
    return ParametricRegion(std::move(loop));
}

ParametricRegion rect_loop(Point2 lo, Point2 hi) {
    std::vector<NurbsCurve> loop;
    loop.push_back(make_line_curve({lo.x, lo.y}, {hi.x, lo.y}));
    loop.push_back(make_line_curve({hi.x, lo.y}, {hi.x, hi.y}));
    loop.push_back(make_line_curve({hi.x, hi.y}, {lo.x, hi.y}));
    loop.push_back(make_line_curve({lo.x, hi.y}, {lo.x, lo.y}));
    return ParametricRegion(std::move(loop));
}

} // namespace

std::vector<std::string> builtin_case_names() {
    return {"circle", "semicircle", "line", "triangle", "plate-hole", "square-plate"};
}

BuiltinCase builtin_case(const std::string& name) {
    if (name == "circle") {
        return {name,
                ImplicitRegion({ImplicitConstraint(CircleConstraint{0.5, 0.5, 0.2, 1.0})}),
                circle_loop({0.5, 0.5}, 0.2), M_PI * 0.04};
    }
    if (name == "semicircle") {
        // Upper-right half of the disc centered on the line x + y = 0.3536.
        const Point2 c{0.1768, 0.1768};
        const double r = 0.25;
        std::vector<NurbsCurve> loop;
        loop.push_back(make_arc_curve(c, r, -M_PI / 4.0, M_PI / 4.0));
        loop.push_back(make_arc_curve(c, r, M_PI / 4.0, 3.0 * M_PI / 4.0));
        const double d = r / std::sqrt(2.0);
        loop.push_back(make_line_curve({c.x - d, c.y + d}, {c.x + d, c.y - d}));
        return {name,
                ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{-1.0, -1.0, -0.3536, 1.0}),
                                ImplicitConstraint(CircleConstraint{c.x, c.y, r, 1.0})}),
                ParametricRegion(std::move(loop)), 0.5 * M_PI * r * r};
    }
    if (name == "line") {
        return {name,
                ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{1.0, 0.0, 0.5, 1.0})}),
                rect_loop({0.0, 0.0}, {0.5, 1.0}), 0.5};
    }
    if (name == "triangle") {
        const Point2 v0{0.0, 0.0}, v1{0.5, 0.0}, v2{0.0, 0.5};
        std::vector<NurbsCurve> loop;
        loop.push_back(make_line_curve(v0, v1));
        loop.push_back(make_line_curve(v1, v2));
        loop.push_back(make_line_curve(v2, v0));
        return {name,
                ImplicitRegion({halfplane_left_of(v0, v1), halfplane_left_of(v1, v2),
                                halfplane_left_of(v2, v0)}),
                ParametricRegion(std::move(loop)), 0.125};
    }
    if (name == "plate-hole") {
        const double R = 0.25;
        std::vector<NurbsCurve> loop;
        loop.push_back(make_line_curve({R, 0.0}, {1.0, 0.0}));
        loop.push_back(make_line_curve({1.0, 0.0}, {1.0, 1.0}));
        loop.push_back(make_line_curve({1.0, 1.0}, {0.0, 1.0}));
        loop.push_back(make_line_curve({0.0, 1.0}, {0.0, R}));
        loop.push_back(make_arc_curve({0.0, 0.0}, R, M_PI / 2.0, 0.0));
        return {name,
                ImplicitRegion({ImplicitConstraint(CircleConstraint{0.0, 0.0, R, -1.0})}),
                ParametricRegion(std::move(loop)), 1.0 - 0.25 * M_PI * R * R};
    }
    if (name == "square-plate") {
        return {name,
                ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{0.0, 1.0, 0.75, 1.0})}),
                rect_loop({0.0, 0.0}, {1.0, 0.75}), 0.75};
    }
    fail(ErrorCode::InvalidArgument, "unknown built-in case: " + name);
}

} // namespace cutcell
