#pragma once

#include <string>
#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

// JSON interface-spec document:
//   { "type": "implicit",
//     "constraints": [ {"kind": "circle", "cx": .., "cy": .., "r": .., "sign": 1},
//                      {"kind": "halfplane", "a": .., "b": .., "c": .., "sign": 1},
//                      {"kind": "poly", "degree": d, "coeffs": [..]} ] }
//   { "type": "parametric",
//     "segments": [ {"degree": p, "knots": [..],
//                    "control_points": [[x, y], ..], "weights": [..]} ] }
// Parse errors carry line/column (syntax) or a field path (content).
InterfaceSpec parse_interface_spec(const std::string& text);
InterfaceSpec load_interface_spec(const std::string& path);

// Built-in geometries with both descriptions plus a closed-form area.
struct BuiltinCase {
    std::string name;
    ImplicitRegion implicit;
    ParametricRegion parametric;
    double reference_area = 0.0;
};

std::vector<std::string> builtin_case_names();
BuiltinCase builtin_case(const std::string& name);

} // namespace cutcell
