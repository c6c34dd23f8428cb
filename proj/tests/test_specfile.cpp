#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "cutcell/specfile.hpp"

using namespace cutcell;

TEST_CASE("implicit spec round trip") {
    const std::string text = R"({
        "type": "implicit",
        "constraints": [
            {"kind": "circle", "cx": 0.5, "cy": 0.5, "r": 0.2, "sign": 1},
            {"kind": "halfplane", "a": 1.0, "b": 0.0, "c": 0.7, "sign": 1}
        ]
    })";
    InterfaceSpec spec = parse_interface_spec(text);
    const auto* region = std::get_if<ImplicitRegion>(&spec.region);
    REQUIRE(region != nullptr);
    REQUIRE(region->constraints.size() == 2);
    CHECK(region->constraints[0].value({0.5, 0.5}) == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(region->constraints[1].value({0.2, 0.9}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("poly constraint spec") {
    const std::string text = R"({
        "type": "implicit",
        "constraints": [
            {"kind": "poly", "degree": 1, "coeffs": [1.0, 2.0, 3.0, 4.0]}
        ]
    })";
    InterfaceSpec spec = parse_interface_spec(text);
    const auto& c = std::get<ImplicitRegion>(spec.region).constraints[0];
    // coeffs[i*(d+1)+j] multiplies x^i y^j: 1 + 2y + 3x + 4xy
    CHECK(c.value({0.5, 0.25}) == doctest::Approx(1.0 + 0.5 + 1.5 + 0.5).epsilon(1e-14));
}

TEST_CASE("parametric spec round trip") {
    const std::string text = R"({
        "type": "parametric",
        "segments": [
            {"degree": 1, "knots": [0, 0, 1, 1],
             "control_points": [[0, 0], [1, 0]], "weights": [1, 1]},
            {"degree": 1, "knots": [0, 0, 1, 1],
             "control_points": [[1, 0], [0.5, 1]], "weights": [1, 1]},
            {"degree": 1, "knots": [0, 0, 1, 1],
             "control_points": [[0.5, 1], [0, 0]], "weights": [1, 1]}
        ]
    })";
    InterfaceSpec spec = parse_interface_spec(text);
    const auto* region = std::get_if<ParametricRegion>(&spec.region);
    REQUIRE(region != nullptr);
    REQUIRE(region->curves().size() == 3);
    CHECK(dist(region->curves()[1].evaluate(0.5), {0.75, 0.5}) <= 1e-14);
    CHECK_FALSE(region->reversed());
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_interface_spec("{\n  \"type\": \"implicit\",\n  bogus\n}");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
}

TEST_CASE("content errors name the offending field") {
    const std::string text = R"({
        "type": "implicit",
        "constraints": [
            {"kind": "circle", "cx": 0.5, "cy": 0.5, "sign": 1}
        ]
    })";
    try {
        parse_interface_spec(text);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        const std::string msg = e.what();
        CHECK(msg.find("constraints[0]") != std::string::npos);
        CHECK(msg.find("r") != std::string::npos);
    }
}

TEST_CASE("unknown type and kind are rejected") {
    CHECK_THROWS_AS(parse_interface_spec(R"({"type": "voxel"})"), Error);
    CHECK_THROWS_AS(parse_interface_spec(
                        R"({"type": "implicit", "constraints": [{"kind": "blob"}]})"),
                    Error);
}

TEST_CASE("missing file reports a parse error") {
    CHECK_THROWS_AS(load_interface_spec("/nonexistent/spec.json"), Error);
}

TEST_CASE("builtin case names") {
    const auto names = builtin_case_names();
    REQUIRE(names.size() == 6);
    for (const char* expect :
         {"circle", "semicircle", "line", "triangle", "plate-hole", "square-plate"})
        CHECK(std::find(names.begin(), names.end(), expect) != names.end());
    CHECK_THROWS_AS(builtin_case("banana"), Error);
}

TEST_CASE("builtin reference areas") {
    CHECK(builtin_case("circle").reference_area == doctest::Approx(M_PI * 0.04).epsilon(1e-14));
    CHECK(builtin_case("semicircle").reference_area ==
          doctest::Approx(0.5 * M_PI * 0.0625).epsilon(1e-14));
    CHECK(builtin_case("line").reference_area == doctest::Approx(0.5));
    CHECK(builtin_case("triangle").reference_area == doctest::Approx(0.125));
    CHECK(builtin_case("plate-hole").reference_area ==
          doctest::Approx(1.0 - 0.25 * M_PI * 0.0625).epsilon(1e-14));
    CHECK(builtin_case("square-plate").reference_area == doctest::Approx(0.75));
}

TEST_CASE("builtin cases carry both descriptions") {
    for (const auto& name : builtin_case_names()) {
        const BuiltinCase bc = builtin_case(name);
        CHECK(!bc.implicit.constraints.empty());
        CHECK(bc.parametric.segment_count() > 0);
    }
}
