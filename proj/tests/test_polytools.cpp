#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cutcell/polytools.hpp"

using namespace cutcell;

namespace {

Cell unit_cell() {
    Cell c;
    c.x0 = 0.0;
    c.x1 = 1.0;
    c.y0 = 0.0;
    c.y1 = 1.0;
    return c;
}

} // namespace

TEST_CASE("linear reproduction of f = x") {
    Bernstein2D b = to_bernstein([](Point2 p) { return p.x; }, unit_cell(), 1);
    CHECK(b.at(0, 0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(b.at(0, 1) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(b.at(1, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b.at(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("circle constraint reproduced exactly at degree 2") {
    ImplicitConstraint c(CircleConstraint{0.5, 0.5, 0.2, 1.0});
    Cell cell;
    cell.x0 = 0.25;
    cell.x1 = 0.5;
    cell.y0 = 0.25;
    cell.y1 = 0.5;
    Bernstein2D b = to_bernstein(c, cell, 2);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ux(cell.x0, cell.x1), uy(cell.y0, cell.y1);
    for (int k = 0; k < 25; ++k) {
        const Point2 p{ux(rng), uy(rng)};
        CHECK(b.evaluate(p) == doctest::Approx(c.value(p)).epsilon(1e-12));
    }
}

TEST_CASE("smooth non-polynomial interpolation error") {
    Cell cell;
    cell.x0 = 0.0;
    cell.x1 = 0.25;
    cell.y0 = 0.0;
    cell.y1 = 0.25;
    Bernstein2D b = to_bernstein([](Point2 p) { return std::sin(2.0 * M_PI * p.x); }, cell, 5);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 0.25);
    for (int k = 0; k < 100; ++k) {
        const Point2 p{u(rng), u(rng)};
        CHECK(std::abs(b.evaluate(p) - std::sin(2.0 * M_PI * p.x)) <= 2e-5);
    }
}

TEST_CASE("restriction to a line") {
    Bernstein2D b = to_bernstein([](Point2 p) { return p.x * p.y; }, unit_cell(), 1);
    Bernstein1D r = restrict_to_line(b, Axis::Y, 0.5);
    for (double t : {0.0, 0.3, 1.0}) CHECK(r.evaluate(t) == doctest::Approx(0.5 * t).epsilon(1e-13));

    ImplicitConstraint c(CircleConstraint{0.5, 0.5, 0.2, 1.0});
    Bernstein2D bc = to_bernstein(c, unit_cell(), 2);
    Bernstein1D rc = restrict_to_line(bc, Axis::X, 0.5);
    auto roots = roots_in_interval(rc);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(restrict_to_line(b, Axis::X, 2.0), Error);
}

TEST_CASE("roots of simple polynomials") {
    Bernstein1D lin = interpolate_bernstein_1d([](double t) { return 0.5 * t - 0.25; }, 0.0, 1.0, 1);
    auto r = roots_in_interval(lin);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-13));

    Bernstein1D pos;
    pos.coeffs = {0.5, 1.0, 0.25};
    CHECK(roots_in_interval(pos).empty());

    Bernstein1D zero;
    zero.coeffs = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(roots_in_interval(zero), Error);
}

TEST_CASE("near-double root is found once") {
    Bernstein1D b =
        interpolate_bernstein_1d([](double t) { return (t - 0.5) * (t - 0.5); }, 0.0, 1.0, 2);
    auto r = roots_in_interval(b);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("root completeness against a dense sign scan") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        double r1 = u(rng), r2 = u(rng), r3 = u(rng);
        if (std::abs(r1 - r2) < 0.02 || std::abs(r2 - r3) < 0.02 || std::abs(r1 - r3) < 0.02)
            continue;
        auto f = [&](double t) { return (t - r1) * (t - r2) * (t - r3); };
        Bernstein1D b = interpolate_bernstein_1d(f, 0.0, 1.0, 3);
        auto roots = roots_in_interval(b);
        std::vector<double> expect{r1, r2, r3};
        std::sort(expect.begin(), expect.end());
        REQUIRE(roots.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK(roots[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
}

TEST_CASE("convex hull property") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), pt(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Bernstein2D b;
        b.cell = unit_cell();
        b.dx = 2;
        b.dy = 2;
        b.coeffs.resize(9);
        for (auto& c : b.coeffs) c = coef(rng);
        const auto [mn, mx] = coefficient_range(b);
        const Point2 p{pt(rng), pt(rng)};
        const double v = b.evaluate(p);
        CHECK(v >= mn - 1e-12);
        CHECK(v <= mx + 1e-12);
    }
}

TEST_CASE("certified outside cell for the circle") {
    ImplicitConstraint c(CircleConstraint{0.5, 0.5, 0.2, 1.0});
    Cell far;
    far.x0 = 0.0;
    far.x1 = 0.25;
    far.y0 = 0.0;
    far.y1 = 0.25;
    const auto [mn, mx] = coefficient_range(to_bernstein(c, far, 2));
    CHECK(mx < 0.0);
}

TEST_CASE("bernstein algebra") {
    Bernstein1D a = interpolate_bernstein_1d([](double t) { return 2.0 * t + 1.0; }, 0.0, 1.0, 1);
    Bernstein1D b = interpolate_bernstein_1d([](double t) { return t * t; }, 0.0, 1.0, 2);
    Bernstein1D prod = bernstein_mul(a, b);
    Bernstein1D sum = bernstein_add(a, b, 1.0, -2.0);
    Bernstein1D da = a.derivative();
    for (double t : {0.0, 0.25, 0.6, 1.0}) {
        CHECK(prod.evaluate(t) == doctest::Approx((2.0 * t + 1.0) * t * t).epsilon(1e-13));
        CHECK(sum.evaluate(t) == doctest::Approx(2.0 * t + 1.0 - 2.0 * t * t).epsilon(1e-13));
        CHECK(da.evaluate(t) == doctest::Approx(2.0).epsilon(1e-13));
    }
    Bernstein1D up = b.elevated();
    CHECK(up.degree() == 3);
    for (double t : {0.1, 0.9}) CHECK(up.evaluate(t) == doctest::Approx(t * t).epsilon(1e-13));
}

TEST_CASE("2D derivative") {
    Bernstein2D b = to_bernstein([](Point2 p) { return p.x * p.x + 3.0 * p.y; }, unit_cell(), 2);
    Bernstein2D dx = b.derivative(Axis::X);
    Bernstein2D dy = b.derivative(Axis::Y);
    CHECK(dx.evaluate({0.3, 0.8}) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(dy.evaluate({0.3, 0.8}) == doctest::Approx(3.0).epsilon(1e-12));
}
