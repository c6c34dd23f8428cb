#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cutcell/integration.hpp"
#include "cutcell/specfile.hpp"

using namespace cutcell;

namespace {

InterfaceSpec implicit_spec(const std::string& name) {
    return InterfaceSpec{builtin_case(name).implicit};
}

InterfaceSpec parametric_spec(const std::string& name) {
    return InterfaceSpec{builtin_case(name).parametric};
}

InterfaceSpec full_domain() {
    // Constraint positive on the whole unit square.
    return InterfaceSpec{
        ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{1.0, 0.0, 2.0, 1.0})})};
}

} // namespace

TEST_CASE("circle classification counts") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    for (const auto& spec : {implicit_spec("circle"), parametric_spec("circle")}) {
        CellClassification cls = classify_cells(mesh, spec);
        CHECK(cls.count(CellStatus::Cut) == 4);
        CHECK(cls.count(CellStatus::Inside) == 0);
        CHECK(cls.count(CellStatus::Outside) == 12);
    }
}

TEST_CASE("mesh-aligned line snaps to zero cut cells") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    for (const auto& spec : {implicit_spec("line"), parametric_spec("line")}) {
        CellClassification cls = classify_cells(mesh, spec);
        CHECK(cls.count(CellStatus::Cut) == 0);
        CHECK(cls.count(CellStatus::Inside) == 8);
        CHECK(cls.count(CellStatus::Outside) == 8);
    }
}

TEST_CASE("full-domain region is all inside") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    CHECK(classify_cells(mesh, full_domain()).count(CellStatus::Inside) == 16);
}

TEST_CASE("classification soundness at sampled points") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 8, 8);
    const BuiltinCase bc = builtin_case("semicircle");
    CellClassification cls = classify_cells(mesh, InterfaceSpec{bc.implicit});
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200000; ++k) {
        const Point2 p{u(rng), u(rng)};
        double worst = 1e9;
        for (const auto& c : bc.implicit.constraints) worst = std::min(worst, c.value(p));
        if (std::abs(worst) < 1e-9) continue; // boundary band
        const int i = std::min(7, static_cast<int>(p.x * 8)), j = std::min(7, static_cast<int>(p.y * 8));
        if (cls.at(i, j) == CellStatus::Inside) CHECK(worst > 0.0);
        if (cls.at(i, j) == CellStatus::Outside) CHECK(worst < 0.0);
    }
}

TEST_CASE("domain quadrature totals") {
    BackgroundMesh mesh2({0, 0}, 1.0, 1.0, 2, 2);
    DomainQuadrature dq = domain_quadrature(mesh2, full_domain(), 2);
    CHECK(dq.rule.size() == 16);
    CHECK(dq.rule.total_weight() == doctest::Approx(1.0).epsilon(1e-14));

    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    for (const auto& spec : {implicit_spec("circle"), parametric_spec("circle")})
        CHECK(domain_quadrature(mesh, spec, 3).rule.size() == 36);

    for (const auto& spec : {implicit_spec("semicircle"), parametric_spec("semicircle")})
        CHECK(std::abs(domain_quadrature(mesh, spec, 3).rule.total_weight() -
                       0.5 * M_PI * 0.0625) <= 5e-4);
}

TEST_CASE("integrate applies weights to the integrand") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    DomainQuadrature dq = domain_quadrature(mesh, full_domain(), 2);
    CHECK(integrate(dq.rule, [](Point2) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate(dq.rule, [](Point2 p) { return p.x; }) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("conservation: region plus complement equals the domain") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 8, 8);
    ImplicitRegion inside({ImplicitConstraint(CircleConstraint{0.5, 0.5, 0.2, 1.0})});
    ImplicitRegion outside({ImplicitConstraint(CircleConstraint{0.5, 0.5, 0.2, -1.0})});
    const double a = domain_quadrature(mesh, InterfaceSpec{inside}, 5).rule.total_weight();
    const double b = domain_quadrature(mesh, InterfaceSpec{outside}, 5).rule.total_weight();
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("area convergence on the circle decreases monotonically") {
    const std::vector<double> hs{0.25, 0.125, 0.0625, 0.03125, 0.015625};
    for (const auto& spec : {implicit_spec("circle"), parametric_spec("circle")}) {
        auto recs = area_convergence_study(spec, M_PI * 0.04, hs, 3);
        REQUIRE(recs.size() == hs.size());
        int relaxed = 0;
        for (std::size_t k = 1; k < recs.size(); ++k) {
            if (recs[k].rel_error >= recs[k - 1].rel_error) {
                ++relaxed;
                CHECK(recs[k].rel_error <= 1.5 * recs[k - 1].rel_error);
            }
        }
        CHECK(relaxed <= 1);
        CHECK(recs.back().rel_error <= 1e-6);
    }
}

TEST_CASE("line interface areas are exact at every h") {
    for (const auto& spec : {implicit_spec("line"), parametric_spec("line")}) {
        auto recs = area_convergence_study(spec, 0.5, {0.25, 0.125}, 3);
        for (const auto& r : recs) CHECK(r.rel_error <= 1e-12);
    }
}

TEST_CASE("line sweep completes and is exact") {
    for (Backend b : {Backend::Implicit, Backend::Parametric}) {
        auto recs = robustness_sweep(SweepCase::Line, 101, 3, b);
        REQUIRE(recs.size() == 101);
        for (const auto& r : recs) CHECK(r.rel_error <= 1e-10);
    }
}

TEST_CASE("triangle sweep completes and is exact") {
    for (Backend b : {Backend::Implicit, Backend::Parametric}) {
        auto recs = robustness_sweep(SweepCase::Triangle, 46, 3, b);
        REQUIRE(recs.size() == 46);
        for (const auto& r : recs) CHECK(r.rel_error <= 1e-10);
        CHECK(recs[0].reference == doctest::Approx(0.125));
        CHECK(recs[45].reference == doctest::Approx(0.125 * std::cos(M_PI / 4.0)));
    }
}

TEST_CASE("backend agreement at h=0.25 q=5") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    for (const char* name : {"circle", "semicircle", "line", "triangle"}) {
        const double ai =
            domain_quadrature(mesh, implicit_spec(name), 5).rule.total_weight();
        const double ap =
            domain_quadrature(mesh, parametric_spec(name), 5).rule.total_weight();
        CHECK(std::abs(ai - ap) <= 1e-6);
    }
}

TEST_CASE("determinism of repeated runs") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 8, 8);
    const InterfaceSpec spec = implicit_spec("circle");
    DomainQuadrature a = domain_quadrature(mesh, spec, 3);
    DomainQuadrature b = domain_quadrature(mesh, spec, 3);
    REQUIRE(a.rule.size() == b.rule.size());
    for (std::size_t k = 0; k < a.rule.size(); ++k) {
        CHECK(a.rule.nodes[k].p.x == b.rule.nodes[k].p.x);
        CHECK(a.rule.nodes[k].p.y == b.rule.nodes[k].p.y);
        CHECK(a.rule.nodes[k].w == b.rule.nodes[k].w);
    }
}

TEST_CASE("study CSV format") {
    auto recs = area_convergence_study(implicit_spec("line"), 0.5, {0.25}, 3);
    std::ostringstream ss;
    write_study_csv(ss, recs);
    const std::string out = ss.str();
    CHECK(out.rfind("step,h,backend,q,value,reference,rel_error,n_points\n", 0) == 0);
    CHECK(out.find("implicit") != std::string::npos);
}
