#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "cutcell/elasticity.hpp"

using namespace cutcell;

namespace {

const Material kMat(1.0, 0.3);
const PlateHoleCase kHole;

InterfaceSpec full_domain() {
    return InterfaceSpec{
        ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{1.0, 0.0, 2.0, 1.0})})};
}

// Stress built from central differences of the displacement field only.
std::array<double, 3> stress_fd(const std::function<Point2(Point2)>& u, Point2 p,
                                const Material& m, double h) {
    const Point2 uxp = u({p.x + h, p.y}), uxm = u({p.x - h, p.y});
    const Point2 uyp = u({p.x, p.y + h}), uym = u({p.x, p.y - h});
    const double ux_x = (uxp.x - uxm.x) / (2.0 * h), uy_x = (uxp.y - uxm.y) / (2.0 * h);
    const double ux_y = (uyp.x - uym.x) / (2.0 * h), uy_y = (uyp.y - uym.y) / (2.0 * h);
    const double lam = m.lambda(), mu = m.mu();
    return {(lam + 2.0 * mu) * ux_x + lam * uy_y, lam * ux_x + (lam + 2.0 * mu) * uy_y,
            mu * (ux_y + uy_x)};
}

} // namespace

TEST_CASE("material derived constants") {
    CHECK(kMat.mu() == doctest::Approx(0.3846154).epsilon(1e-6));
    CHECK(kMat.kolosov() == doctest::Approx(1.8).epsilon(1e-14));
    CHECK_THROWS_AS(Material(1.0, 0.5), Error);
}

TEST_CASE("plate-hole displacement at the hole rim") {
    const Point2 u = plate_hole_exact({0.25, 0.0}, kMat, kHole);
    CHECK(std::abs(u.x - 6.825) <= 1e-12);
    CHECK(std::abs(u.y) <= 1e-12);
    CHECK_THROWS_AS(plate_hole_exact({0.1, 0.0}, kMat, kHole), Error);
    // Far along the symmetry axis u_y stays zero.
    CHECK(std::abs(plate_hole_exact({5.0, 0.0}, kMat, kHole).y) <= 1e-12);
}

TEST_CASE("plate-hole stress matches a finite-difference oracle") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> ur(0.3, 1.2), uth(0.0, M_PI / 2.0);
    auto u = [&](Point2 p) { return plate_hole_exact(p, kMat, kHole); };
    for (int k = 0; k < 100; ++k) {
        const double r = ur(rng), th = uth(rng);
        const Point2 p{r * std::cos(th), r * std::sin(th)};
        const auto sa = plate_hole_stress(p, kMat, kHole);
        const auto sf = stress_fd(u, p, kMat, 1e-6);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(sa[c] - sf[c]) <= 1e-5);
    }
}

TEST_CASE("hole boundary is traction free") {
    for (int k = 0; k <= 20; ++k) {
        const double th = 0.5 * M_PI * k / 20.0;
        const Point2 n{std::cos(th), std::sin(th)};
        const Point2 p{kHole.Ri * n.x, kHole.Ri * n.y};
        const Point2 t = plate_hole_traction(p, n, kMat, kHole);
        CHECK(std::abs(t.x) <= 1e-10);
        CHECK(std::abs(t.y) <= 1e-10);
    }
}

TEST_CASE("far field stress approaches the applied traction") {
    const auto s = plate_hole_stress({100.0 * kHole.Ri, 0.0}, kMat, kHole);
    CHECK(std::abs(s[0] - kHole.Tx) <= 0.01 * kHole.Tx);
}

TEST_CASE("manufactured displacement values") {
    const Point2 a = manufactured_exact({0.25, 0.25});
    CHECK(a.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(manufactured_exact({0.5, 0.33}).x) <= 1e-14);
    const double ref = std::sin(0.2 * M_PI) * std::sin(1.4 * M_PI);
    CHECK(manufactured_exact({0.1, 0.7}).x == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("manufactured body force matches a finite-difference divergence oracle") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u01(0.05, 0.95);
    for (int k = 0; k < 100; ++k) {
        const Point2 p{u01(rng), u01(rng)};
        const double h = 1e-4;
        auto sxx = [&](Point2 q) { return stress_fd(manufactured_exact, q, kMat, 1e-5); };
        const auto sxp = sxx({p.x + h, p.y}), sxm = sxx({p.x - h, p.y});
        const auto syp = sxx({p.x, p.y + h}), sym = sxx({p.x, p.y - h});
        const double bx = -((sxp[0] - sxm[0]) / (2.0 * h) + (syp[2] - sym[2]) / (2.0 * h));
        const double by = -((sxp[2] - sxm[2]) / (2.0 * h) + (syp[1] - sym[1]) / (2.0 * h));
        const Point2 b = manufactured_body_force(p, kMat);
        CHECK(std::abs(b.x - bx) <= 1e-4 * std::max(1.0, std::abs(b.x)));
        CHECK(std::abs(b.y - by) <= 1e-4 * std::max(1.0, std::abs(b.y)));
        // Swapping x and y swaps (and here preserves) the two components.
        const Point2 bs = manufactured_body_force({p.y, p.x}, kMat);
        CHECK(b.x == doctest::Approx(bs.y).epsilon(1e-12));
    }
}

TEST_CASE("single bilinear element matches the textbook stiffness") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 1, 1);
    BsplineSpace space(mesh, 1);
    LinearSystem sys = assemble(space, full_domain(), kMat, 3, {});
    Eigen::MatrixXd K = Eigen::MatrixXd(sys.stiffness());
    REQUIRE(K.rows() == 8);

    // Independent oracle: bilinear shape functions, 3x3 Gauss on the square.
    Eigen::MatrixXd Kref = Eigen::MatrixXd::Zero(8, 8);
    const double gx[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    const double lam = kMat.lambda(), mu = kMat.mu();
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const double x = gx[a], y = gx[b], w = gw[a] * gw[b];
            // Node order (ix, iy) = (0,0), (1,0), (0,1), (1,1).
            const double dNx[4] = {-(1 - y), (1 - y), -y, y};
            const double dNy[4] = {-(1 - x), -x, (1 - x), x};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Kref(2 * i, 2 * j) +=
                        w * ((lam + 2 * mu) * dNx[i] * dNx[j] + mu * dNy[i] * dNy[j]);
                    Kref(2 * i, 2 * j + 1) += w * (lam * dNx[i] * dNy[j] + mu * dNy[i] * dNx[j]);
                    Kref(2 * i + 1, 2 * j) += w * (lam * dNy[i] * dNx[j] + mu * dNx[i] * dNy[j]);
                    Kref(2 * i + 1, 2 * j + 1) +=
                        w * ((lam + 2 * mu) * dNy[i] * dNy[j] + mu * dNx[i] * dNx[j]);
                }
        }
    }
    CHECK((K - Kref).cwiseAbs().maxCoeff() <= 1e-12 * Kref.cwiseAbs().maxCoeff());
}

TEST_CASE("stiffness symmetry and rigid-body null space") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    BsplineSpace space(mesh, 2);
    LinearSystem sys = assemble(space, full_domain(), kMat, 4, {});
    Eigen::SparseMatrix<double> K = sys.stiffness();
    Eigen::MatrixXd Kd(K);
    CHECK((Kd - Kd.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * Kd.cwiseAbs().maxCoeff());
    Eigen::VectorXd tx = Eigen::VectorXd::Zero(space.n_dofs());
    for (int i = 0; i < space.dim(); ++i) tx[2 * i] = 1.0;
    CHECK((Kd * tx).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("patch test reproduces a linear field") {
    auto linear = [](Point2 p) {
        return Point2{0.1 + 0.3 * p.x + 0.2 * p.y, -0.05 + 0.1 * p.x + 0.4 * p.y};
    };
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 4, 4);
    BsplineSpace space(mesh, 2);
    LinearSystem sys = assemble(space, full_domain(), kMat, 4, {});
    std::vector<EdgeDirichlet> bcs;
    for (int edge : {0, 1, 2, 3})
        for (int comp : {0, 1})
            bcs.push_back({edge, comp, [linear, comp](Point2 p) {
                               return comp == 0 ? linear(p).x : linear(p).y;
                           }});
    apply_dirichlet(sys, bcs);
    SolveResult sol = solve(sys);
    for (double x : {0.1, 0.5, 0.93})
        for (double y : {0.21, 0.77}) {
            const Point2 uh = evaluate_field(space, sol.u, {x, y});
            const Point2 ue = linear({x, y});
            CHECK(std::abs(uh.x - ue.x) <= 1e-10);
            CHECK(std::abs(uh.y - ue.y) <= 1e-10);
        }
}

TEST_CASE("zero loads and zero Dirichlet give the zero field") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 2, 2);
    BsplineSpace space(mesh, 2);
    LinearSystem sys = assemble(space, full_domain(), kMat, 4, {});
    std::vector<EdgeDirichlet> bcs;
    for (int edge : {0, 1, 2, 3})
        for (int comp : {0, 1}) bcs.push_back({edge, comp, [](Point2) { return 0.0; }});
    apply_dirichlet(sys, bcs);
    SolveResult sol = solve(sys);
    for (double c : sol.u.coeffs) CHECK(std::abs(c) <= 1e-13);
}

TEST_CASE("boundary trace projection accuracy") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 16, 16);
    BsplineSpace space(mesh, 2);
    LinearSystem sys = assemble(space, full_domain(), kMat, 4, {});
    auto g = [](Point2 p) { return std::sin(M_PI * p.x) + 0.2 * std::cos(2.0 * M_PI * p.x); };
    apply_dirichlet(sys, {{0, 0, g}});
    DisplacementField traced;
    traced.coeffs.assign(static_cast<std::size_t>(space.n_dofs()), 0.0);
    for (std::size_t d = 0; d < traced.coeffs.size(); ++d)
        if (sys.fixed[d]) traced.coeffs[d] = *sys.fixed[d];
    for (int k = 0; k <= 50; ++k) {
        const double x = static_cast<double>(k) / 50.0;
        const Point2 uh = evaluate_field(space, traced, {x, 0.0});
        CHECK(std::abs(uh.x - g({x, 0.0})) <= 1e-4);
    }
}

TEST_CASE("untrimmed manufactured Dirichlet problem converges") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 8, 8);
    BsplineSpace space(mesh, 2);
    Loads loads;
    loads.body = [](Point2 p) { return manufactured_body_force(p, kMat); };
    LinearSystem sys = assemble(space, full_domain(), kMat, 4, loads);
    std::vector<EdgeDirichlet> bcs;
    for (int edge : {0, 1, 2, 3})
        for (int comp : {0, 1})
            bcs.push_back({edge, comp, [comp](Point2 p) {
                               const Point2 u = manufactured_exact(p);
                               return comp == 0 ? u.x : u.y;
                           }});
    apply_dirichlet(sys, bcs);
    SolveResult sol = solve(sys);
    const double err = relative_l2_error(space, sol.u, manufactured_exact, full_domain(), 4);
    CHECK(err <= 1e-2);
}

TEST_CASE("u_h = 0 has relative error one") {
    BackgroundMesh mesh({0, 0}, 1.0, 1.0, 2, 2);
    BsplineSpace space(mesh, 1);
    DisplacementField zero;
    zero.coeffs.assign(static_cast<std::size_t>(space.n_dofs()), 0.0);
    CHECK(relative_l2_error(space, zero, manufactured_exact, full_domain(), 3) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plate-hole benchmark runs and refines") {
    BenchRecord c4 = run_benchmark(BenchCase::PlateHole, Backend::Implicit, 2, 4, kMat, kHole);
    BenchRecord c8 = run_benchmark(BenchCase::PlateHole, Backend::Implicit, 2, 8, kMat, kHole);
    CHECK(std::isfinite(c4.rel_l2_error));
    CHECK(c8.rel_l2_error < c4.rel_l2_error);
    BenchRecord p8 = run_benchmark(BenchCase::PlateHole, Backend::Parametric, 2, 8, kMat, kHole);
    CHECK(p8.rel_l2_error <= 2.0 * c8.rel_l2_error);
    CHECK(c8.rel_l2_error <= 2.0 * p8.rel_l2_error);
}

TEST_CASE("square-plate benchmark runs on both backends") {
    for (Backend b : {Backend::Implicit, Backend::Parametric}) {
        BenchRecord r = run_benchmark(BenchCase::SquarePlate, b, 2, 8, kMat, kHole);
        CHECK(std::isfinite(r.rel_l2_error));
        CHECK(r.rel_l2_error < 0.1);
    }
}
