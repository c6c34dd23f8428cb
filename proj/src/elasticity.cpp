#include "cutcell/elasticity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Dense>

#include "cutcell/quad_implicit.hpp"
#include "cutcell/quad_parametric.hpp"

namespace cutcell {

// ---------------------------------------------------------------------------
// B-spline space

namespace {

std::vector<double> open_uniform_knots(double lo, double extent, int n_cells, int p) {
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(n_cells + 2 * p + 1));
    for (int i = 0; i <= p; ++i) knots.push_back(lo);
    for (int i = 1; i < n_cells; ++i) knots.push_back(lo + extent * i / n_cells);
    for (int i = 0; i <= p; ++i) knots.push_back(lo + extent);
    return knots;
}

} // namespace

BsplineSpace::BsplineSpace(const BackgroundMesh& mesh_, int p_) : mesh(mesh_), p(p_) {
    if (p < 1) fail(ErrorCode::InvalidArgument, "BsplineSpace: degree must be >= 1");
    knots_x = open_uniform_knots(mesh.origin.x, mesh.width, mesh.nx, p);
    knots_y = open_uniform_knots(mesh.origin.y, mesh.height, mesh.ny, p);
}

void BsplineSpace::basis_1d(Axis axis, double t, int& first, double* N, double* dN) const {
    const std::vector<double>& U = axis == Axis::X ? knots_x : knots_y;
    const int n = axis == Axis::X ? mesh.nx : mesh.ny;
    const double lo = axis == Axis::X ? mesh.origin.x : mesh.origin.y;
    const double extent = axis == Axis::X ? mesh.width : mesh.height;
    if (t < lo - 1e-12 * extent || t > lo + extent + 1e-12 * extent)
        fail(ErrorCode::DomainError, "basis_1d: parameter outside the mesh");
    int span = p + std::clamp(static_cast<int>((t - lo) / extent * n), 0, n - 1);

    double left[16], right[16], low[16];
    if (p >= 16) fail(ErrorCode::InvalidArgument, "basis_1d: degree too large");
    N[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        if (j == p)
            for (int r = 0; r < p; ++r) low[r] = N[r]; // degree p-1 values
        left[j] = t - U[span + 1 - j];
        right[j] = U[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = N[r] / (right[r + 1] + left[j - r]);
            N[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        N[j] = saved;
    }
    first = span - p;
    if (p == 1) {
        low[0] = 1.0;
    }
    for (int r = 0; r <= p; ++r) {
        const int i = first + r;
        double a = 0.0, b = 0.0;
        if (r >= 1) {
            const double den = U[i + p] - U[i];
            if (den > 0.0) a = low[r - 1] / den;
        }
        if (r <= p - 1) {
            const double den = U[i + p + 1] - U[i + 1];
            if (den > 0.0) b = low[r] / den;
        }
        dN[r] = p * (a - b);
    }
}

Point2 evaluate_field(const BsplineSpace& space, const DisplacementField& u, Point2 pt) {
    const int p = space.p;
    double Nx[16], dNx[16], Ny[16], dNy[16];
    int fx = 0, fy = 0;
    space.basis_1d(Axis::X, pt.x, fx, Nx, dNx);
    space.basis_1d(Axis::Y, pt.y, fy, Ny, dNy);
    Point2 out{0.0, 0.0};
    for (int a = 0; a <= p; ++a) {
        for (int b = 0; b <= p; ++b) {
            const double phi = Nx[a] * Ny[b];
            out.x += phi * u.coeffs[space.dof(fx + a, fy + b, 0)];
            out.y += phi * u.coeffs[space.dof(fx + a, fy + b, 1)];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact solutions

namespace {

struct KirschTerms {
    double F, rho, th;
    double A, B, C, D, E;   // angular factors
    double Ap, Bp, Cp, Dp, Ep; // their theta-derivatives
};

KirschTerms kirsch_terms(Point2 pt, const Material& m, const PlateHoleCase& c) {
    const double r = norm(pt);
    if (r < c.Ri * (1.0 - 1e-12))
        fail(ErrorCode::DomainError, "plate_hole_exact: point inside the hole");
    KirschTerms t;
    t.th = std::atan2(pt.y, pt.x);
    t.rho = r / c.Ri;
    t.F = c.Tx * c.Ri / (8.0 * m.mu());
    const double k = m.kolosov();
    const double c1 = std::cos(t.th), s1 = std::sin(t.th);
    const double c3 = std::cos(3.0 * t.th), s3 = std::sin(3.0 * t.th);
    t.A = (k + 1.0) * c1;
    t.B = c3;
    t.C = (k - 3.0) * s1;
    t.D = (1.0 - k) * s1;
    t.E = s3;
    t.Ap = -(k + 1.0) * s1;
    t.Bp = -3.0 * s3;
    t.Cp = (k - 3.0) * c1;
    t.Dp = (1.0 - k) * c1;
    t.Ep = 3.0 * c3;
    return t;
}

} // namespace

Point2 plate_hole_exact(Point2 pt, const Material& m, const PlateHoleCase& c) {
    const KirschTerms t = kirsch_terms(pt, m, c);
    const double r1 = 2.0 / t.rho, r3 = 2.0 / (t.rho * t.rho * t.rho);
    return {t.F * (t.rho * t.A + r1 * (t.A + t.B) - r3 * t.B),
            t.F * (t.rho * t.C + r1 * (t.D + t.E) - r3 * t.E)};
}

std::array<double, 3> plate_hole_stress(Point2 pt, const Material& m, const PlateHoleCase& c) {
    const KirschTerms t = kirsch_terms(pt, m, c);
    const double r = t.rho * c.Ri;
    const double r1 = 2.0 / t.rho, r3 = 2.0 / (t.rho * t.rho * t.rho);
    const double r2 = 2.0 / (t.rho * t.rho), r4 = 6.0 / (t.rho * t.rho * t.rho * t.rho);
    // Polar derivatives of the displacement components.
    const double ux_r = t.F / c.Ri * (t.A - r2 * (t.A + t.B) + r4 * t.B);
    const double uy_r = t.F / c.Ri * (t.C - r2 * (t.D + t.E) + r4 * t.E);
    const double ux_t = t.F * (t.rho * t.Ap + r1 * (t.Ap + t.Bp) - r3 * t.Bp);
    const double uy_t = t.F * (t.rho * t.Cp + r1 * (t.Dp + t.Ep) - r3 * t.Ep);
    const double c1 = std::cos(t.th), s1 = std::sin(t.th);
    const double ux_x = c1 * ux_r - s1 / r * ux_t;
    const double ux_y = s1 * ux_r + c1 / r * ux_t;
    const double uy_x = c1 * uy_r - s1 / r * uy_t;
    const double uy_y = s1 * uy_r + c1 / r * uy_t;
    const double lam = m.lambda(), mu = m.mu();
    return {(lam + 2.0 * mu) * ux_x + lam * uy_y, lam * ux_x + (lam + 2.0 * mu) * uy_y,
            mu * (ux_y + uy_x)};
}

Point2 plate_hole_traction(Point2 pt, Point2 n, const Material& m, const PlateHoleCase& c) {
    const auto s = plate_hole_stress(pt, m, c);
    return {s[0] * n.x + s[2] * n.y, s[2] * n.x + s[1] * n.y};
}

Point2 manufactured_exact(Point2 pt) {
    const double s = std::sin(2.0 * M_PI * pt.x) * std::sin(2.0 * M_PI * pt.y);
    return {s, s};
}

std::array<double, 3> manufactured_stress(Point2 pt, const Material& m) {
    const double w = 2.0 * M_PI;
    const double sx = std::sin(w * pt.x), cx = std::cos(w * pt.x);
    const double sy = std::sin(w * pt.y), cy = std::cos(w * pt.y);
    const double ux_x = w * cx * sy, ux_y = w * sx * cy;
    const double uy_x = ux_x, uy_y = ux_y;
    const double lam = m.lambda(), mu = m.mu();
    return {(lam + 2.0 * mu) * ux_x + lam * uy_y, lam * ux_x + (lam + 2.0 * mu) * uy_y,
            mu * (ux_y + uy_x)};
}

Point2 manufactured_body_force(Point2 pt, const Material& m) {
    const double w = 2.0 * M_PI;
    const double sx = std::sin(w * pt.x), cx = std::cos(w * pt.x);
    const double sy = std::sin(w * pt.y), cy = std::cos(w * pt.y);
    const double b = w * w * ((m.lambda() + 3.0 * m.mu()) * sx * sy -
                              (m.lambda() + m.mu()) * cx * cy);
    return {b, b};
}

// ---------------------------------------------------------------------------
// Assembly

Eigen::SparseMatrix<double> LinearSystem::stiffness() const {
    Eigen::SparseMatrix<double> K(space.n_dofs(), space.n_dofs());
    K.setFromTriplets(triplets.begin(), triplets.end());
    return K;
}

namespace {

// Interface (boundary-trace) rule of a cell, empty when the interface does
// not touch the cell. Implicit: only attempted when some constraint attains
// zero on the cell (its face rule covers grazing trim lines).
QuadratureRule trimmed_boundary_rule(const InterfaceSpec& iface, const PreparedLoop* loop,
                                     const Cell& cell, int q) {
    if (loop) return interface_quadrature_parametric(*loop, cell, q);
    const ImplicitRegion& region = iface.implicit();
    bool touched = false;
    for (const auto& c : region.constraints) {
        const Bernstein2D bern = to_bernstein(c, cell);
        const auto [mn, mx] = coefficient_range(bern);
        double scale = 0.0;
        for (double v : bern.coeffs) scale = std::max(scale, std::abs(v));
        const double eps = 1e-12 * std::max(scale, 1e-300);
        if (mn <= eps && mx >= -eps) touched = true;
    }
    if (!touched) return {};
    return interface_quadrature_implicit(region, cell, q);
}

} // namespace

LinearSystem assemble(const BsplineSpace& space, const InterfaceSpec& iface, const Material& m,
                      int q, const Loads& loads) {
    if (q < space.p + 1) fail(ErrorCode::InvalidArgument, "assemble: need q >= p + 1");
    const BackgroundMesh& mesh = space.mesh;
    const int p = space.p;
    const int nloc = (p + 1) * (p + 1);
    const double lam = m.lambda(), mu = m.mu();

    LinearSystem sys;
    sys.space = space;
    sys.rhs = Eigen::VectorXd::Zero(space.n_dofs());
    sys.fixed.assign(static_cast<std::size_t>(space.n_dofs()), std::nullopt);

    DomainQuadrature dq = domain_quadrature(mesh, iface, q);
    sys.n_quad_points = dq.rule.size();

    std::optional<PreparedLoop> loop;
    if (!iface.is_implicit()) loop.emplace(iface.parametric());

    std::vector<double> cell_measure(static_cast<std::size_t>(mesh.nx) * mesh.ny, 0.0);
    Eigen::MatrixXd Kloc(2 * nloc, 2 * nloc);
    std::vector<double> gx(nloc), gy(nloc), phi(nloc);
    double Nx[16], dNx[16], Ny[16], dNy[16];

    std::size_t k = 0;
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i, ++k) {
            const std::size_t n0 = dq.cell_offset[k], n1 = dq.cell_offset[k + 1];
            if (n0 == n1) continue;
            Kloc.setZero();
            int fx = 0, fy = 0;
            for (std::size_t nidx = n0; nidx < n1; ++nidx) {
                const QuadNode& node = dq.rule.nodes[nidx];
                cell_measure[k] += node.w;
                space.basis_1d(Axis::X, node.p.x, fx, Nx, dNx);
                space.basis_1d(Axis::Y, node.p.y, fy, Ny, dNy);
                for (int a = 0; a <= p; ++a) {
                    for (int b = 0; b <= p; ++b) {
                        const int l = a * (p + 1) + b;
                        phi[l] = Nx[a] * Ny[b];
                        gx[l] = dNx[a] * Ny[b];
                        gy[l] = Nx[a] * dNy[b];
                    }
                }
                for (int la = 0; la < nloc; ++la) {
                    for (int lb = 0; lb < nloc; ++lb) {
                        const double axx = (lam + 2.0 * mu) * gx[la] * gx[lb] +
                                           mu * gy[la] * gy[lb];
                        const double axy = lam * gx[la] * gy[lb] + mu * gy[la] * gx[lb];
                        const double ayx = lam * gy[la] * gx[lb] + mu * gx[la] * gy[lb];
                        const double ayy = (lam + 2.0 * mu) * gy[la] * gy[lb] +
                                           mu * gx[la] * gx[lb];
                        Kloc(2 * la, 2 * lb) += node.w * axx;
                        Kloc(2 * la, 2 * lb + 1) += node.w * axy;
                        Kloc(2 * la + 1, 2 * lb) += node.w * ayx;
                        Kloc(2 * la + 1, 2 * lb + 1) += node.w * ayy;
                    }
                }
                if (loads.body) {
                    const Point2 b = loads.body(node.p);
                    for (int l = 0; l < nloc; ++l) {
                        const int ix = fx + l / (p + 1), iy = fy + l % (p + 1);
                        sys.rhs[space.dof(ix, iy, 0)] += node.w * phi[l] * b.x;
                        sys.rhs[space.dof(ix, iy, 1)] += node.w * phi[l] * b.y;
                    }
                }
            }
            for (int la = 0; la < nloc; ++la) {
                const int ga0 = space.dof(fx + la / (p + 1), fy + la % (p + 1), 0);
                for (int lb = 0; lb < nloc; ++lb) {
                    const int gb0 = space.dof(fx + lb / (p + 1), fy + lb % (p + 1), 0);
                    for (int ca = 0; ca < 2; ++ca)
                        for (int cb = 0; cb < 2; ++cb) {
                            const double v = Kloc(2 * la + ca, 2 * lb + cb);
                            if (v != 0.0) sys.triplets.emplace_back(ga0 + ca, gb0 + cb, v);
                        }
                }
            }
            // Traction on the trimmed boundary, integrated on this cell.
            if (loads.trimmed_traction &&
                dq.cls.status[k] != CellStatus::Outside) {
                const QuadratureRule br =
                    trimmed_boundary_rule(iface, loop ? &*loop : nullptr, mesh.cell(i, j), q);
                for (const auto& node : br.nodes) {
                    const Point2 t = loads.trimmed_traction(node.p);
                    space.basis_1d(Axis::X, node.p.x, fx, Nx, dNx);
                    space.basis_1d(Axis::Y, node.p.y, fy, Ny, dNy);
                    for (int a = 0; a <= p; ++a)
                        for (int b = 0; b <= p; ++b) {
                            const double ph = Nx[a] * Ny[b];
                            sys.rhs[space.dof(fx + a, fy + b, 0)] += node.w * ph * t.x;
                            sys.rhs[space.dof(fx + a, fy + b, 1)] += node.w * ph * t.y;
                        }
                }
            }
        }
    }

    // Tractions on untrimmed mesh-aligned edges.
    const GaussRule& g1 = gauss_legendre(q);
    for (const auto& bc : loads.neumann_edges) {
        const bool horizontal = bc.edge == 0 || bc.edge == 2;
        const int ncells = horizontal ? mesh.nx : mesh.ny;
        for (int c = 0; c < ncells; ++c) {
            Cell cell;
            double fixed_coord;
            if (horizontal) {
                cell = mesh.cell(c, bc.edge == 0 ? 0 : mesh.ny - 1);
                fixed_coord = bc.edge == 0 ? cell.y0 : cell.y1;
            } else {
                cell = mesh.cell(bc.edge == 3 ? 0 : mesh.nx - 1, c);
                fixed_coord = bc.edge == 3 ? cell.x0 : cell.x1;
            }
            const std::size_t ck = static_cast<std::size_t>(cell.j) * mesh.nx + cell.i;
            if (dq.cls.status[ck] == CellStatus::Outside) continue;
            const double lo = horizontal ? cell.x0 : cell.y0;
            const double len = horizontal ? cell.width() : cell.height();
            int fx = 0, fy = 0;
            for (int gp = 0; gp < q; ++gp) {
                const double s = lo + g1.x[gp] * len;
                const Point2 pt = horizontal ? Point2{s, fixed_coord} : Point2{fixed_coord, s};
                const Point2 t = bc.traction(pt);
                const double w = g1.w[gp] * len;
                space.basis_1d(Axis::X, pt.x, fx, Nx, dNx);
                space.basis_1d(Axis::Y, pt.y, fy, Ny, dNy);
                for (int a = 0; a <= p; ++a)
                    for (int b = 0; b <= p; ++b) {
                        const double ph = Nx[a] * Ny[b];
                        sys.rhs[space.dof(fx + a, fy + b, 0)] += w * ph * t.x;
                        sys.rhs[space.dof(fx + a, fy + b, 1)] += w * ph * t.y;
                    }
            }
        }
    }

    // Trimmed vs full support measure per scalar basis function.
    sys.support_ratio.assign(static_cast<std::size_t>(space.n_dofs()), 0.0);
    for (int iy = 0; iy < space.dim_y(); ++iy) {
        for (int ix = 0; ix < space.dim_x(); ++ix) {
            double trimmed = 0.0, full = 0.0;
            for (int cj = std::max(0, iy - p); cj <= std::min(mesh.ny - 1, iy); ++cj) {
                for (int ci = std::max(0, ix - p); ci <= std::min(mesh.nx - 1, ix); ++ci) {
                    const std::size_t ck = static_cast<std::size_t>(cj) * mesh.nx + ci;
                    trimmed += cell_measure[ck];
                    full += mesh.cell(ci, cj).area();
                }
            }
            const double ratio = full > 0.0 ? trimmed / full : 0.0;
            sys.support_ratio[static_cast<std::size_t>(space.dof(ix, iy, 0))] = ratio;
            sys.support_ratio[static_cast<std::size_t>(space.dof(ix, iy, 1))] = ratio;
        }
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Boundary conditions

void apply_dirichlet(LinearSystem& sys, const std::vector<EdgeDirichlet>& bcs) {
    const BsplineSpace& space = sys.space;
    const BackgroundMesh& mesh = space.mesh;
    const int p = space.p;
    const GaussRule& g1 = gauss_legendre(p + 1);
    for (const auto& bc : bcs) {
        const bool horizontal = bc.edge == 0 || bc.edge == 2;
        const Axis axis = horizontal ? Axis::X : Axis::Y;
        const int dim = horizontal ? space.dim_x() : space.dim_y();
        const int ncells = horizontal ? mesh.nx : mesh.ny;
        double fixed_coord;
        switch (bc.edge) {
        case 0: fixed_coord = mesh.origin.y; break;
        case 2: fixed_coord = mesh.origin.y + mesh.height; break;
        case 3: fixed_coord = mesh.origin.x; break;
        case 1: fixed_coord = mesh.origin.x + mesh.width; break;
        default: fail(ErrorCode::InvalidArgument, "apply_dirichlet: bad edge id");
        }
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
        Eigen::VectorXd f = Eigen::VectorXd::Zero(dim);
        double N[16], dN[16];
        int first = 0;
        for (int c = 0; c < ncells; ++c) {
            const Cell cell = horizontal ? mesh.cell(c, 0) : mesh.cell(0, c);
            const double lo = cell.lo(axis), len = cell.extent(axis);
            for (int gp = 0; gp < p + 1; ++gp) {
                const double s = lo + g1.x[gp] * len;
                const double w = g1.w[gp] * len;
                space.basis_1d(axis, s, first, N, dN);
                const Point2 pt = horizontal ? Point2{s, fixed_coord} : Point2{fixed_coord, s};
                const double gv = bc.g ? bc.g(pt) : 0.0;
                for (int a = 0; a <= p; ++a) {
                    f[first + a] += w * N[a] * gv;
                    for (int b = 0; b <= p; ++b) M(first + a, first + b) += w * N[a] * N[b];
                }
            }
        }
        const Eigen::VectorXd coef = M.ldlt().solve(f);
        for (int idx = 0; idx < dim; ++idx) {
            int dof;
            switch (bc.edge) {
            case 0: dof = space.dof(idx, 0, bc.comp); break;
            case 2: dof = space.dof(idx, space.dim_y() - 1, bc.comp); break;
            case 3: dof = space.dof(0, idx, bc.comp); break;
            default: dof = space.dof(space.dim_x() - 1, idx, bc.comp); break;
            }
            sys.fixed[static_cast<std::size_t>(dof)] = coef[idx];
        }
    }
}

InterfaceSpec benchmark_interface(BenchCase c, Backend backend, const PlateHoleCase& phc) {
    if (c == BenchCase::PlateHole) {
        if (backend == Backend::Implicit)
            return InterfaceSpec{
                ImplicitRegion({ImplicitConstraint(CircleConstraint{0.0, 0.0, phc.Ri, -1.0})})};
        const double R = phc.Ri;
        std::vector<NurbsCurve> loop;
        loop.push_back(make_line_curve({R, 0.0}, {1.0, 0.0}));
        loop.push_back(make_line_curve({1.0, 0.0}, {1.0, 1.0}));
        loop.push_back(make_line_curve({1.0, 1.0}, {0.0, 1.0}));
        loop.push_back(make_line_curve({0.0, 1.0}, {0.0, R}));
        loop.push_back(make_arc_curve({0.0, 0.0}, R, M_PI / 2.0, 0.0));
        return InterfaceSpec{ParametricRegion(std::move(loop))};
    }
    if (backend == Backend::Implicit)
        return InterfaceSpec{
            ImplicitRegion({ImplicitConstraint(HalfPlaneConstraint{0.0, 1.0, 0.75, 1.0})})};
    std::vector<NurbsCurve> loop;
    loop.push_back(make_line_curve({0.0, 0.0}, {1.0, 0.0}));
    loop.push_back(make_line_curve({1.0, 0.0}, {1.0, 0.75}));
    loop.push_back(make_line_curve({1.0, 0.75}, {0.0, 0.75}));
    loop.push_back(make_line_curve({0.0, 0.75}, {0.0, 0.0}));
    return InterfaceSpec{ParametricRegion(std::move(loop))};
}

Loads benchmark_loads(BenchCase c, const Material& m, const PlateHoleCase& phc) {
    Loads loads;
    if (c == BenchCase::PlateHole) {
        loads.dirichlet.push_back({0, 1, nullptr}); // symmetry: u_y = 0 on the bottom
        loads.dirichlet.push_back({3, 0, nullptr}); // symmetry: u_x = 0 on the left
        loads.neumann_edges.push_back(
            {2, [m, phc](Point2 p) { return plate_hole_traction(p, {0.0, 1.0}, m, phc); }});
        loads.neumann_edges.push_back(
            {1, [m, phc](Point2 p) { return plate_hole_traction(p, {1.0, 0.0}, m, phc); }});
        return loads;
    }
    loads.body = [m](Point2 p) { return manufactured_body_force(p, m); };
    for (int edge : {0, 1, 3})
        for (int comp : {0, 1})
            loads.dirichlet.push_back({edge, comp, [comp](Point2 p) {
                                           const Point2 u = manufactured_exact(p);
                                           return comp == 0 ? u.x : u.y;
                                       }});
    loads.trimmed_traction = [m](Point2 p) {
        const auto s = manufactured_stress(p, m); // outward normal (0, 1) on y = 0.75
        return Point2{s[2], s[1]};
    };
    return loads;
}

void apply_boundary_conditions(LinearSystem& sys, BenchCase c, const Material& m,
                               const PlateHoleCase& phc) {
    apply_dirichlet(sys, benchmark_loads(c, m, phc).dirichlet);
}

// ---------------------------------------------------------------------------
// Solve

SolveResult solve(const LinearSystem& sys) {
    const int n = sys.space.n_dofs();
    std::vector<std::optional<double>> fixed = sys.fixed;
    SolveResult out;
    for (int d = 0; d < n; ++d) {
        if (!fixed[d] && sys.support_ratio[static_cast<std::size_t>(d)] < 1e-10) {
            fixed[d] = 0.0;
            ++out.n_eliminated;
        }
    }
    std::vector<int> idx(static_cast<std::size_t>(n), -1);
    int nf = 0;
    for (int d = 0; d < n; ++d)
        if (!fixed[d]) idx[static_cast<std::size_t>(d)] = nf++;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
    for (int d = 0; d < n; ++d)
        if (!fixed[d]) rhs[idx[static_cast<std::size_t>(d)]] = sys.rhs[d];
    std::vector<Eigen::Triplet<double>> red;
    red.reserve(sys.triplets.size());
    for (const auto& t : sys.triplets) {
        const bool rf = !fixed[t.row()], cf = !fixed[t.col()];
        if (rf && cf)
            red.emplace_back(idx[static_cast<std::size_t>(t.row())],
                             idx[static_cast<std::size_t>(t.col())], t.value());
        else if (rf && *fixed[t.col()] != 0.0)
            rhs[idx[static_cast<std::size_t>(t.row())]] -= t.value() * *fixed[t.col()];
    }
    Eigen::SparseMatrix<double> K(nf, nf);
    K.setFromTriplets(red.begin(), red.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
    if (ldlt.info() != Eigen::Success)
        fail(ErrorCode::SingularSystem, "solve: factorization failed (" +
                                            std::to_string(out.n_eliminated) +
                                            " dofs eliminated, " + std::to_string(nf) + " free)");
    const Eigen::VectorXd x = ldlt.solve(rhs);
    const Eigen::VectorXd D = ldlt.vectorD();
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < D.size(); ++i) {
        dmax = std::max(dmax, std::abs(D[i]));
        dmin = std::min(dmin, std::abs(D[i]));
    }
    if (!(dmin > 0.0))
        fail(ErrorCode::SingularSystem, "solve: singular pivot after elimination");
    out.cond_estimate = dmax / dmin;

    out.u.coeffs.assign(static_cast<std::size_t>(n), 0.0);
    for (int d = 0; d < n; ++d)
        out.u.coeffs[static_cast<std::size_t>(d)] =
            fixed[d] ? *fixed[d] : x[idx[static_cast<std::size_t>(d)]];
    return out;
}

double relative_l2_error(const BsplineSpace& space, const DisplacementField& u,
                         const std::function<Point2(Point2)>& exact, const InterfaceSpec& iface,
                         int q) {
    DomainQuadrature dq = domain_quadrature(space.mesh, iface, q);
    double num = 0.0, den = 0.0;
    for (const auto& node : dq.rule.nodes) {
        const Point2 ue = exact(node.p);
        const Point2 uh = evaluate_field(space, u, node.p);
        num += node.w * (dist(uh, ue) * dist(uh, ue));
        den += node.w * dot(ue, ue);
    }
    if (den <= 0.0) fail(ErrorCode::DomainError, "relative_l2_error: zero reference norm");
    return std::sqrt(num / den);
}

BenchRecord run_benchmark(BenchCase c, Backend backend, int p, int n_cells, const Material& m,
                          const PlateHoleCase& phc) {
    BackgroundMesh mesh({0.0, 0.0}, 1.0, 1.0, n_cells, n_cells);
    BsplineSpace space(mesh, p);
    InterfaceSpec iface = benchmark_interface(c, backend, phc);
    Loads loads = benchmark_loads(c, m, phc);
    LinearSystem sys = assemble(space, iface, m, p + 2, loads);
    apply_dirichlet(sys, loads.dirichlet);
    SolveResult sol = solve(sys);
    const auto exact = [&](Point2 pt) {
        return c == BenchCase::PlateHole ? plate_hole_exact(pt, m, phc) : manufactured_exact(pt);
    };
    BenchRecord rec;
    rec.case_name = c == BenchCase::PlateHole ? "plate-hole" : "square-plate";
    rec.backend = backend == Backend::Implicit ? "implicit" : "parametric";
    rec.p = p;
    rec.h = mesh.hx();
    rec.n_dofs = space.n_dofs();
    rec.n_quad_points = sys.n_quad_points;
    rec.rel_l2_error = relative_l2_error(space, sol.u, exact, iface, p + 2);
    rec.cond_estimate = sol.cond_estimate;
    return rec;
}

void write_benchmark_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << "case,backend,p,h,n_dofs,n_quad_points,rel_l2_error,cond_estimate\n";
    char buf[320];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.17g,%d,%zu,%.17g,%.17g\n",
                      r.case_name.c_str(), r.backend.c_str(), r.p, r.h, r.n_dofs,
                      r.n_quad_points, r.rel_l2_error, r.cond_estimate);
        os << buf;
    }
}

} // namespace cutcell
