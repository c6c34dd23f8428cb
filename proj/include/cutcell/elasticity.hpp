#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "cutcell/integration.hpp"

namespace cutcell {

struct Material {
    double E = 1.0;
    double nu = 0.3;

    Material() = default;
    Material(double E_, double nu_) : E(E_), nu(nu_) {
        if (E <= 0.0 || nu < 0.0 || nu >= 0.5)
            fail(ErrorCode::InvalidArgument, "Material: need E > 0 and 0 <= nu < 0.5");
    }

    double mu() const { return E / (2.0 * (1.0 + nu)); }
    double lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
    // Plane-strain Kolosov constant.
    double kolosov() const { return 3.0 - 4.0 * nu; }
};

struct PlateHoleCase {
    double Tx = 10.0;
    double Ri = 0.25;
};

// Tensor-product B-spline space on the background mesh: open knot vectors,
// one knot span per cell, maximal continuity; two displacement components.
struct BsplineSpace {
    BackgroundMesh mesh;
    int p = 2;
    std::vector<double> knots_x, knots_y;

    BsplineSpace() = default;
    BsplineSpace(const BackgroundMesh& mesh_, int p_);

    int dim_x() const { return mesh.nx + p; }
    int dim_y() const { return mesh.ny + p; }
    int dim() const { return dim_x() * dim_y(); }
    int n_dofs() const { return 2 * dim(); }
    // Scalar basis index -> global dof of a displacement component.
    int dof(int ix, int iy, int comp) const { return 2 * (iy * dim_x() + ix) + comp; }

    // The p+1 basis values (and first derivatives) active at t along an axis;
    // `first` is the index of the first active function.
    void basis_1d(Axis axis, double t, int& first, double* N, double* dN) const;
};

struct DisplacementField {
    std::vector<double> coeffs; // length n_dofs
};

Point2 evaluate_field(const BsplineSpace& space, const DisplacementField& u, Point2 pt);

// ---------------------------------------------------------------------------
// Exact solutions

// Kirsch plate-with-hole displacement (quarter-symmetry form).
Point2 plate_hole_exact(Point2 pt, const Material& m, const PlateHoleCase& c);
// Stress (sxx, syy, sxy) from analytic differentiation of the displacement.
std::array<double, 3> plate_hole_stress(Point2 pt, const Material& m, const PlateHoleCase& c);
Point2 plate_hole_traction(Point2 pt, Point2 n, const Material& m, const PlateHoleCase& c);

Point2 manufactured_exact(Point2 pt);
std::array<double, 3> manufactured_stress(Point2 pt, const Material& m);
Point2 manufactured_body_force(Point2 pt, const Material& m);

// ---------------------------------------------------------------------------
// Assembly and solve

// Edges of the mesh rectangle: 0 bottom, 1 right, 2 top, 3 left.
struct EdgeDirichlet {
    int edge = 0;
    int comp = 0;
    std::function<double(Point2)> g; // prescribed component value on the edge
};

struct EdgeNeumann {
    int edge = 0;
    std::function<Point2(Point2)> traction;
};

struct Loads {
    std::function<Point2(Point2)> body;
    std::vector<EdgeDirichlet> dirichlet;
    std::vector<EdgeNeumann> neumann_edges;
    // Traction on the trimmed part of the boundary, integrated with the
    // matching backend's interface quadrature.
    std::function<Point2(Point2)> trimmed_traction;
};

struct LinearSystem {
    BsplineSpace space;
    std::vector<Eigen::Triplet<double>> triplets; // stiffness, pre-constraint
    Eigen::VectorXd rhs;
    std::vector<std::optional<double>> fixed; // per dof, set by constraints
    std::vector<double> support_ratio;        // trimmed/full support measure per dof
    std::size_t n_quad_points = 0;

    Eigen::SparseMatrix<double> stiffness() const; // assembled from triplets
};

// Galerkin assembly of plane-strain elasticity over the trimmed domain.
// Dirichlet entries in `loads` are stored as constraints (via 1D L2 trace
// projection on the edge); they do not modify the matrix until solve().
LinearSystem assemble(const BsplineSpace& space, const InterfaceSpec& iface, const Material& m,
                      int q, const Loads& loads);

enum class BenchCase { PlateHole, SquarePlate };

InterfaceSpec benchmark_interface(BenchCase c, Backend backend, const PlateHoleCase& phc);
Loads benchmark_loads(BenchCase c, const Material& m, const PlateHoleCase& phc);

// Strong Dirichlet on mesh-aligned edges: the boundary trace is L2-projected
// onto the edge's 1D basis and the edge-row coefficients are constrained.
void apply_dirichlet(LinearSystem& sys, const std::vector<EdgeDirichlet>& bcs);
void apply_boundary_conditions(LinearSystem& sys, BenchCase c, const Material& m,
                               const PlateHoleCase& phc);

struct SolveResult {
    DisplacementField u;
    double cond_estimate = 0.0;
    int n_eliminated = 0; // dofs dropped by the tiny-support rule
};

// Direct sparse symmetric solve; dofs with trimmed support measure below
// 1e-10 of the full support measure are fixed to zero first.
SolveResult solve(const LinearSystem& sys);

double relative_l2_error(const BsplineSpace& space, const DisplacementField& u,
                         const std::function<Point2(Point2)>& exact, const InterfaceSpec& iface,
                         int q);

struct BenchRecord {
    std::string case_name;
    std::string backend;
    int p = 0;
    double h = 0.0;
    int n_dofs = 0;
    std::size_t n_quad_points = 0;
    double rel_l2_error = 0.0;
    double cond_estimate = 0.0;
};

BenchRecord run_benchmark(BenchCase c, Backend backend, int p, int n_cells, const Material& m,
                          const PlateHoleCase& phc);

// Header `case,backend,p,h,n_dofs,n_quad_points,rel_l2_error,cond_estimate`.
void write_benchmark_csv(std::ostream& os, const std::vector<BenchRecord>& records);

} // namespace cutcell
