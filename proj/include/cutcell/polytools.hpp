#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

// Polynomial in Bernstein basis on an interval [t0, t1].
struct Bernstein1D {
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> coeffs; // degree = coeffs.size() - 1

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double max_abs_coeff() const;
    // de Casteljau evaluation at global parameter t.
    double evaluate(double t) const;
    Bernstein1D derivative() const;
    // Raise the degree by one (same polynomial).
    Bernstein1D elevated() const;
};

Bernstein1D bernstein_mul(const Bernstein1D& a, const Bernstein1D& b);
Bernstein1D bernstein_add(const Bernstein1D& a, const Bernstein1D& b, double sa = 1.0,
                          double sb = 1.0);

// All real roots of b in [t0, t1], isolated by de Casteljau subdivision with
// sign-variation counts, then polished by bisection and Newton steps.
// Identically-zero input (relative threshold 1e-14) raises DegenerateInput.
std::vector<double> roots_in_interval(const Bernstein1D& b, double tol = 1e-12);

// True when every coefficient is below the identically-zero threshold
// (1e-14 relative to scale_ref; scale_ref defaults to the parent scale the
// caller tracks, e.g. the 2D polynomial's largest coefficient).
bool is_identically_zero(const Bernstein1D& b, double scale_ref);

// Tensor-product Bernstein polynomial on a cell.
// coeffs[i * (dy + 1) + j]: i indexes x, j indexes y.
struct Bernstein2D {
    Cell cell;
    int dx = 0;
    int dy = 0;
    std::vector<double> coeffs;

    double& at(int i, int j) { return coeffs[i * (dy + 1) + j]; }
    double at(int i, int j) const { return coeffs[i * (dy + 1) + j]; }
    double evaluate(Point2 p) const;
    // Partial derivative along an axis (degree drops by one on that axis).
    Bernstein2D derivative(Axis axis) const;
};

// Interpolate f at the (d+1)x(d+1) tensor grid of Chebyshev-Lobatto points on
// the cell and convert to Bernstein coefficients. Exact (to roundoff) when f
// is a polynomial of coordinate-degree <= d.
Bernstein2D to_bernstein(const std::function<double(Point2)>& f, const Cell& cell, int d);
Bernstein2D to_bernstein(const ImplicitConstraint& c, const Cell& cell, int d);
// Uses the constraint's own polynomial degree (exact conversion).
Bernstein2D to_bernstein(const ImplicitConstraint& c, const Cell& cell);

// Interpolate a univariate function at d+1 Chebyshev-Lobatto nodes on [a, b];
// exact (to roundoff) for polynomials of degree <= d.
Bernstein1D interpolate_bernstein_1d(const std::function<double(double)>& f, double a, double b,
                                     int d);

// Restriction of b to the line {axis = value}; exact, degree = free-axis degree.
Bernstein1D restrict_to_line(const Bernstein2D& b, Axis axis, double value);

// Min/max coefficient; by the convex-hull property the function values on the
// cell lie within this range.
std::pair<double, double> coefficient_range(const Bernstein2D& b);

} // namespace cutcell
