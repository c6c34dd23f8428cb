#pragma once

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "cutcell/errors.hpp"

namespace cutcell {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

// Axis tag used for slicing, height-direction selection, etc.
enum class Axis { X = 0, Y = 1 };
inline Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }
inline double coord(Point2 p, Axis a) { return a == Axis::X ? p.x : p.y; }

struct Cell {
    int i = 0;
    int j = 0;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    double lo(Axis a) const { return a == Axis::X ? x0 : y0; }
    double hi(Axis a) const { return a == Axis::X ? x1 : y1; }
    double extent(Axis a) const { return hi(a) - lo(a); }
    Point2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains(Point2 p, double tol = 0.0) const {
        return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
    }
    bool strictly_contains(Point2 p, double tol) const {
        return p.x > x0 + tol && p.x < x1 - tol && p.y > y0 + tol && p.y < y1 - tol;
    }
};

// Axis-aligned tensor grid over a rectangular domain.
struct BackgroundMesh {
    Point2 origin{0.0, 0.0};
    double width = 1.0;
    double height = 1.0;
    int nx = 1;
    int ny = 1;

    BackgroundMesh() = default;
    BackgroundMesh(Point2 o, double w, double h, int nx_, int ny_)
        : origin(o), width(w), height(h), nx(nx_), ny(ny_) {
        if (nx < 1 || ny < 1 || width <= 0.0 || height <= 0.0)
            fail(ErrorCode::InvalidArgument, "BackgroundMesh: invalid extents or cell counts");
    }

    double hx() const { return width / nx; }
    double hy() const { return height / ny; }
    // Geometric tolerance tied to the domain scale.
    double tol_geo() const { return 1e-10 * std::max(width, height); }

    Cell cell(int i, int j) const {
        if (i < 0 || i >= nx || j < 0 || j >= ny)
            fail(ErrorCode::InvalidArgument, "BackgroundMesh::cell: index out of range");
        Cell c;
        c.i = i;
        c.j = j;
        c.x0 = origin.x + i * hx();
        c.x1 = (i + 1 == nx) ? origin.x + width : origin.x + (i + 1) * hx();
        c.y0 = origin.y + j * hy();
        c.y1 = (j + 1 == ny) ? origin.y + height : origin.y + (j + 1) * hy();
        return c;
    }
};

// ---------------------------------------------------------------------------
// NURBS curves

class NurbsCurve {
public:
    NurbsCurve(int degree, std::vector<double> knots, std::vector<Point2> control_points,
               std::vector<double> weights);

    int degree() const { return degree_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Point2>& control_points() const { return cps_; }
    const std::vector<double>& weights() const { return weights_; }
    double knot_front() const { return knots_.front(); }
    double knot_back() const { return knots_.back(); }

    Point2 evaluate(double xi) const;
    Point2 derivative(double xi) const;
    // Homogeneous components (w*x, w*y, w); polynomial on each knot span.
    void homogeneous(double xi, double& wx, double& wy, double& w) const;

    // Knot-span index containing xi (clamped to the last nonempty span).
    int find_span(double xi) const;
    // Distinct breakpoints of the knot vector within [a, b].
    std::vector<double> span_breaks(double a, double b) const;

private:
    // B-spline basis values (and first derivatives) of the p+1 functions active on a span.
    void basis(int span, double xi, double* N, double* dN) const;

    int degree_;
    std::vector<double> knots_;
    std::vector<Point2> cps_;
    std::vector<double> weights_;

    friend struct RationalBezier;
};

struct CurveSegment {
    const NurbsCurve* curve = nullptr;
    double a = 0.0;
    double b = 1.0;

    Point2 start() const { return curve->evaluate(a); }
    Point2 end() const { return curve->evaluate(b); }
};

// Convenience constructors for common boundary segments.
NurbsCurve make_line_curve(Point2 a, Point2 b);
// Circular arc from angle th0 to th1 (|th1-th0| <= pi/2), exact rational quadratic.
NurbsCurve make_arc_curve(Point2 center, double radius, double th0, double th1);
// Full circle as four rational quadratic quarter arcs (9 control points).
NurbsCurve make_circle_curve(Point2 center, double radius);

// ---------------------------------------------------------------------------
// Implicit constraints; convention: f > 0 is inside the retained region.

struct CircleConstraint {
    double cx = 0.0, cy = 0.0, r = 1.0;
    double sign = 1.0; // +1: inside the disc, -1: outside
};

struct HalfPlaneConstraint {
    // f = sign * (c - a*x - b*y)
    double a = 0.0, b = 0.0, c = 0.0;
    double sign = 1.0;
};

struct PolyConstraint {
    // Monomial coefficients, coeffs[i*(degree+1)+j] multiplies x^i y^j.
    int degree = 0;
    std::vector<double> coeffs;
};

class ImplicitConstraint {
public:
    using Rep = std::variant<CircleConstraint, HalfPlaneConstraint, PolyConstraint>;

    ImplicitConstraint(CircleConstraint c) : rep_(c) {}
    ImplicitConstraint(HalfPlaneConstraint h) : rep_(h) {}
    ImplicitConstraint(PolyConstraint p);

    double value(Point2 p) const;
    Point2 gradient(Point2 p) const;
    // Coordinate degree of the (polynomial) constraint; every supported
    // representation is polynomial, so Bernstein conversion is exact.
    int poly_degree() const;

    const Rep& rep() const { return rep_; }

private:
    Rep rep_;
};

struct ImplicitRegion {
    std::vector<ImplicitConstraint> constraints;

    ImplicitRegion() = default;
    explicit ImplicitRegion(std::vector<ImplicitConstraint> cs) : constraints(std::move(cs)) {
        if (constraints.empty())
            fail(ErrorCode::InvalidArgument, "ImplicitRegion: constraint list must be nonempty");
    }

    bool contains(Point2 p) const {
        for (const auto& c : constraints)
            if (c.value(p) <= 0.0) return false;
        return true;
    }
};

// Half-plane with interior on the left of the directed edge a -> b.
ImplicitConstraint halfplane_left_of(Point2 a, Point2 b);

// ---------------------------------------------------------------------------
// Parametric region: single closed oriented loop of NURBS segments.

class ParametricRegion {
public:
    // Takes ownership of the curves; segments reference them by index.
    ParametricRegion(std::vector<NurbsCurve> curves, double tol_geo = 1e-10);

    const std::vector<NurbsCurve>& curves() const { return curves_; }
    std::size_t segment_count() const { return curves_.size(); }
    CurveSegment segment(std::size_t k) const {
        const NurbsCurve& c = curves_[k];
        return {&c, c.knot_front(), c.knot_back()};
    }
    bool reversed() const { return reversed_; }
    double tol_geo() const { return tol_; }

private:
    std::vector<NurbsCurve> curves_;
    bool reversed_ = false;
    double tol_;
};

struct InterfaceSpec {
    std::variant<ImplicitRegion, ParametricRegion> region;

    bool is_implicit() const { return std::holds_alternative<ImplicitRegion>(region); }
    const ImplicitRegion& implicit() const { return std::get<ImplicitRegion>(region); }
    const ParametricRegion& parametric() const { return std::get<ParametricRegion>(region); }
};

} // namespace cutcell
