#pragma once

#include <optional>
#include <vector>

#include "cutcell/polytools.hpp"
#include "cutcell/quadrature.hpp"

namespace cutcell {

// Rational Bezier piece: homogeneous components (X, Y, W) as Bernstein
// polynomials sharing a global parameter interval. NURBS segments decompose
// exactly into such pieces per knot span.
struct RationalBezier {
    Bernstein1D X, Y, W;

    double a() const { return X.t0; }
    double b() const { return X.t1; }
    Point2 point(double t) const;
    Point2 deriv(double t) const;
    // Numerators of the derivative components, X'W - XW' (degree 2p-1).
    Bernstein1D deriv_numerator_x() const;
    Bernstein1D deriv_numerator_y() const;
};

RationalBezier bezier_from_span(const NurbsCurve& curve, double u0, double u1);

struct CurveCellIntersection {
    double xi = 0.0; // parameter on the segment's curve
    Point2 p;
    int edge = -1; // 0 bottom, 1 right, 2 top, 3 left
};

// All parameters where the segment crosses the cell's boundary lines, sorted;
// tangential touches reported once.
std::vector<CurveCellIntersection> intersect_segment_with_cell(const CurveSegment& seg,
                                                               const Cell& cell);

// Loop preprocessed for per-cell clipping: Bezier pieces split at knot spans
// and at axis-parallel-tangent parameters, so every piece is monotone in both
// coordinates.
class PreparedLoop {
public:
    struct Piece {
        int segment = 0; // index into the region's loop
        RationalBezier bez;
    };

    explicit PreparedLoop(const ParametricRegion& region);

    const ParametricRegion& region() const { return *region_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    double tol() const { return region_->tol_geo(); }

    int winding_number(Point2 p) const;
    bool contains(Point2 p) const { return winding_number(p) != 0; }
    // True when some part of the loop passes strictly through the cell interior.
    bool cuts_cell(const Cell& cell) const;

private:
    const ParametricRegion* region_;
    std::vector<Piece> pieces_;
};

// One side of a tile map: straight segment or an oriented piece of a loop curve.
struct TileSide {
    // Straight side A -> B when bez is absent.
    Point2 A, B;
    std::optional<RationalBezier> bez;
    double c = 0.0, d = 1.0; // parameter subrange on bez
    bool reversed = false;

    Point2 point(double u) const;  // u in [0, 1]
    Point2 deriv(double u) const;  // d/du
};

// Transfinite (Coons) patch from four boundary sides; degenerate (collapsed)
// sides are allowed, which is how fan tiles with an apex point are formed.
struct Tile {
    TileSide bottom, right, top, left; // bottom: c00->c10, right: c10->c11,
                                       // top: c01->c11, left: c00->c01
    Point2 c00, c10, c01, c11;

    Point2 map(double u, double v) const;
    double jacobian(double u, double v) const;
};

// Tiles covering cell ∩ interior(region); empty for an outside cell, a single
// rectangular tile for a fully inside cell.
std::vector<Tile> build_tiles(const PreparedLoop& loop, const Cell& cell);
std::vector<Tile> build_tiles(const ParametricRegion& region, const Cell& cell);

// q x q reference Gauss rule mapped through the tile.
QuadratureRule tile_quadrature(const Tile& tile, int q);

QuadratureRule cell_quadrature_parametric(const PreparedLoop& loop, const Cell& cell, int q);
QuadratureRule cell_quadrature_parametric(const ParametricRegion& region, const Cell& cell, int q);

// 1D rule (length weights) on the loop pieces clipped to the cell. Pieces
// running along a cell face are counted only for the cell on their interior
// side. Restrict to a subset of loop segments by passing their indices.
QuadratureRule interface_quadrature_parametric(const PreparedLoop& loop, const Cell& cell, int q,
                                               const std::vector<int>* segments = nullptr);
QuadratureRule interface_quadrature_parametric(const ParametricRegion& region, const Cell& cell,
                                               int q);

} // namespace cutcell
