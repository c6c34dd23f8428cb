#pragma once

#include "cutcell/polytools.hpp"
#include "cutcell/quadrature.hpp"

namespace cutcell {

enum class ConstraintStatus { Positive, Negative, Straddles };

// Certified sign of a constraint on a cell from its Bernstein coefficient
// range. A zero set that at most grazes the cell boundary counts as Positive
// (resp. Negative); an identically-zero constraint counts as Positive (f >= 0
// keeps the cell).
ConstraintStatus constraint_status(const Bernstein2D& bern);
ConstraintStatus constraint_status(const ImplicitConstraint& c, const Cell& cell);

// Quadrature on cell ∩ {f_k > 0 for all k}. Dimension reduction: Gauss
// abscissae along the base direction (split at face-crossing, tangent, and
// pairwise-intersection breakpoints), 1D interval decomposition with certified
// Bernstein roots along the height direction. Base subintervals ending at a
// tangent abscissa use a graded substitution so sqrt-type height profiles
// still integrate at high order.
QuadratureRule cell_quadrature_implicit(const ImplicitRegion& region, const Cell& cell, int q);

// 1D rule on the zero set of the single crossing constraint inside the cell
// (weights in length units). The zero set must be a graph over the locally
// chosen base direction; cells violating that are subdivided internally, up
// to 8 levels, after which NotAGraph is raised.
QuadratureRule interface_quadrature_implicit(const ImplicitRegion& region, const Cell& cell,
                                             int q);

} // namespace cutcell
