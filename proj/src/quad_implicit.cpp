#include "cutcell/quad_implicit.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace cutcell {

namespace {

double mean_abs(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return v.empty() ? 0.0 : s / v.size();
}

Point2 make_point(Axis base, double b, double h) {
    return base == Axis::X ? Point2{b, h} : Point2{h, b};
}

// Base coordinates of points where the zero set has a tangent parallel to the
// height direction (df/dheight = 0 on f = 0), for primitive constraints.
std::vector<double> tangent_abscissae(const ImplicitConstraint& c, const Cell& cell, Axis base) {
    std::vector<double> out;
    if (const auto* circ = std::get_if<CircleConstraint>(&c.rep())) {
        const double bc = base == Axis::X ? circ->cx : circ->cy;
        const double btol = 1e-12 * cell.extent(base);
        // Keep abscissae whose tangent point may lie outside the cell's height
        // range: the height profile inside the cell still has its sqrt-type
        // singularity there, so nearby subinterval ends need the graded map.
        for (double t : {bc - circ->r, bc + circ->r})
            if (t > cell.lo(base) - btol && t < cell.hi(base) + btol)
                out.push_back(std::clamp(t, cell.lo(base), cell.hi(base)));
    }
    // Half-planes have none; general polynomials are served by face-crossing
    // breakpoints only.
    return out;
}

std::vector<Point2> zero_set_intersections(const ImplicitConstraint& c1,
                                           const ImplicitConstraint& c2) {
    std::vector<Point2> pts;
    const auto* h1 = std::get_if<HalfPlaneConstraint>(&c1.rep());
    const auto* h2 = std::get_if<HalfPlaneConstraint>(&c2.rep());
    const auto* k1 = std::get_if<CircleConstraint>(&c1.rep());
    const auto* k2 = std::get_if<CircleConstraint>(&c2.rep());
    if (h1 && h2) {
        const double det = h1->a * h2->b - h2->a * h1->b;
        if (std::abs(det) > 1e-14 * (std::abs(h1->a) + std::abs(h1->b)) *
                                (std::abs(h2->a) + std::abs(h2->b)))
            pts.push_back({(h1->c * h2->b - h2->c * h1->b) / det,
                           (h1->a * h2->c - h2->a * h1->c) / det});
    } else if ((h1 && k2) || (h2 && k1)) {
        const auto* h = h1 ? h1 : h2;
        const auto* k = h1 ? k2 : k1;
        // Signed distance from the circle center to the line a x + b y = c.
        const double nn = std::hypot(h->a, h->b);
        if (nn > 0.0) {
            const double d = (h->c - h->a * k->cx - h->b * k->cy) / nn;
            const double disc = k->r * k->r - d * d;
            if (disc >= 0.0) {
                const double ux = h->a / nn, uy = h->b / nn;
                const Point2 foot{k->cx + d * ux, k->cy + d * uy};
                const double s = std::sqrt(std::max(0.0, disc));
                pts.push_back({foot.x - s * uy, foot.y + s * ux});
                if (s > 0.0) pts.push_back({foot.x + s * uy, foot.y - s * ux});
            }
        }
    } else if (k1 && k2) {
        const double dx = k2->cx - k1->cx, dy = k2->cy - k1->cy;
        const double d = std::hypot(dx, dy);
        if (d > 0.0 && d <= k1->r + k2->r && d >= std::abs(k1->r - k2->r)) {
            const double a = (k1->r * k1->r - k2->r * k2->r + d * d) / (2.0 * d);
            const double h2v = k1->r * k1->r - a * a;
            const double h = std::sqrt(std::max(0.0, h2v));
            const Point2 foot{k1->cx + a * dx / d, k1->cy + a * dy / d};
            pts.push_back({foot.x - h * dy / d, foot.y + h * dx / d});
            if (h > 0.0) pts.push_back({foot.x + h * dy / d, foot.y - h * dx / d});
        }
    }
    return pts;
}

struct OnCell {
    const ImplicitConstraint* c;
    Bernstein2D bern;
    double scale;
    ConstraintStatus status;
};

Axis pick_height(const std::vector<OnCell>& infos) {
    const OnCell* first_active = nullptr;
    for (const auto& o : infos)
        if (o.status == ConstraintStatus::Straddles) {
            first_active = &o;
            break;
        }
    if (!first_active) first_active = &infos.front();
    const Bernstein2D gx = first_active->bern.derivative(Axis::X);
    const Bernstein2D gy = first_active->bern.derivative(Axis::Y);
    return mean_abs(gx.coeffs) > mean_abs(gy.coeffs) ? Axis::X : Axis::Y;
}

enum class Grade { None, Left, Right, Both };

// Map a reference abscissa s in [0,1] to [a,b] with the mapping derivative
// vanishing at graded ends (tangent abscissae, where the height profile has a
// sqrt-type kink).
void graded_map(Grade g, double a, double b, double s, double& t, double& jac) {
    const double len = b - a;
    switch (g) {
    case Grade::None:
        t = a + len * s;
        jac = len;
        break;
    case Grade::Left:
        t = a + len * s * s;
        jac = 2.0 * len * s;
        break;
    case Grade::Right:
        t = b - len * (1.0 - s) * (1.0 - s);
        jac = 2.0 * len * (1.0 - s);
        break;
    case Grade::Both:
        t = a + len * s * s * (3.0 - 2.0 * s);
        jac = 6.0 * len * s * (1.0 - s);
        break;
    }
}

} // namespace

ConstraintStatus constraint_status(const Bernstein2D& bern) {
    auto [mn, mx] = coefficient_range(bern);
    const double scale = std::max(std::abs(mn), std::abs(mx));
    const double eps = 1e-12 * std::max(scale, 1e-300);
    if (mn >= -eps && mx <= eps) return ConstraintStatus::Positive; // identically zero
    if (mn >= -eps) return ConstraintStatus::Positive;
    if (mx <= eps) return ConstraintStatus::Negative;
    return ConstraintStatus::Straddles;
}

ConstraintStatus constraint_status(const ImplicitConstraint& c, const Cell& cell) {
    return constraint_status(to_bernstein(c, cell));
}

QuadratureRule cell_quadrature_implicit(const ImplicitRegion& region, const Cell& cell, int q) {
    if (q < 1) fail(ErrorCode::DomainError, "cell_quadrature_implicit: q must be >= 1");
    std::vector<OnCell> infos;
    infos.reserve(region.constraints.size());
    bool any_negative = false, all_positive = true;
    for (const auto& c : region.constraints) {
        OnCell o;
        o.c = &c;
        o.bern = to_bernstein(c, cell);
        o.scale = 0.0;
        for (double v : o.bern.coeffs) o.scale = std::max(o.scale, std::abs(v));
        o.status = constraint_status(o.bern);
        any_negative |= o.status == ConstraintStatus::Negative;
        all_positive &= o.status == ConstraintStatus::Positive;
        infos.push_back(std::move(o));
    }
    if (any_negative) return {};
    if (all_positive) return tensor_rule(cell, q);

    const Axis height = pick_height(infos);
    const Axis base = other(height);
    const double blo = cell.lo(base), bhi = cell.hi(base);
    const double hlo = cell.lo(height), hhi = cell.hi(height);
    const double btol = 1e-12 * (bhi - blo);
    const double htol = 1e-12 * (hhi - hlo);

    // Base breakpoints: face-crossing roots, tangent abscissae, pairwise
    // zero-set intersections. Within each resulting subinterval the kept
    // height profile is smooth.
    std::vector<double> breaks{blo, bhi};
    std::vector<double> tangents;
    for (const auto& o : infos) {
        for (double hv : {hlo, hhi}) {
            Bernstein1D r = restrict_to_line(o.bern, height, hv);
            if (is_identically_zero(r, o.scale)) continue;
            for (double t : roots_in_interval(r))
                if (t > blo + btol && t < bhi - btol) breaks.push_back(t);
        }
        for (double t : tangent_abscissae(*o.c, cell, base)) {
            breaks.push_back(t);
            tangents.push_back(t);
        }
    }
    for (std::size_t i = 0; i < infos.size(); ++i)
        for (std::size_t j = i + 1; j < infos.size(); ++j)
            for (Point2 p : zero_set_intersections(*infos[i].c, *infos[j].c))
                if (cell.contains(p, btol + htol)) {
                    const double t = coord(p, base);
                    if (t > blo + btol && t < bhi - btol) breaks.push_back(t);
                }
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> bp;
    for (double t : breaks)
        if (bp.empty() || t - bp.back() > btol) bp.push_back(t);

    const GaussRule& g = gauss_legendre(q);
    QuadratureRule rule;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const double a = bp[k], b = bp[k + 1];
        // Grade ends that are at, or close to, a tangent abscissa: the height
        // profile has large derivatives there even when the tangent point
        // itself is clipped away by a face crossing.
        const double near = std::max(btol, 0.05 * (bhi - blo));
        auto is_tangent = [&](double v) {
            for (double t : tangents)
                if (std::abs(t - v) <= near) return true;
            return false;
        };
        Grade grade = Grade::None;
        if (is_tangent(a) && is_tangent(b)) grade = Grade::Both;
        else if (is_tangent(a)) grade = Grade::Left;
        else if (is_tangent(b)) grade = Grade::Right;

        for (int gi = 0; gi < q; ++gi) {
            double t, jac;
            graded_map(grade, a, b, g.x[gi], t, jac);
            const double wbase = g.w[gi] * jac;

            // Height-line decomposition.
            std::vector<std::optional<Bernstein1D>> lines(infos.size());
            std::vector<double> cuts{hlo, hhi};
            for (std::size_t ci = 0; ci < infos.size(); ++ci) {
                Bernstein1D r = restrict_to_line(infos[ci].bern, base, t);
                if (is_identically_zero(r, infos[ci].scale)) continue; // grazing: counts positive
                for (double root : roots_in_interval(r)) {
                    if (root < hlo + htol) root = hlo;
                    else if (root > hhi - htol) root = hhi;
                    cuts.push_back(root);
                }
                lines[ci] = std::move(r);
            }
            std::sort(cuts.begin(), cuts.end());
            std::vector<double> hv;
            for (double c : cuts)
                if (hv.empty() || c - hv.back() > htol) hv.push_back(c);

            for (std::size_t s = 0; s + 1 < hv.size(); ++s) {
                const double c0 = hv[s], c1 = hv[s + 1];
                const double mid = 0.5 * (c0 + c1);
                bool keep = true;
                for (std::size_t ci = 0; ci < infos.size() && keep; ++ci)
                    if (lines[ci] && lines[ci]->evaluate(mid) <= 0.0) keep = false;
                if (!keep) continue;
                for (int gj = 0; gj < q; ++gj) {
                    const double h = c0 + g.x[gj] * (c1 - c0);
                    rule.nodes.push_back({make_point(base, t, h), wbase * g.w[gj] * (c1 - c0)});
                }
            }
        }
    }
    return rule;
}

// ---------------------------------------------------------------------------

namespace {

void interface_rec(const ImplicitConstraint& c, const Cell& cell, int q, int depth,
                   QuadratureRule& out) {
    const Bernstein2D bern = to_bernstein(c, cell);
    auto [mn, mx] = coefficient_range(bern);
    double scale = std::max(std::abs(mn), std::abs(mx));
    const double eps = 1e-12 * std::max(scale, 1e-300);
    if (mn > eps || mx < -eps) return; // zero set does not touch this subcell

    auto subdivide = [&](const char* why) {
        if (depth >= 8)
            fail(ErrorCode::NotAGraph,
                 std::string("interface_quadrature_implicit: ") + why +
                     " after 8 subdivision levels");
        const double xm = 0.5 * (cell.x0 + cell.x1), ym = 0.5 * (cell.y0 + cell.y1);
        for (int k = 0; k < 4; ++k) {
            Cell sub = cell;
            (k % 2 == 0) ? sub.x1 = xm : sub.x0 = xm;
            (k / 2 == 0) ? sub.y1 = ym : sub.y0 = ym;
            interface_rec(c, sub, q, depth + 1, out);
        }
    };

    const Bernstein2D gx = bern.derivative(Axis::X);
    const Bernstein2D gy = bern.derivative(Axis::Y);
    const Axis height = mean_abs(gx.coeffs) > mean_abs(gy.coeffs) ? Axis::X : Axis::Y;
    const Axis base = other(height);
    const double blo = cell.lo(base), bhi = cell.hi(base);
    const double hlo = cell.lo(height), hhi = cell.hi(height);
    const double btol = 1e-12 * (bhi - blo);

    // Base span from boundary crossings of the zero set.
    std::vector<double> bc;
    bool grazing_face = false;
    for (double hvv : {hlo, hhi}) {
        Bernstein1D r = restrict_to_line(bern, height, hvv);
        if (is_identically_zero(r, scale)) {
            grazing_face = true; // the whole face is interface
            continue;
        }
        for (double t : roots_in_interval(r)) bc.push_back(t);
    }
    for (double bv : {blo, bhi}) {
        Bernstein1D r = restrict_to_line(bern, base, bv);
        if (is_identically_zero(r, scale)) {
            subdivide("zero set contains a height line");
            return;
        }
        if (!roots_in_interval(r).empty()) bc.push_back(bv);
    }
    double a, b;
    if (grazing_face) {
        a = blo;
        b = bhi;
    } else if (bc.empty()) {
        subdivide("could not locate boundary crossings"); // closed component inside
        return;
    } else {
        a = *std::min_element(bc.begin(), bc.end());
        b = *std::max_element(bc.begin(), bc.end());
    }
    if (b - a <= btol) return; // tangential touch, zero length

    const GaussRule& g = gauss_legendre(q);
    QuadratureRule local;
    for (int gi = 0; gi < q; ++gi) {
        const double t = a + g.x[gi] * (b - a);
        Bernstein1D r = restrict_to_line(bern, base, t);
        if (is_identically_zero(r, scale)) {
            subdivide("degenerate height line");
            return;
        }
        std::vector<double> roots = roots_in_interval(r);
        if (roots.size() != 1) {
            subdivide("height line is not single-valued");
            return;
        }
        const Point2 p = make_point(base, t, roots[0]);
        const Point2 grad = c.gradient(p);
        const double fh = height == Axis::X ? grad.x : grad.y;
        const double fb = height == Axis::X ? grad.y : grad.x;
        if (std::abs(fh) < 1e-14 * norm(grad) || norm(grad) == 0.0) {
            subdivide("vertical tangent at quadrature node");
            return;
        }
        const double slope = -fb / fh;
        if (std::abs(slope) > 2.5) {
            // Keep the arclength factor well resolved by the base Gauss rule.
            subdivide("graph slope too steep");
            return;
        }
        local.nodes.push_back({p, g.w[gi] * (b - a) * std::sqrt(1.0 + slope * slope)});
    }
    out.append(local);
}

} // namespace

QuadratureRule interface_quadrature_implicit(const ImplicitRegion& region, const Cell& cell,
                                             int q) {
    if (q < 1) fail(ErrorCode::DomainError, "interface_quadrature_implicit: q must be >= 1");
    const ImplicitConstraint* crossing = nullptr;
    for (const auto& c : region.constraints) {
        const Bernstein2D bern = to_bernstein(c, cell);
        auto [mn, mx] = coefficient_range(bern);
        const double eps = 1e-12 * std::max(std::max(std::abs(mn), std::abs(mx)), 1e-300);
        if (mn <= eps && mx >= -eps) {
            if (crossing)
                fail(ErrorCode::NotAGraph,
                     "interface_quadrature_implicit: more than one constraint crosses the cell");
            crossing = &c;
        }
    }
    if (!crossing) return {};
    QuadratureRule out;
    interface_rec(*crossing, cell, q, 0, out);
    return out;
}

} // namespace cutcell
