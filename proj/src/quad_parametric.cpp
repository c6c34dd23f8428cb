#include "cutcell/quad_parametric.hpp"

#include <algorithm>
#include <cmath>

namespace cutcell {

// ---------------------------------------------------------------------------
// RationalBezier

Point2 RationalBezier::point(double t) const {
    const double w = W.evaluate(t);
    return {X.evaluate(t) / w, Y.evaluate(t) / w};
}

Point2 RationalBezier::deriv(double t) const {
    const double w = W.evaluate(t);
    const double x = X.evaluate(t), y = Y.evaluate(t);
    const double dw = W.derivative().evaluate(t);
    const double dx = X.derivative().evaluate(t), dy = Y.derivative().evaluate(t);
    return {(dx - dw * x / w) / w, (dy - dw * y / w) / w};
}

Bernstein1D RationalBezier::deriv_numerator_x() const {
    return bernstein_add(bernstein_mul(X.derivative(), W), bernstein_mul(X, W.derivative()), 1.0,
                         -1.0);
}

Bernstein1D RationalBezier::deriv_numerator_y() const {
    return bernstein_add(bernstein_mul(Y.derivative(), W), bernstein_mul(Y, W.derivative()), 1.0,
                         -1.0);
}

RationalBezier bezier_from_span(const NurbsCurve& curve, double u0, double u1) {
    const int p = curve.degree();
    RationalBezier rb;
    rb.X = interpolate_bernstein_1d(
        [&](double t) {
            double a, b, c;
            curve.homogeneous(t, a, b, c);
            return a;
        },
        u0, u1, p);
    rb.Y = interpolate_bernstein_1d(
        [&](double t) {
            double a, b, c;
            curve.homogeneous(t, a, b, c);
            return b;
        },
        u0, u1, p);
    rb.W = interpolate_bernstein_1d(
        [&](double t) {
            double a, b, c;
            curve.homogeneous(t, a, b, c);
            return c;
        },
        u0, u1, p);
    return rb;
}

// ---------------------------------------------------------------------------
// Segment/cell intersection

namespace {

// Roots of coordinate(t) = bound on a Bezier piece.
std::vector<double> coordinate_hits(const RationalBezier& bez, Axis axis, double bound) {
    const Bernstein1D& C = axis == Axis::X ? bez.X : bez.Y;
    Bernstein1D f = bernstein_add(C, bez.W, 1.0, -bound);
    const double scale = std::max(C.max_abs_coeff(), std::abs(bound) * bez.W.max_abs_coeff());
    if (is_identically_zero(f, std::max(scale, 1.0))) return {}; // lies on the line
    return roots_in_interval(f);
}

} // namespace

std::vector<CurveCellIntersection> intersect_segment_with_cell(const CurveSegment& seg,
                                                               const Cell& cell) {
    if (!seg.curve) fail(ErrorCode::InvalidArgument, "intersect_segment_with_cell: null curve");
    const double tol = 1e-10 * std::max(cell.width(), cell.height());
    std::vector<CurveCellIntersection> out;
    const std::vector<double> breaks = seg.curve->span_breaks(seg.a, seg.b);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        RationalBezier bez = bezier_from_span(*seg.curve, breaks[k], breaks[k + 1]);
        const struct {
            Axis axis;
            double bound;
            int edge;
        } lines[4] = {{Axis::Y, cell.y0, 0}, {Axis::X, cell.x1, 1}, {Axis::Y, cell.y1, 2},
                      {Axis::X, cell.x0, 3}};
        for (const auto& ln : lines) {
            for (double t : coordinate_hits(bez, ln.axis, ln.bound)) {
                const Point2 p = bez.point(t);
                // Keep hits on the actual edge, not the extended boundary line.
                const double o = coord(p, other(ln.axis));
                const double lo = cell.lo(other(ln.axis)), hi = cell.hi(other(ln.axis));
                if (o < lo - tol || o > hi + tol) continue;
                out.push_back({t, p, ln.edge});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.xi < b.xi; });
    const double ptol = 1e-12 * (seg.b - seg.a);
    std::vector<CurveCellIntersection> uniq;
    for (const auto& h : out)
        if (uniq.empty() || h.xi - uniq.back().xi > ptol) uniq.push_back(h);
    return uniq;
}

// ---------------------------------------------------------------------------
// PreparedLoop

PreparedLoop::PreparedLoop(const ParametricRegion& region) : region_(&region) {
    for (std::size_t k = 0; k < region.segment_count(); ++k) {
        const NurbsCurve& c = region.curves()[k];
        const std::vector<double> breaks = c.span_breaks(c.knot_front(), c.knot_back());
        for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
            RationalBezier bez = bezier_from_span(c, breaks[s], breaks[s + 1]);
            // Split at axis-parallel tangents so each piece is monotone in x and y.
            std::vector<double> cuts{bez.a(), bez.b()};
            for (const Bernstein1D& num : {bez.deriv_numerator_x(), bez.deriv_numerator_y()}) {
                if (is_identically_zero(num, std::max(num.max_abs_coeff(), 1e-30)) ||
                    num.max_abs_coeff() == 0.0)
                    continue;
                for (double t : roots_in_interval(num))
                    if (t > bez.a() && t < bez.b()) cuts.push_back(t);
            }
            std::sort(cuts.begin(), cuts.end());
            const double ptol = 1e-12 * (bez.b() - bez.a());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                if (cuts[i + 1] - cuts[i] <= ptol) continue;
                Piece piece;
                piece.segment = static_cast<int>(k);
                piece.bez.X = interpolate_bernstein_1d(
                    [&](double t) { return bez.X.evaluate(t); }, cuts[i], cuts[i + 1],
                    bez.X.degree());
                piece.bez.Y = interpolate_bernstein_1d(
                    [&](double t) { return bez.Y.evaluate(t); }, cuts[i], cuts[i + 1],
                    bez.Y.degree());
                piece.bez.W = interpolate_bernstein_1d(
                    [&](double t) { return bez.W.evaluate(t); }, cuts[i], cuts[i + 1],
                    bez.W.degree());
                pieces_.push_back(std::move(piece));
            }
        }
    }
}

int PreparedLoop::winding_number(Point2 p) const {
    double total = 0.0;
    for (const auto& piece : pieces_) {
        const int ns = 32;
        double prev = 0.0;
        for (int k = 0; k <= ns; ++k) {
            const double t =
                piece.bez.a() + (piece.bez.b() - piece.bez.a()) * static_cast<double>(k) / ns;
            const Point2 d = piece.bez.point(t) - p;
            const double ang = std::atan2(d.y, d.x);
            if (k > 0) {
                double inc = ang - prev;
                while (inc > M_PI) inc -= 2.0 * M_PI;
                while (inc < -M_PI) inc += 2.0 * M_PI;
                total += inc;
            }
            prev = ang;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

namespace {

struct SubPiece {
    const RationalBezier* bez = nullptr;
    double c = 0.0, d = 1.0;

    Point2 start() const { return bez->point(c); }
    Point2 end() const { return bez->point(d); }
    Point2 mid() const { return bez->point(0.5 * (c + d)); }
};

// Interior sub-pieces of the loop within the cell (loop order), plus flags.
struct ClippedLoop {
    std::vector<SubPiece> interior;
    std::vector<int> interior_piece_index; // index into PreparedLoop::pieces()
    bool any_coincident = false;
};

bool on_cell_boundary(const Cell& cell, Point2 p, double tol) {
    if (!cell.contains(p, tol)) return false;
    return std::abs(p.x - cell.x0) <= tol || std::abs(p.x - cell.x1) <= tol ||
           std::abs(p.y - cell.y0) <= tol || std::abs(p.y - cell.y1) <= tol;
}

ClippedLoop clip_loop(const PreparedLoop& loop, const Cell& cell) {
    const double tol = 1e-10 * std::max(cell.width(), cell.height());
    ClippedLoop out;
    for (std::size_t pi = 0; pi < loop.pieces().size(); ++pi) {
        const RationalBezier& bez = loop.pieces()[pi].bez;
        std::vector<double> cuts{bez.a(), bez.b()};
        for (const auto& [axis, bound] :
             {std::pair{Axis::X, cell.x0}, {Axis::X, cell.x1}, {Axis::Y, cell.y0},
              {Axis::Y, cell.y1}}) {
            for (double t : coordinate_hits(bez, axis, bound))
                if (t > bez.a() && t < bez.b()) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        const double ptol = 1e-12 * (bez.b() - bez.a());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= ptol) continue;
            SubPiece sp{&bez, cuts[i], cuts[i + 1]};
            const Point2 pm = sp.mid();
            if (cell.strictly_contains(pm, tol)) {
                out.interior.push_back(sp);
                out.interior_piece_index.push_back(static_cast<int>(pi));
            } else if (on_cell_boundary(cell, pm, tol)) {
                out.any_coincident = true;
            }
        }
    }
    return out;
}

// Perimeter arclength parameter of a boundary point, CCW from (x0, y0).
double perimeter_param(const Cell& cell, Point2 p, double tol) {
    const double W = cell.width(), H = cell.height();
    if (std::abs(p.y - cell.y0) <= tol && p.x <= cell.x1 + tol)
        return std::clamp(p.x - cell.x0, 0.0, W);
    if (std::abs(p.x - cell.x1) <= tol) return W + std::clamp(p.y - cell.y0, 0.0, H);
    if (std::abs(p.y - cell.y1) <= tol) return W + H + std::clamp(cell.x1 - p.x, 0.0, W);
    if (std::abs(p.x - cell.x0) <= tol) return 2.0 * W + H + std::clamp(cell.y1 - p.y, 0.0, H);
    fail(ErrorCode::TilingFailure, "build_tiles: chain endpoint not on the cell boundary");
}

Point2 perimeter_point(const Cell& cell, double s) {
    const double W = cell.width(), H = cell.height();
    if (s <= W) return {cell.x0 + s, cell.y0};
    if (s <= W + H) return {cell.x1, cell.y0 + (s - W)};
    if (s <= 2.0 * W + H) return {cell.x1 - (s - W - H), cell.y1};
    return {cell.x0, cell.y1 - (s - 2.0 * W - H)};
}

struct Chain {
    std::vector<SubPiece> pieces;
    double s_entry = 0.0, s_exit = 0.0;
    bool closed = false;
    bool used = false;
};

struct BoundaryElement {
    bool curved = false;
    SubPiece sp;   // when curved
    Point2 A, B;   // endpoints (straight side when !curved)
};

std::vector<Chain> build_chains(const ClippedLoop& clip, const Cell& cell) {
    const double tol = 1e-9 * std::max(cell.width(), cell.height());
    const std::size_t n = clip.interior.size();
    std::vector<Chain> chains;
    if (n == 0) return chains;
    // Junction i joins interior piece i to i+1 (cyclic) when the pieces meet
    // at a point strictly inside the cell.
    std::vector<bool> joined(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const Point2 e = clip.interior[i].end();
        const Point2 s = clip.interior[j].start();
        joined[i] = dist(e, s) <= tol && cell.strictly_contains(e, tol);
    }
    std::vector<bool> visited(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        // Rewind to the chain head.
        std::size_t head = start;
        std::size_t guard = 0;
        while (joined[(head + n - 1) % n] && guard++ < n) head = (head + n - 1) % n;
        Chain ch;
        std::size_t k = head;
        while (true) {
            visited[k] = true;
            ch.pieces.push_back(clip.interior[k]);
            if (!joined[k]) break;
            k = (k + 1) % n;
            if (k == head) { // the whole loop is inside the cell
                ch.closed = true;
                break;
            }
        }
        if (!ch.closed) {
            ch.s_entry = perimeter_param(cell, ch.pieces.front().start(), tol);
            ch.s_exit = perimeter_param(cell, ch.pieces.back().end(), tol);
        }
        chains.push_back(std::move(ch));
        if (chains.back().closed) break;
    }
    return chains;
}

// Walk the boundary of each connected component of cell ∩ region.
std::vector<std::vector<BoundaryElement>> walk_components(std::vector<Chain>& chains,
                                                          const Cell& cell) {
    const double per = 2.0 * (cell.width() + cell.height());
    const double tol = 1e-9 * std::max(cell.width(), cell.height());
    std::vector<std::vector<BoundaryElement>> components;
    for (std::size_t c0 = 0; c0 < chains.size(); ++c0) {
        if (chains[c0].used) continue;
        std::vector<BoundaryElement> elems;
        std::size_t cur = c0;
        while (true) {
            Chain& ch = chains[cur];
            ch.used = true;
            for (const auto& sp : ch.pieces) {
                BoundaryElement e;
                e.curved = true;
                e.sp = sp;
                e.A = sp.start();
                e.B = sp.end();
                elems.push_back(e);
            }
            if (ch.closed) break;
            // Continue along the cell perimeter (CCW) to the next chain entry.
            double best = per + 1.0;
            std::size_t next = chains.size();
            for (std::size_t k = 0; k < chains.size(); ++k) {
                if (chains[k].closed) continue;
                double dlt = chains[k].s_entry - ch.s_exit;
                while (dlt < -tol) dlt += per;
                if (dlt < best && (!chains[k].used || k == c0)) {
                    best = dlt;
                    next = k;
                }
            }
            if (next == chains.size())
                fail(ErrorCode::TilingFailure, "build_tiles: loop does not close within the cell");
            // Straight perimeter elements, split at the corners passed.
            double s0 = ch.s_exit;
            double s1 = s0 + best;
            Point2 prev = perimeter_point(cell, std::fmod(s0, per));
            const double corners[4] = {cell.width(), cell.width() + cell.height(),
                                       2.0 * cell.width() + cell.height(), per};
            double s = s0;
            while (s1 - s > tol) {
                double step = s1;
                for (double c : corners) {
                    double cc = c;
                    while (cc <= s + tol) cc += per;
                    step = std::min(step, cc);
                }
                step = std::min(step, s1);
                const Point2 q = perimeter_point(cell, std::fmod(step, per));
                if (dist(prev, q) > tol) {
                    BoundaryElement e;
                    e.curved = false;
                    e.A = prev;
                    e.B = q;
                    elems.push_back(e);
                }
                prev = q;
                s = step;
            }
            if (next == c0) break;
            cur = next;
        }
        if (!elems.empty()) components.push_back(std::move(elems));
    }
    return components;
}

TileSide straight_side(Point2 a, Point2 b) {
    TileSide s;
    s.A = a;
    s.B = b;
    return s;
}

TileSide curved_side(const SubPiece& sp) {
    TileSide s;
    s.bez = *sp.bez;
    s.c = sp.c;
    s.d = sp.d;
    s.A = sp.start();
    s.B = sp.end();
    return s;
}

Tile fan_tile(const BoundaryElement& e, Point2 apex) {
    Tile t;
    t.bottom = e.curved ? curved_side(e.sp) : straight_side(e.A, e.B);
    t.c00 = e.A;
    t.c10 = e.B;
    t.c01 = apex;
    t.c11 = apex;
    t.left = straight_side(e.A, apex);
    t.right = straight_side(e.B, apex);
    t.top = straight_side(apex, apex);
    return t;
}

// Signed area swept by the fan patch over an element (0.5 ∫ cross(C', K - C)).
double fan_area(const BoundaryElement& e, Point2 apex, int nsample = 16) {
    if (!e.curved) return 0.5 * cross(e.B - e.A, apex - e.A);
    const GaussRule& g = gauss_legendre(nsample);
    double acc = 0.0;
    const double len = e.sp.d - e.sp.c;
    for (int i = 0; i < nsample; ++i) {
        const double t = e.sp.c + g.x[i] * len;
        acc += g.w[i] * len * cross(e.sp.bez->deriv(t), apex - e.sp.bez->point(t));
    }
    return 0.5 * acc;
}

// Worst normalized signed distance from the apex to the tangent lines of the
// boundary elements. Curved elements are sampled at Chebyshev-clustered
// parameters so sign flips confined to a narrow end zone are not missed;
// straight elements report separately because an apex on a straight edge's
// line (zero margin) is legitimate and yields a dropped zero-area tile.
struct KernelMargin {
    double curved = 1.0;
    double straight = 1.0;
};

KernelMargin kernel_margin(const std::vector<BoundaryElement>& elems, Point2 apex,
                           const Cell& cell) {
    const double diag = std::hypot(cell.width(), cell.height());
    KernelMargin m;
    for (const auto& e : elems) {
        if (!e.curved) {
            const double ab = dist(e.A, e.B);
            if (ab > 0.0)
                m.straight = std::min(m.straight, cross(e.B - e.A, apex - e.A) / (ab * diag));
            continue;
        }
        const int ns = 32;
        const double len = e.sp.d - e.sp.c;
        const double sgn = len < 0.0 ? -1.0 : 1.0;
        for (int i = 1; i < ns; ++i) {
            const double s = 0.5 - 0.5 * std::cos(M_PI * i / ns);
            const double t = e.sp.c + len * s;
            const Point2 d = e.sp.bez->deriv(t);
            const double dn = norm(d);
            if (dn == 0.0) continue;
            m.curved = std::min(m.curved,
                                sgn * cross(d, apex - e.sp.bez->point(t)) / (dn * diag));
        }
    }
    return m;
}

} // namespace

bool PreparedLoop::cuts_cell(const Cell& cell) const {
    return !clip_loop(*this, cell).interior.empty();
}

// ---------------------------------------------------------------------------
// Tiles

Point2 TileSide::point(double u) const {
    const double t = reversed ? 1.0 - u : u;
    if (!bez) return A + t * (B - A);
    return bez->point(c + t * (d - c));
}

Point2 TileSide::deriv(double u) const {
    const double sgn = reversed ? -1.0 : 1.0;
    if (!bez) return sgn * (B - A);
    const double t = reversed ? 1.0 - u : u;
    return (sgn * (d - c)) * bez->deriv(c + t * (d - c));
}

Point2 Tile::map(double u, double v) const {
    const Point2 B = bottom.point(u), T = top.point(u), L = left.point(v), R = right.point(v);
    const Point2 blend = (1.0 - u) * (1.0 - v) * c00 + u * (1.0 - v) * c10 +
                         (1.0 - u) * v * c01 + u * v * c11;
    return (1.0 - v) * B + v * T + (1.0 - u) * L + u * R - blend;
}

double Tile::jacobian(double u, double v) const {
    const Point2 Bp = bottom.deriv(u), Tp = top.deriv(u);
    const Point2 L = left.point(v), R = right.point(v);
    const Point2 Lp = left.deriv(v), Rp = right.deriv(v);
    const Point2 B = bottom.point(u), T = top.point(u);
    Point2 Su = (1.0 - v) * Bp + v * Tp + (-1.0) * L + R -
                ((1.0 - v) * (c10 - c00) + v * (c11 - c01));
    Point2 Sv = (-1.0) * B + T + (1.0 - u) * Lp + u * Rp -
                ((1.0 - u) * (c01 - c00) + u * (c11 - c10));
    return cross(Su, Sv);
}

std::vector<Tile> build_tiles(const PreparedLoop& loop, const Cell& cell) {
    ClippedLoop clip = clip_loop(loop, cell);
    std::vector<Tile> tiles;
    if (clip.interior.empty()) {
        if (loop.contains(cell.center())) {
            Tile t;
            t.c00 = {cell.x0, cell.y0};
            t.c10 = {cell.x1, cell.y0};
            t.c01 = {cell.x0, cell.y1};
            t.c11 = {cell.x1, cell.y1};
            t.bottom = straight_side(t.c00, t.c10);
            t.right = straight_side(t.c10, t.c11);
            t.top = straight_side(t.c01, t.c11);
            t.left = straight_side(t.c00, t.c01);
            tiles.push_back(t);
        }
        return tiles;
    }

    std::vector<Chain> chains = build_chains(clip, cell);
    std::vector<std::vector<BoundaryElement>> components = walk_components(chains, cell);

    for (const auto& elems : components) {
        // Kernel candidates: boundary vertices at cell corners first (fan
        // tiles adjacent to the apex then collapse to nothing), then the
        // vertex centroid, then the cell center.
        std::vector<Point2> candidates;
        const double ctol = 1e-9 * std::max(cell.width(), cell.height());
        for (const auto& e : elems) {
            for (Point2 corner : {Point2{cell.x0, cell.y0}, Point2{cell.x1, cell.y0},
                                  Point2{cell.x1, cell.y1}, Point2{cell.x0, cell.y1}}) {
                if (dist(e.A, corner) <= ctol) candidates.push_back(corner);
            }
        }
        Point2 centroid{0.0, 0.0};
        for (const auto& e : elems) centroid = centroid + e.A;
        candidates.push_back((1.0 / static_cast<double>(elems.size())) * centroid);
        candidates.push_back(cell.center());

        const Point2* apex = nullptr;
        // First pass insists on a strictly positive margin against the curved
        // elements so the fan Jacobians stay positive at any quadrature order;
        // the lenient pass keeps grazing apexes on straight edges usable.
        for (const auto& k : candidates) {
            const KernelMargin m = kernel_margin(elems, k, cell);
            if (m.curved >= 1e-7 && m.straight >= -1e-9) {
                apex = &k;
                break;
            }
        }
        if (!apex) {
            for (const auto& k : candidates) {
                const KernelMargin m = kernel_margin(elems, k, cell);
                if (m.curved >= -1e-9 && m.straight >= -1e-9) {
                    apex = &k;
                    break;
                }
            }
        }
        if (!apex)
            fail(ErrorCode::TilingFailure,
                 "build_tiles: trimmed region is not star-shaped from any kernel candidate "
                 "(cell " + std::to_string(cell.i) + "," + std::to_string(cell.j) + ")");
        for (const auto& e : elems) {
            if (std::abs(fan_area(e, *apex)) <= 1e-14 * cell.area()) continue;
            tiles.push_back(fan_tile(e, *apex));
        }
    }
    return tiles;
}

std::vector<Tile> build_tiles(const ParametricRegion& region, const Cell& cell) {
    return build_tiles(PreparedLoop(region), cell);
}

QuadratureRule tile_quadrature(const Tile& tile, int q) {
    if (q < 1) fail(ErrorCode::DomainError, "tile_quadrature: q must be >= 1");
    const GaussRule& g = gauss_legendre(q);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(q) * q);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            const double u = g.x[i], v = g.x[j];
            const double det = tile.jacobian(u, v);
            if (!(det > 0.0))
                fail(ErrorCode::TilingFailure,
                     "tile_quadrature: non-positive Jacobian at a quadrature node");
            rule.nodes.push_back({tile.map(u, v), g.w[i] * g.w[j] * det});
        }
    }
    return rule;
}

QuadratureRule cell_quadrature_parametric(const PreparedLoop& loop, const Cell& cell, int q) {
    if (q < 1) fail(ErrorCode::DomainError, "cell_quadrature_parametric: q must be >= 1");
    QuadratureRule rule;
    for (const Tile& t : build_tiles(loop, cell)) rule.append(tile_quadrature(t, q));
    return rule;
}

QuadratureRule cell_quadrature_parametric(const ParametricRegion& region, const Cell& cell,
                                          int q) {
    return cell_quadrature_parametric(PreparedLoop(region), cell, q);
}

QuadratureRule interface_quadrature_parametric(const PreparedLoop& loop, const Cell& cell, int q,
                                               const std::vector<int>* segments) {
    if (q < 1) fail(ErrorCode::DomainError, "interface_quadrature_parametric: q must be >= 1");
    const double tol = 1e-10 * std::max(cell.width(), cell.height());
    const GaussRule& g = gauss_legendre(q);
    QuadratureRule rule;
    for (const auto& piece : loop.pieces()) {
        if (segments &&
            std::find(segments->begin(), segments->end(), piece.segment) == segments->end())
            continue;
        const RationalBezier& bez = piece.bez;
        std::vector<double> cuts{bez.a(), bez.b()};
        for (const auto& [axis, bound] :
             {std::pair{Axis::X, cell.x0}, {Axis::X, cell.x1}, {Axis::Y, cell.y0},
              {Axis::Y, cell.y1}}) {
            for (double t : coordinate_hits(bez, axis, bound))
                if (t > bez.a() && t < bez.b()) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        const double ptol = 1e-12 * (bez.b() - bez.a());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= ptol) continue;
            const double tm = 0.5 * (cuts[i] + cuts[i + 1]);
            const Point2 pm = bez.point(tm);
            bool include = cell.strictly_contains(pm, tol);
            if (!include && on_cell_boundary(cell, pm, tol)) {
                // Piece along a cell face: belongs to the cell on its interior
                // (left) side.
                const Point2 tan = bez.deriv(tm);
                const double nl = norm(tan);
                if (nl > 0.0) {
                    const double step = 1e-6 * std::max(cell.width(), cell.height());
                    const Point2 probe{pm.x - tan.y / nl * step, pm.y + tan.x / nl * step};
                    include = cell.strictly_contains(probe, 0.0);
                }
            }
            if (!include) continue;
            const double len = cuts[i + 1] - cuts[i];
            for (int k = 0; k < q; ++k) {
                const double t = cuts[i] + g.x[k] * len;
                rule.nodes.push_back({bez.point(t), g.w[k] * len * norm(bez.deriv(t))});
            }
        }
    }
    return rule;
}

QuadratureRule interface_quadrature_parametric(const ParametricRegion& region, const Cell& cell,
                                               int q) {
    return interface_quadrature_parametric(PreparedLoop(region), cell, q);
}

} // namespace cutcell
