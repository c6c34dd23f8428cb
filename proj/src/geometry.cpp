#include "cutcell/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cutcell {

NurbsCurve::NurbsCurve(int degree, std::vector<double> knots, std::vector<Point2> control_points,
                       std::vector<double> weights)
    : degree_(degree), knots_(std::move(knots)), cps_(std::move(control_points)),
      weights_(std::move(weights)) {
    const std::size_t n = cps_.size();
    if (degree_ < 1) fail(ErrorCode::InvalidArgument, "NurbsCurve: degree must be >= 1");
    if (weights_.size() != n)
        fail(ErrorCode::InvalidArgument, "NurbsCurve: |weights| != |control_points|");
    if (knots_.size() != n + degree_ + 1)
        fail(ErrorCode::InvalidArgument, "NurbsCurve: |knots| != n + p + 1");
    if (!std::is_sorted(knots_.begin(), knots_.end()))
        fail(ErrorCode::InvalidArgument, "NurbsCurve: knots must be nondecreasing");
    for (int k = 0; k <= degree_; ++k) {
        if (knots_[k] != knots_.front() || knots_[knots_.size() - 1 - k] != knots_.back())
            fail(ErrorCode::InvalidArgument, "NurbsCurve: knot vector must be open");
    }
    for (double w : weights_)
        if (!(w > 0.0)) fail(ErrorCode::InvalidArgument, "NurbsCurve: weights must be positive");
}

int NurbsCurve::find_span(double xi) const {
    const int n = static_cast<int>(cps_.size()) - 1;
    if (xi >= knots_[n + 1]) return n;
    if (xi <= knots_[degree_]) return degree_;
    int lo = degree_, hi = n + 1;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (xi < knots_[mid]) ? hi = mid : lo = mid;
    }
    return lo;
}

void NurbsCurve::basis(int span, double xi, double* N, double* dN) const {
    const int p = degree_;
    // Cox-de Boor triangle; left/right differences per The NURBS Book A2.2.
    double left[16], right[16], ndu[16][16];
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = xi - knots_[span + 1 - j];
        right[j] = knots_[span + j] - xi;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int j = 0; j <= p; ++j) N[j] = ndu[j][p];
    if (dN) {
        for (int r = 0; r <= p; ++r) {
            double d = 0.0;
            if (r >= 1) d += ndu[r - 1][p - 1] / ndu[p][r - 1];
            if (r <= p - 1) d -= ndu[r][p - 1] / ndu[p][r];
            dN[r] = p * d;
        }
    }
}

Point2 NurbsCurve::evaluate(double xi) const {
    const double tol = 1e-12 * (knot_back() - knot_front());
    if (xi < knot_front() - tol || xi > knot_back() + tol)
        fail(ErrorCode::DomainError, "NurbsCurve::evaluate: xi outside knot range");
    xi = std::clamp(xi, knot_front(), knot_back());
    const int span = find_span(xi);
    double N[16];
    basis(span, xi, N, nullptr);
    double wx = 0.0, wy = 0.0, w = 0.0;
    for (int k = 0; k <= degree_; ++k) {
        const int idx = span - degree_ + k;
        const double nw = N[k] * weights_[idx];
        wx += nw * cps_[idx].x;
        wy += nw * cps_[idx].y;
        w += nw;
    }
    return {wx / w, wy / w};
}

Point2 NurbsCurve::derivative(double xi) const {
    const double tol = 1e-12 * (knot_back() - knot_front());
    if (xi < knot_front() - tol || xi > knot_back() + tol)
        fail(ErrorCode::DomainError, "NurbsCurve::derivative: xi outside knot range");
    xi = std::clamp(xi, knot_front(), knot_back());
    const int span = find_span(xi);
    double N[16], dN[16];
    basis(span, xi, N, dN);
    double wx = 0.0, wy = 0.0, w = 0.0, dwx = 0.0, dwy = 0.0, dw = 0.0;
    for (int k = 0; k <= degree_; ++k) {
        const int idx = span - degree_ + k;
        const double wi = weights_[idx];
        wx += N[k] * wi * cps_[idx].x;
        wy += N[k] * wi * cps_[idx].y;
        w += N[k] * wi;
        dwx += dN[k] * wi * cps_[idx].x;
        dwy += dN[k] * wi * cps_[idx].y;
        dw += dN[k] * wi;
    }
    // Quotient rule on the homogeneous form: C' = (A' - w' C) / w.
    return {(dwx - dw * wx / w) / w, (dwy - dw * wy / w) / w};
}

void NurbsCurve::homogeneous(double xi, double& wx, double& wy, double& w) const {
    xi = std::clamp(xi, knot_front(), knot_back());
    const int span = find_span(xi);
    double N[16];
    basis(span, xi, N, nullptr);
    wx = wy = w = 0.0;
    for (int k = 0; k <= degree_; ++k) {
        const int idx = span - degree_ + k;
        const double nw = N[k] * weights_[idx];
        wx += nw * cps_[idx].x;
        wy += nw * cps_[idx].y;
        w += nw;
    }
}

std::vector<double> NurbsCurve::span_breaks(double a, double b) const {
    std::vector<double> out{a};
    for (std::size_t k = degree_; k + degree_ < knots_.size(); ++k) {
        const double u = knots_[k];
        if (u > a && u < b && u != out.back()) out.push_back(u);
    }
    out.push_back(b);
    return out;
}

NurbsCurve make_line_curve(Point2 a, Point2 b) {
    return NurbsCurve(1, {0.0, 0.0, 1.0, 1.0}, {a, b}, {1.0, 1.0});
}

NurbsCurve make_arc_curve(Point2 center, double radius, double th0, double th1) {
    const double half = 0.5 * (th1 - th0);
    if (std::abs(half) > M_PI / 4 + 1e-12)
        fail(ErrorCode::InvalidArgument, "make_arc_curve: arc sweep must be <= pi/2");
    const double mid = 0.5 * (th0 + th1);
    Point2 p0{center.x + radius * std::cos(th0), center.y + radius * std::sin(th0)};
    Point2 p2{center.x + radius * std::cos(th1), center.y + radius * std::sin(th1)};
    // Middle control point at the intersection of the endpoint tangents.
    const double rm = radius / std::cos(half);
    Point2 p1{center.x + rm * std::cos(mid), center.y + rm * std::sin(mid)};
    return NurbsCurve(2, {0.0, 0.0, 0.0, 1.0, 1.0, 1.0}, {p0, p1, p2}, {1.0, std::cos(half), 1.0});
}

NurbsCurve make_circle_curve(Point2 c, double r) {
    const double s = std::sqrt(0.5);
    std::vector<Point2> cps = {{c.x + r, c.y},     {c.x + r, c.y + r}, {c.x, c.y + r},
                               {c.x - r, c.y + r}, {c.x - r, c.y},     {c.x - r, c.y - r},
                               {c.x, c.y - r},     {c.x + r, c.y - r}, {c.x + r, c.y}};
    std::vector<double> w = {1, s, 1, s, 1, s, 1, s, 1};
    std::vector<double> knots = {0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1};
    return NurbsCurve(2, knots, cps, w);
}

// ---------------------------------------------------------------------------

ImplicitConstraint::ImplicitConstraint(PolyConstraint p) : rep_(std::move(p)) {
    const auto& poly = std::get<PolyConstraint>(rep_);
    const std::size_t n = static_cast<std::size_t>(poly.degree + 1);
    if (poly.degree < 0 || poly.coeffs.size() != n * n)
        fail(ErrorCode::InvalidArgument, "PolyConstraint: |coeffs| must be (degree+1)^2");
}

double ImplicitConstraint::value(Point2 p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        fail(ErrorCode::DomainError, "ImplicitConstraint::value: non-finite point");
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CircleConstraint>) {
                const double dx = p.x - c.cx, dy = p.y - c.cy;
                return c.sign * (c.r * c.r - dx * dx - dy * dy);
            } else if constexpr (std::is_same_v<T, HalfPlaneConstraint>) {
                return c.sign * (c.c - c.a * p.x - c.b * p.y);
            } else {
                double v = 0.0;
                double xi = 1.0;
                for (int i = 0; i <= c.degree; ++i) {
                    double yj = 1.0;
                    for (int j = 0; j <= c.degree; ++j) {
                        v += c.coeffs[i * (c.degree + 1) + j] * xi * yj;
                        yj *= p.y;
                    }
                    xi *= p.x;
                }
                return v;
            }
        },
        rep_);
}

Point2 ImplicitConstraint::gradient(Point2 p) const {
    return std::visit(
        [&](const auto& c) -> Point2 {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CircleConstraint>) {
                return {-2.0 * c.sign * (p.x - c.cx), -2.0 * c.sign * (p.y - c.cy)};
            } else if constexpr (std::is_same_v<T, HalfPlaneConstraint>) {
                return {-c.sign * c.a, -c.sign * c.b};
            } else {
                Point2 g{0.0, 0.0};
                const int n = c.degree;
                for (int i = 0; i <= n; ++i) {
                    for (int j = 0; j <= n; ++j) {
                        const double a = c.coeffs[i * (n + 1) + j];
                        if (a == 0.0) continue;
                        if (i > 0) g.x += a * i * std::pow(p.x, i - 1) * std::pow(p.y, j);
                        if (j > 0) g.y += a * j * std::pow(p.x, i) * std::pow(p.y, j - 1);
                    }
                }
                return g;
            }
        },
        rep_);
}

int ImplicitConstraint::poly_degree() const {
    return std::visit(
        [](const auto& c) -> int {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CircleConstraint>) return 2;
            else if constexpr (std::is_same_v<T, HalfPlaneConstraint>) return 1;
            else return c.degree;
        },
        rep_);
}

ImplicitConstraint halfplane_left_of(Point2 a, Point2 b) {
    // cross(b - a, p - a) > 0 on the left of a -> b.
    const Point2 d = b - a;
    // cross = d.x*(p.y - a.y) - d.y*(p.x - a.x) = sign*(c - A x - B y) with sign = -1.
    HalfPlaneConstraint h;
    h.a = -d.y;
    h.b = d.x;
    h.c = d.x * a.y - d.y * a.x;
    h.sign = -1.0;
    return ImplicitConstraint(h);
}

// ---------------------------------------------------------------------------

namespace {

NurbsCurve reverse_curve(const NurbsCurve& c) {
    std::vector<Point2> cps(c.control_points().rbegin(), c.control_points().rend());
    std::vector<double> w(c.weights().rbegin(), c.weights().rend());
    const double a = c.knot_front(), b = c.knot_back();
    std::vector<double> knots(c.knots().size());
    for (std::size_t k = 0; k < knots.size(); ++k)
        knots[k] = a + b - c.knots()[c.knots().size() - 1 - k];
    return NurbsCurve(c.degree(), std::move(knots), std::move(cps), std::move(w));
}

double sampled_signed_area(const std::vector<NurbsCurve>& curves) {
    // Shoelace on a dense sampling of the loop; only the sign is needed.
    double area2 = 0.0;
    Point2 prev = curves.front().evaluate(curves.front().knot_front());
    for (const auto& c : curves) {
        const int ns = 64;
        for (int k = 1; k <= ns; ++k) {
            const double xi =
                c.knot_front() + (c.knot_back() - c.knot_front()) * static_cast<double>(k) / ns;
            const Point2 p = c.evaluate(xi);
            area2 += cross(prev, p);
            prev = p;
        }
    }
    return 0.5 * area2;
}

} // namespace

ParametricRegion::ParametricRegion(std::vector<NurbsCurve> curves, double tol_geo)
    : curves_(std::move(curves)), tol_(tol_geo) {
    if (curves_.empty())
        fail(ErrorCode::InvalidArgument, "ParametricRegion: loop must have at least one segment");
    for (std::size_t k = 0; k < curves_.size(); ++k) {
        const Point2 e = curves_[k].evaluate(curves_[k].knot_back());
        const auto& next = curves_[(k + 1) % curves_.size()];
        const Point2 s = next.evaluate(next.knot_front());
        if (dist(e, s) > tol_)
            fail(ErrorCode::InvalidArgument, "ParametricRegion: loop segments do not chain/close");
    }
    // Normalize to counterclockwise so the interior is always on the left.
    if (sampled_signed_area(curves_) < 0.0) {
        std::vector<NurbsCurve> rev;
        rev.reserve(curves_.size());
        for (auto it = curves_.rbegin(); it != curves_.rend(); ++it)
            rev.push_back(reverse_curve(*it));
        curves_ = std::move(rev);
        reversed_ = true;
    }
}

} // namespace cutcell
