#include "cutcell/polytools.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cutcell {

namespace {

constexpr double kZeroRel = 1e-14; // identically-zero threshold, relative to max |coeff|

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Bernstein basis values B_i^d(s) on [0, 1].
void bernstein_basis(int d, double s, double* B) {
    B[0] = 1.0;
    for (int j = 1; j <= d; ++j) {
        double saved = 0.0;
        for (int k = 0; k < j; ++k) {
            const double tmp = B[k];
            B[k] = saved + (1.0 - s) * tmp;
            saved = s * tmp;
        }
        B[j] = saved;
    }
}

} // namespace

double Bernstein1D::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

double Bernstein1D::evaluate(double t) const {
    const double s = (t - t0) / (t1 - t0);
    std::vector<double> c = coeffs;
    for (std::size_t j = 1; j < c.size(); ++j)
        for (std::size_t i = 0; i + j < c.size(); ++i)
            c[i] = (1.0 - s) * c[i] + s * c[i + 1];
    return c[0];
}

Bernstein1D Bernstein1D::derivative() const {
    Bernstein1D d;
    d.t0 = t0;
    d.t1 = t1;
    const int n = degree();
    if (n == 0) {
        d.coeffs = {0.0};
        return d;
    }
    d.coeffs.resize(n);
    for (int i = 0; i < n; ++i) d.coeffs[i] = n * (coeffs[i + 1] - coeffs[i]) / (t1 - t0);
    return d;
}

Bernstein1D Bernstein1D::elevated() const {
    const int n = degree();
    Bernstein1D e;
    e.t0 = t0;
    e.t1 = t1;
    e.coeffs.resize(n + 2);
    e.coeffs[0] = coeffs[0];
    e.coeffs[n + 1] = coeffs[n];
    for (int i = 1; i <= n; ++i) {
        const double a = static_cast<double>(i) / (n + 1);
        e.coeffs[i] = a * coeffs[i - 1] + (1.0 - a) * coeffs[i];
    }
    return e;
}

Bernstein1D bernstein_mul(const Bernstein1D& a, const Bernstein1D& b) {
    const int m = a.degree(), n = b.degree();
    Bernstein1D r;
    r.t0 = a.t0;
    r.t1 = a.t1;
    r.coeffs.assign(m + n + 1, 0.0);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j)
            r.coeffs[i + j] +=
                binom(m, i) * binom(n, j) / binom(m + n, i + j) * a.coeffs[i] * b.coeffs[j];
    return r;
}

Bernstein1D bernstein_add(const Bernstein1D& a, const Bernstein1D& b, double sa, double sb) {
    Bernstein1D x = a, y = b;
    while (x.degree() < y.degree()) x = x.elevated();
    while (y.degree() < x.degree()) y = y.elevated();
    Bernstein1D r;
    r.t0 = a.t0;
    r.t1 = a.t1;
    r.coeffs.resize(x.coeffs.size());
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = sa * x.coeffs[i] + sb * y.coeffs[i];
    return r;
}

bool is_identically_zero(const Bernstein1D& b, double scale_ref) {
    return b.max_abs_coeff() <= kZeroRel * std::max(scale_ref, 1e-300);
}

namespace {

int sign_variations(const std::vector<double>& c, double eps) {
    int var = 0;
    int prev = 0;
    for (double v : c) {
        if (std::abs(v) <= eps) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

void subdivide_half(const std::vector<double>& c, std::vector<double>& left,
                    std::vector<double>& right) {
    std::vector<double> tmp = c;
    const std::size_t n = c.size();
    left.resize(n);
    right.resize(n);
    left[0] = tmp[0];
    right[n - 1] = tmp[n - 1];
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i + j < n; ++i) tmp[i] = 0.5 * (tmp[i] + tmp[i + 1]);
        left[j] = tmp[0];
        right[n - 1 - j] = tmp[n - 1 - j];
    }
}

double polish_root(const Bernstein1D& b, const Bernstein1D& db, double lo, double hi, double tol,
                   double scale) {
    double flo = b.evaluate(lo), fhi = b.evaluate(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    double a = lo, c = hi;
    double x = 0.5 * (a + c);
    for (int it = 0; it < 30; ++it) {
        x = 0.5 * (a + c);
        const double fx = b.evaluate(x);
        if (std::abs(fx) <= tol * scale) break;
        if ((fx > 0.0) == (flo > 0.0)) {
            a = x;
            flo = fx;
        } else {
            c = x;
        }
    }
    for (int it = 0; it < 5; ++it) {
        const double fx = b.evaluate(x);
        if (std::abs(fx) <= tol * scale) break;
        const double dfx = db.evaluate(x);
        if (dfx == 0.0) break;
        const double xn = x - fx / dfx;
        if (xn <= a || xn >= c) break;
        x = xn;
    }
    return x;
}

void root_rec(const std::vector<double>& c, double lo, double hi, int depth, double eps,
              const Bernstein1D& orig, const Bernstein1D& dorig, double tol, double scale,
              std::vector<double>& out) {
    const int var = sign_variations(c, eps);
    if (var == 0) return;
    if (var == 1 && std::abs(c.front()) > eps && std::abs(c.back()) > eps &&
        (c.front() > 0.0) != (c.back() > 0.0)) {
        out.push_back(polish_root(orig, dorig, lo, hi, tol, scale));
        return;
    }
    const double len = orig.t1 - orig.t0;
    if (hi - lo <= 1e-13 * len) {
        // Near-double root or coefficient straddle without a true zero.
        const double mid = 0.5 * (lo + hi);
        if (std::abs(orig.evaluate(mid)) <= std::max(tol, 1e-9) * scale) out.push_back(mid);
        return;
    }
    if (depth >= 60)
        fail(ErrorCode::NonConvergence, "roots_in_interval: subdivision depth limit exceeded");
    std::vector<double> left, right;
    subdivide_half(c, left, right);
    const double mid = 0.5 * (lo + hi);
    root_rec(left, lo, mid, depth + 1, eps, orig, dorig, tol, scale, out);
    root_rec(right, mid, hi, depth + 1, eps, orig, dorig, tol, scale, out);
}

} // namespace

std::vector<double> roots_in_interval(const Bernstein1D& b, double tol) {
    if (tol <= 0.0) fail(ErrorCode::InvalidArgument, "roots_in_interval: tol must be positive");
    const double scale = b.max_abs_coeff();
    if (scale <= kZeroRel)
        fail(ErrorCode::DegenerateInput, "roots_in_interval: polynomial is identically zero");
    const double eps = kZeroRel * scale;
    const Bernstein1D db = b.derivative();
    std::vector<double> out;
    // Endpoint roots are not reliably seen by sign variations.
    if (std::abs(b.coeffs.front()) <= eps) out.push_back(b.t0);
    if (std::abs(b.coeffs.back()) <= eps) out.push_back(b.t1);
    root_rec(b.coeffs, b.t0, b.t1, 0, eps, b, db, tol, scale, out);
    // Even-multiplicity roots produce no sign change; pick them up at the
    // critical points of the polynomial instead.
    if (b.degree() >= 2 && db.max_abs_coeff() > kZeroRel * scale) {
        for (double t : roots_in_interval(db, tol))
            if (std::abs(b.evaluate(t)) <= std::max(tol, 1e-9) * scale) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    const double merge = 1e-7 * (b.t1 - b.t0);
    for (double r : out)
        if (uniq.empty() || r - uniq.back() > merge) uniq.push_back(r);
    return uniq;
}

// ---------------------------------------------------------------------------

double Bernstein2D::evaluate(Point2 p) const {
    const double sx = (p.x - cell.x0) / cell.width();
    double Bx[32];
    bernstein_basis(dx, sx, Bx);
    Bernstein1D line;
    line.t0 = cell.y0;
    line.t1 = cell.y1;
    line.coeffs.assign(dy + 1, 0.0);
    for (int i = 0; i <= dx; ++i)
        for (int j = 0; j <= dy; ++j) line.coeffs[j] += Bx[i] * at(i, j);
    return line.evaluate(p.y);
}

Bernstein2D Bernstein2D::derivative(Axis axis) const {
    Bernstein2D d;
    d.cell = cell;
    if (axis == Axis::X) {
        d.dx = std::max(0, dx - 1);
        d.dy = dy;
        d.coeffs.assign((d.dx + 1) * (d.dy + 1), 0.0);
        if (dx == 0) return d;
        for (int i = 0; i < dx; ++i)
            for (int j = 0; j <= dy; ++j)
                d.coeffs[i * (dy + 1) + j] = dx * (at(i + 1, j) - at(i, j)) / cell.width();
    } else {
        d.dx = dx;
        d.dy = std::max(0, dy - 1);
        d.coeffs.assign((d.dx + 1) * (d.dy + 1), 0.0);
        if (dy == 0) return d;
        for (int i = 0; i <= dx; ++i)
            for (int j = 0; j < dy; ++j)
                d.coeffs[i * (d.dy + 1) + j] = dy * (at(i, j + 1) - at(i, j)) / cell.height();
    }
    return d;
}

Bernstein2D to_bernstein(const std::function<double(Point2)>& f, const Cell& cell, int d) {
    if (d < 0) fail(ErrorCode::InvalidArgument, "to_bernstein: degree must be >= 0");
    const int n = d + 1;
    // Chebyshev-Lobatto nodes on [0, 1]; well-conditioned at higher degree.
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = (d == 0) ? 0.5 : 0.5 * (1.0 - std::cos(M_PI * i / d));
    Eigen::MatrixXd M(n, n);
    std::vector<double> B(n);
    for (int i = 0; i < n; ++i) {
        bernstein_basis(d, s[i], B.data());
        for (int j = 0; j < n; ++j) M(i, j) = B[j];
    }
    Eigen::MatrixXd F(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            F(i, j) = f({cell.x0 + s[i] * cell.width(), cell.y0 + s[j] * cell.height()});
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::MatrixXd C = lu.solve(F);
    C = lu.solve(C.transpose()).transpose();
    Bernstein2D out;
    out.cell = cell;
    out.dx = out.dy = d;
    out.coeffs.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = C(i, j);
    return out;
}

Bernstein2D to_bernstein(const ImplicitConstraint& c, const Cell& cell, int d) {
    return to_bernstein([&c](Point2 p) { return c.value(p); }, cell, d);
}

Bernstein2D to_bernstein(const ImplicitConstraint& c, const Cell& cell) {
    return to_bernstein(c, cell, std::max(1, c.poly_degree()));
}

Bernstein1D interpolate_bernstein_1d(const std::function<double(double)>& f, double a, double b,
                                     int d) {
    const int n = d + 1;
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd F(n);
    std::vector<double> B(n);
    for (int i = 0; i < n; ++i) {
        const double s = (d == 0) ? 0.5 : 0.5 * (1.0 - std::cos(M_PI * i / d));
        bernstein_basis(d, s, B.data());
        for (int j = 0; j < n; ++j) M(i, j) = B[j];
        F(i) = f(a + s * (b - a));
    }
    Eigen::VectorXd c = M.partialPivLu().solve(F);
    Bernstein1D out;
    out.t0 = a;
    out.t1 = b;
    out.coeffs.assign(c.data(), c.data() + n);
    return out;
}

Bernstein1D restrict_to_line(const Bernstein2D& b, Axis axis, double value) {
    Bernstein1D out;
    if (axis == Axis::X) {
        if (value < b.cell.x0 - 1e-12 * b.cell.width() || value > b.cell.x1 + 1e-12 * b.cell.width())
            fail(ErrorCode::DomainError, "restrict_to_line: value outside cell");
        const double s = (value - b.cell.x0) / b.cell.width();
        double B[32];
        bernstein_basis(b.dx, s, B);
        out.t0 = b.cell.y0;
        out.t1 = b.cell.y1;
        out.coeffs.assign(b.dy + 1, 0.0);
        for (int i = 0; i <= b.dx; ++i)
            for (int j = 0; j <= b.dy; ++j) out.coeffs[j] += B[i] * b.at(i, j);
    } else {
        if (value < b.cell.y0 - 1e-12 * b.cell.height() ||
            value > b.cell.y1 + 1e-12 * b.cell.height())
            fail(ErrorCode::DomainError, "restrict_to_line: value outside cell");
        const double s = (value - b.cell.y0) / b.cell.height();
        double B[32];
        bernstein_basis(b.dy, s, B);
        out.t0 = b.cell.x0;
        out.t1 = b.cell.x1;
        out.coeffs.assign(b.dx + 1, 0.0);
        for (int i = 0; i <= b.dx; ++i)
            for (int j = 0; j <= b.dy; ++j) out.coeffs[i] += B[j] * b.at(i, j);
    }
    return out;
}

std::pair<double, double> coefficient_range(const Bernstein2D& b) {
    auto [mn, mx] = std::minmax_element(b.coeffs.begin(), b.coeffs.end());
    return {*mn, *mx};
}

} // namespace cutcell
