#include "cutcell/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cutcell/errors.hpp"

namespace cutcell {

namespace {

GaussRule compute_gauss(int q) {
    // Newton iteration on Legendre polynomials, nodes on [-1, 1], then map to [0, 1].
    GaussRule r;
    r.x.resize(q);
    r.w.resize(q);
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[q - 1 - i] = 0.5 * (1.0 + x);
        r.w[q - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const GaussRule& gauss_legendre(int q) {
    if (q < 1) fail(ErrorCode::InvalidArgument, "gauss_legendre: order must be >= 1");
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, compute_gauss(q)).first;
    return it->second;
}

QuadratureRule tensor_rule(const Cell& cell, int q) {
    const GaussRule& g = gauss_legendre(q);
    QuadratureRule r;
    r.nodes.reserve(static_cast<std::size_t>(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            r.nodes.push_back({{cell.x0 + g.x[i] * cell.width(), cell.y0 + g.x[j] * cell.height()},
                               g.w[i] * g.w[j] * cell.area()});
    return r;
}

} // namespace cutcell
