#pragma once

#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

struct QuadNode {
    Point2 p;
    double w = 0.0;
};

struct QuadratureRule {
    std::vector<QuadNode> nodes;

    void append(const QuadratureRule& other) {
        nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
    }
    double total_weight() const {
        double s = 0.0;
        for (const auto& n : nodes) s += n.w;
        return s;
    }
    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }
};

// Gauss-Legendre nodes/weights on [0, 1]; cached per order, thread-safe.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int q);

// Tensor q x q Gauss rule scaled to the cell.
QuadratureRule tensor_rule(const Cell& cell, int q);

} // namespace cutcell
