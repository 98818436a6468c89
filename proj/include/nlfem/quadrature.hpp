#pragma once

#include <vector>

#include "nlfem/errors.hpp"
#include "nlfem/geometry.hpp"
#include "nlfem/quadrature_tables.hpp"

namespace nlfem {

/// Quadrature rule on a reference domain: segment nodes live on [-1,1] (as
/// (t,0) points, weights summing to 2), triangle nodes on the unit right
/// triangle (weights summing to 1/2).
struct QuadratureRule {
    std::vector<Vec2> nodes;
    std::vector<double> weights;
    int degree = 0;  // declared polynomial exactness
};

/// Gauss-Legendre rule with npoints in 1..16, exact to degree 2*npoints - 1.
inline QuadratureRule gauss_segment(int npoints) {
    if (npoints < 1 || npoints > detail::kGaussMax)
        throw UnsupportedOrder("gauss_segment: npoints must be in 1..16");
    QuadratureRule rule;
    rule.degree = 2 * npoints - 1;
    int off = detail::kGaussOffset[npoints - 1];
    for (int i = 0; i < npoints; ++i) {
        rule.nodes.push_back({detail::kGaussNodes[off + i], 0.0});
        rule.weights.push_back(detail::kGaussWeights[off + i]);
    }
    return rule;
}

/// Symmetric positive-weight triangle rule exact to at least the requested
/// total degree (1..10).  Requests 3 and 7 are served by the degree-4 and
/// degree-8 tables.
inline QuadratureRule triangle_rule(int degree) {
    if (degree < 1 || degree > 10)
        throw UnsupportedOrder("triangle_rule: degree must be in 1..10");
    QuadratureRule rule;
    auto fill = [&rule](const double (*tab)[3], int n, int deg) {
        rule.degree = deg;
        for (int i = 0; i < n; ++i) {
            rule.nodes.push_back({tab[i][0], tab[i][1]});
            rule.weights.push_back(tab[i][2]);
        }
    };
    if (degree <= 1) fill(detail::kTri1, 1, 1);
    else if (degree <= 2) fill(detail::kTri2, 3, 2);
    else if (degree <= 4) fill(detail::kTri4, 6, 4);
    else if (degree <= 5) fill(detail::kTri5, 7, 5);
    else if (degree <= 6) fill(detail::kTri6, 12, 6);
    else if (degree <= 8) fill(detail::kTri8, 16, 8);
    else fill(detail::kTri10, 25, 10);
    return rule;
}

struct MappedRule {
    std::vector<Vec2> nodes;
    std::vector<double> weights;
};

/// Affine image of a segment rule onto [a, b]; weights scale by half-length.
inline MappedRule map_rule(const QuadratureRule& rule, Vec2 a, Vec2 b) {
    double half_len = 0.5 * norm(b - a);
    if (half_len == 0.0) throw DegenerateGeometry("map_rule: zero-length segment");
    MappedRule out;
    Vec2 mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.nodes.push_back(mid + rule.nodes[i].x * half);
        out.weights.push_back(rule.weights[i] * half_len);
    }
    return out;
}

/// Affine image of a triangle rule; weights scale by twice the triangle area.
inline MappedRule map_rule(const QuadratureRule& rule, const Triangle& t) {
    double jac = 2.0 * t.signed_area();
    if (jac <= 0.0) throw DegenerateGeometry("map_rule: degenerate or cw triangle");
    MappedRule out;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Vec2 n = rule.nodes[i];
        out.nodes.push_back(t[0] + n.x * (t[1] - t[0]) + n.y * (t[2] - t[0]));
        out.weights.push_back(rule.weights[i] * jac);
    }
    return out;
}

} // namespace nlfem
