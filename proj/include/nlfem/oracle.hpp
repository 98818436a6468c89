#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nlfem/assembly.hpp"
#include "nlfem/errors.hpp"
#include "nlfem/exact_integrate.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/mesh.hpp"
#include "nlfem/quadrature.hpp"

namespace nlfem {

// Brute-force evaluation of the original (unreduced) forms.  Tensor mode is
// exact in the no-clipping regime (2 delta >= domain diameter), where every
// integrand is a polynomial; Monte Carlo mode covers the clipped regime with
// standard-error reporting.

namespace detail {

inline void require_no_clipping(const Mesh& mesh, const KernelFamily& kf) {
    if (2.0 * kf.delta < mesh.domain_diameter())
        throw RegimeError("tensor-quadrature oracle requires 2*delta >= domain diameter");
}

struct MappedTri {
    Vec2 nodes[32];
    double weights[32];
    int n = 0;
    MappedTri(const QuadratureRule& rule, const Triangle& t) {
        double jac = 2.0 * t.signed_area();
        Vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
        n = static_cast<int>(rule.nodes.size());
        for (int q = 0; q < n; ++q) {
            nodes[q] = t[0] + rule.nodes[static_cast<std::size_t>(q)].x * e1 +
                       rule.nodes[static_cast<std::size_t>(q)].y * e2;
            weights[q] = rule.weights[static_cast<std::size_t>(q)] * jac;
        }
    }
};

inline Vec2 sample_triangle(const Triangle& t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double s = u01(rng), r = u01(rng);
    if (s + r > 1.0) {
        s = 1.0 - s;
        r = 1.0 - r;
    }
    return t[0] + s * (t[1] - t[0]) + r * (t[2] - t[0]);
}

} // namespace detail

/// Direct tensor-quadrature value of the discrete diffusion coefficient
///   (1/delta^2) int phi_ik(x) int R_delta(x,y) (phi_jl(x) - phi_jl(y)) dy dx,
/// no integration by parts.  Requires the no-clipping regime.
inline double brute_force_diffusion_entry(const Mesh& mesh, const KernelFamily& kf, int i,
                                          int k, int j, int l, int degree = 8) {
    detail::require_no_clipping(mesh, kf);
    QuadratureRule rule = triangle_rule(degree);
    Triangle ti = mesh.triangle(i);
    auto bi = mesh.basis_functions(i);
    auto bj = mesh.basis_functions(j);
    detail::MappedTri xi(rule, ti);
    double total = 0.0;
    if (i == j) {
        // sum_m int_{T_i} phi_ik phi_il int_{T_m} R_delta(x,y) dy dx
        for (int m = 0; m < mesh.num_cells(); ++m) {
            detail::MappedTri ym(rule, mesh.triangle(m));
            for (int qx = 0; qx < xi.n; ++qx) {
                double inner = 0.0;
                for (int qy = 0; qy < ym.n; ++qy)
                    inner += ym.weights[qy] *
                             kf.eval_scaled(KernelTier::R, xi.nodes[qx], ym.nodes[qy]);
                total += xi.weights[qx] * inner *
                         bi[static_cast<std::size_t>(k)](xi.nodes[qx]) *
                         bi[static_cast<std::size_t>(l)](xi.nodes[qx]);
            }
        }
    }
    detail::MappedTri yj(rule, mesh.triangle(j));
    for (int qx = 0; qx < xi.n; ++qx) {
        double inner = 0.0;
        for (int qy = 0; qy < yj.n; ++qy)
            inner += yj.weights[qy] * kf.eval_scaled(KernelTier::R, xi.nodes[qx], yj.nodes[qy]) *
                     bj[static_cast<std::size_t>(l)](yj.nodes[qy]);
        total -= xi.weights[qx] * bi[static_cast<std::size_t>(k)](xi.nodes[qx]) * inner;
    }
    return total / (kf.delta * kf.delta);
}

/// Direct tensor-quadrature value of int phi_ik(x) int Rbar_delta(x,y) phi_jl(y) dy dx.
inline double brute_force_zero_order_entry(const Mesh& mesh, const KernelFamily& kf, int i,
                                           int k, int j, int l, int degree = 8) {
    detail::require_no_clipping(mesh, kf);
    QuadratureRule rule = triangle_rule(degree);
    auto bi = mesh.basis_functions(i);
    auto bj = mesh.basis_functions(j);
    detail::MappedTri xi(rule, mesh.triangle(i));
    detail::MappedTri yj(rule, mesh.triangle(j));
    double total = 0.0;
    for (int qx = 0; qx < xi.n; ++qx) {
        double inner = 0.0;
        for (int qy = 0; qy < yj.n; ++qy)
            inner += yj.weights[qy] *
                     kf.eval_scaled(KernelTier::Rbar, xi.nodes[qx], yj.nodes[qy]) *
                     bj[static_cast<std::size_t>(l)](yj.nodes[qy]);
        total += xi.weights[qx] * bi[static_cast<std::size_t>(k)](xi.nodes[qx]) * inner;
    }
    return total;
}

/// Direct right-hand-side entry: the f term uses the same interpolation of f
/// as the assembly (sum over (j,l) of zero-order entries times f_{j,l}), the
/// g term is the double integral 2 int phi_ik(x) int_{dOmega} Rbar g.
inline double brute_force_rhs_entry(const Mesh& mesh, const KernelFamily& kf,
                                    const ScalarField& f, const ScalarField& g, int i, int k,
                                    int degree = 8, int edge_points = 12) {
    detail::require_no_clipping(mesh, kf);
    double total = 0.0;
    DofVector fvec = interpolate(f, mesh);
    for (int j = 0; j < mesh.num_cells(); ++j)
        for (int l = 0; l < 3; ++l)
            total += fvec[static_cast<std::size_t>(dof_index(j, l))] *
                     brute_force_zero_order_entry(mesh, kf, i, k, j, l, degree);
    QuadratureRule rule = triangle_rule(degree);
    QuadratureRule gauss = gauss_segment(edge_points);
    auto bi = mesh.basis_functions(i);
    detail::MappedTri xi(rule, mesh.triangle(i));
    double bnd = 0.0;
    for (const BoundaryEdge& be : mesh.boundary_edges()) {
        Vec2 a = mesh.vertices()[static_cast<std::size_t>(be.v1)];
        Vec2 b = mesh.vertices()[static_cast<std::size_t>(be.v2)];
        double half_len = 0.5 * norm(b - a);
        Vec2 mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t qy = 0; qy < gauss.nodes.size(); ++qy) {
            Vec2 y = mid + gauss.nodes[qy].x * half;
            double wy = gauss.weights[qy] * half_len;
            double inner = 0.0;
            for (int qx = 0; qx < xi.n; ++qx)
                inner += xi.weights[qx] * kf.eval_scaled(KernelTier::Rbar, xi.nodes[qx], y) *
                         bi[static_cast<std::size_t>(k)](xi.nodes[qx]);
            bnd += wy * g(y) * inner;
        }
    }
    return total + 2.0 * bnd;
}

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

namespace detail {

// Area-weighted uniform sampling over a fixed cell list.
struct CellSampler {
    const Mesh& mesh;
    std::vector<int> cells;
    std::vector<double> cumulative;
    double total_area = 0.0;
    CellSampler(const Mesh& m, std::vector<int> cs) : mesh(m), cells(std::move(cs)) {
        cumulative.reserve(cells.size());
        for (int c : cells) {
            total_area += mesh.cell_area(c);
            cumulative.push_back(total_area);
        }
    }
    std::pair<int, Vec2> draw(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> u(0.0, total_area);
        double r = u(rng);
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
        int idx = static_cast<int>(it - cumulative.begin());
        if (idx >= static_cast<int>(cells.size())) idx = static_cast<int>(cells.size()) - 1;
        int cell = cells[static_cast<std::size_t>(idx)];
        return {cell, sample_triangle(mesh.triangle(cell), rng)};
    }
};

inline McEstimate mc_reduce(double sum, double sum_sq, long samples, double scale) {
    McEstimate e;
    double mean = sum / static_cast<double>(samples);
    double var = sum_sq / static_cast<double>(samples) - mean * mean;
    if (var < 0.0) var = 0.0;
    e.value = scale * mean;
    e.std_error = scale * std::sqrt(var / static_cast<double>(samples));
    return e;
}

} // namespace detail

/// Monte Carlo estimate of the diffusion entry in the clipped regime.
/// x ~ U(T_i), y ~ U(union of cells within 2 delta of T_i).
inline McEstimate mc_diffusion_entry(const Mesh& mesh, const KernelFamily& kf, int i, int k,
                                     int j, int l, long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Triangle ti = mesh.triangle(i);
    auto bi = mesh.basis_functions(i);
    auto bj = mesh.basis_functions(j);
    detail::CellSampler nb(mesh, mesh.cells_within(i, 2.0 * kf.delta));
    double area_i = mesh.cell_area(i);
    double sum = 0.0, sum_sq = 0.0;
    for (long s = 0; s < samples; ++s) {
        Vec2 x = detail::sample_triangle(ti, rng);
        auto [ycell, y] = nb.draw(rng);
        double r = kf.eval_scaled(KernelTier::R, x, y);
        double v = 0.0;
        if (i == j) {
            v = r * bi[static_cast<std::size_t>(k)](x) * bi[static_cast<std::size_t>(l)](x);
            if (ycell == i)
                v -= r * bi[static_cast<std::size_t>(k)](x) *
                     bi[static_cast<std::size_t>(l)](y);
        } else if (ycell == j) {
            v = -r * bi[static_cast<std::size_t>(k)](x) * bj[static_cast<std::size_t>(l)](y);
        }
        sum += v;
        sum_sq += v * v;
    }
    return detail::mc_reduce(sum, sum_sq, samples,
                             area_i * nb.total_area / (kf.delta * kf.delta));
}

inline McEstimate mc_zero_order_entry(const Mesh& mesh, const KernelFamily& kf, int i, int k,
                                      int j, int l, long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Triangle ti = mesh.triangle(i);
    Triangle tj = mesh.triangle(j);
    auto bi = mesh.basis_functions(i);
    auto bj = mesh.basis_functions(j);
    double scale = mesh.cell_area(i) * mesh.cell_area(j);
    double sum = 0.0, sum_sq = 0.0;
    for (long s = 0; s < samples; ++s) {
        Vec2 x = detail::sample_triangle(ti, rng);
        Vec2 y = detail::sample_triangle(tj, rng);
        double v = kf.eval_scaled(KernelTier::Rbar, x, y) *
                   bi[static_cast<std::size_t>(k)](x) * bj[static_cast<std::size_t>(l)](y);
        sum += v;
        sum_sq += v * v;
    }
    return detail::mc_reduce(sum, sum_sq, samples, scale);
}

/// Monte Carlo right-hand-side entry; f is interpolated exactly as in the
/// assembly, the boundary term samples the near boundary edges by length.
inline McEstimate mc_rhs_entry(const Mesh& mesh, const KernelFamily& kf, const ScalarField& f,
                               const ScalarField& g, int i, int k, long samples,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Triangle ti = mesh.triangle(i);
    auto bi = mesh.basis_functions(i);
    DofVector fvec = interpolate(f, mesh);
    detail::CellSampler nb(mesh, mesh.cells_within(i, 2.0 * kf.delta));
    double area_i = mesh.cell_area(i);
    double sum = 0.0, sum_sq = 0.0;
    for (long s = 0; s < samples; ++s) {
        Vec2 x = detail::sample_triangle(ti, rng);
        auto [jcell, y] = nb.draw(rng);
        auto bj = mesh.basis_functions(jcell);
        double fh = 0.0;
        for (int l = 0; l < 3; ++l)
            fh += fvec[static_cast<std::size_t>(dof_index(jcell, l))] *
                  bj[static_cast<std::size_t>(l)](y);
        double v = kf.eval_scaled(KernelTier::Rbar, x, y) *
                   bi[static_cast<std::size_t>(k)](x) * fh;
        sum += v;
        sum_sq += v * v;
    }
    McEstimate src = detail::mc_reduce(sum, sum_sq, samples, area_i * nb.total_area);

    // boundary term: y uniform over the boundary edges within reach of T_i
    std::vector<std::pair<Vec2, Vec2>> edges;
    double total_len = 0.0;
    for (const BoundaryEdge& be : mesh.boundary_edges()) {
        Vec2 a = mesh.vertices()[static_cast<std::size_t>(be.v1)];
        Vec2 b = mesh.vertices()[static_cast<std::size_t>(be.v2)];
        if (segment_triangle_distance(a, b, ti) < 2.0 * kf.delta) {
            edges.push_back({a, b});
            total_len += norm(b - a);
        }
    }
    if (!edges.empty()) {
        std::uniform_real_distribution<double> u(0.0, total_len);
        double bsum = 0.0, bsum_sq = 0.0;
        for (long s = 0; s < samples; ++s) {
            Vec2 x = detail::sample_triangle(ti, rng);
            double r = u(rng);
            Vec2 y = edges.back().second;
            for (const auto& [a, b] : edges) {
                double len = norm(b - a);
                if (r <= len) {
                    y = a + (r / len) * (b - a);
                    break;
                }
                r -= len;
            }
            double v = kf.eval_scaled(KernelTier::Rbar, x, y) *
                       bi[static_cast<std::size_t>(k)](x) * g(y);
            bsum += v;
            bsum_sq += v * v;
        }
        McEstimate bnd = detail::mc_reduce(bsum, bsum_sq, samples, 2.0 * area_i * total_len);
        src.value += bnd.value;
        src.std_error = std::sqrt(src.std_error * src.std_error + bnd.std_error * bnd.std_error);
    }
    return src;
}

} // namespace nlfem
