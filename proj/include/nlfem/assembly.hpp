#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "nlfem/errors.hpp"
#include "nlfem/exact_integrate.hpp"
#include "nlfem/geometry.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/mesh.hpp"
#include "nlfem/quadrature.hpp"
#include "nlfem/sparse.hpp"
#include "nlfem/threading.hpp"

namespace nlfem {

using ScalarField = std::function<double(Vec2)>;

struct QuadratureConfig {
    int edge_points = 8;  // Gauss points per (sub)segment
    int tri_degree = 6;   // triangle rule degree for 2D outer integrals
    int threads = 0;      // 0 = machine parallelism
};

namespace detail {

// Kink breakpoints for segment quadrature: parameters where the integration
// point crosses distance rho from a circle center.  Sub-segments are then
// analytic, so a fixed Gauss rule recovers near-exactness.
inline void circle_roots(Vec2 a, Vec2 d, Vec2 c, double rho, double* out, int& n) {
    double qa = squared_norm(d);
    if (qa == 0.0) return;
    Vec2 w = a - c;
    double qb = 2.0 * dot(w, d), qc = squared_norm(w) - rho * rho;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return;
    double sq = std::sqrt(disc);
    for (double r : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
        if (r > 1e-12 && r < 1.0 - 1e-12) out[n++] = r;
}

struct SegmentBreaks {
    double t[9];
    int n = 0;

    void from_triangle(Vec2 a, Vec2 b, const Triangle& tri, double rho) {
        double r[6];
        int nr = 0;
        Vec2 d = b - a;
        for (int v = 0; v < 3; ++v) circle_roots(a, d, tri[v], rho, r, nr);
        std::sort(r, r + nr);
        n = 0;
        t[n++] = 0.0;
        for (int i = 0; i < nr; ++i) t[n++] = r[i];
        t[n++] = 1.0;
    }

    void from_point(Vec2 a, Vec2 b, Vec2 c, double rho) {
        double r[2];
        int nr = 0;
        circle_roots(a, b - a, c, rho, r, nr);
        if (nr == 2 && r[0] > r[1]) std::swap(r[0], r[1]);
        n = 0;
        t[n++] = 0.0;
        for (int i = 0; i < nr; ++i) t[n++] = r[i];
        t[n++] = 1.0;
    }
};

// Gauss quadrature along segment ab split at the given breakpoints.
template <typename Fn>
inline void quad_segment(const QuadratureRule& gauss, Vec2 a, Vec2 b,
                         const SegmentBreaks& br, Fn&& fn) {
    double len = norm(b - a);
    for (int s = 0; s + 1 < br.n; ++s) {
        double ta = br.t[s], tb = br.t[s + 1];
        if (tb - ta < 1e-14) continue;
        double half = 0.5 * (tb - ta), mid = 0.5 * (ta + tb);
        for (std::size_t q = 0; q < gauss.nodes.size(); ++q) {
            double tt = mid + half * gauss.nodes[q].x;
            fn(a + tt * (b - a), gauss.weights[q] * half * len);
        }
    }
}

struct CellData {
    Triangle tri;
    std::array<AffineBasis, 3> basis;
    Vec2 edge_normal[3];  // outward unit normals, edge e = (v[e], v[e+1])
};

inline CellData make_cell_data(const Mesh& mesh, int i) {
    CellData cd;
    cd.tri = mesh.triangle(i);
    cd.basis = mesh.basis_functions(i);
    for (int e = 0; e < 3; ++e) {
        Vec2 d = cd.tri[(e + 1) % 3] - cd.tri[e];
        cd.edge_normal[e] = (1.0 / norm(d)) * Vec2{d.y, -d.x};
    }
    return cd;
}

// One orientation of the off-diagonal pair formulas: entry ((r,k),(c,l))
// with the outer integrals over T_c and the exact inner integrals over T_r.
//   B[k][l] = -4 d^2 sum_e (a_rk . n_e) int_e phi_cl P_r
//             + 4 d^2 (a_rk . a_cl) int_{T_c} P_r
//             - 2 int_{T_c} phibar_rk phi_cl U_r
//   M[k][l] =  2 d^2 sum_e (a_rk . n_e) int_e phi_cl Q_r
//             - 2 d^2 (a_rk . a_cl) int_{T_c} Q_r
//             + int_{T_c} P_r phibar_rk phi_cl
inline void pair_half(const KernelFamily& kf, const CellData& row, const CellData& col,
                      const QuadratureRule& gauss, const QuadratureRule& tri,
                      double B[3][3], double M[3][3]) {
    double d2 = kf.delta * kf.delta;
    double horizon = 2.0 * kf.delta;
    double ip = 0.0, iq = 0.0;
    double cu[3][3] = {}, cp[3][3] = {};
    double jac = 2.0 * col.tri.signed_area();
    Vec2 e1 = col.tri[1] - col.tri[0], e2 = col.tri[2] - col.tri[0];
    for (std::size_t q = 0; q < tri.nodes.size(); ++q) {
        Vec2 x = col.tri[0] + tri.nodes[q].x * e1 + tri.nodes[q].y * e2;
        double w = tri.weights[q] * jac;
        KernelTriangleIntegrals kti = kernel_triangle_integrals(kf, x, row.tri);
        ip += w * kti.p;
        iq += w * kti.q;
        double pr[3], pc[3];
        for (int k = 0; k < 3; ++k) pr[k] = row.basis[static_cast<std::size_t>(k)](x);
        for (int l = 0; l < 3; ++l) pc[l] = col.basis[static_cast<std::size_t>(l)](x);
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                cu[k][l] += w * kti.u * pr[k] * pc[l];
                cp[k][l] += w * kti.p * pr[k] * pc[l];
            }
    }
    double ep[3][3] = {}, eq[3][3] = {};  // [edge][l]
    SegmentBreaks br;
    for (int e = 0; e < 3; ++e) {
        Vec2 a = col.tri[e], b = col.tri[(e + 1) % 3];
        br.from_triangle(a, b, row.tri, horizon);
        quad_segment(gauss, a, b, br, [&](Vec2 y, double w) {
            KernelTriangleIntegrals kti = kernel_triangle_integrals(kf, y, row.tri);
            for (int l = 0; l < 3; ++l) {
                double pl = col.basis[static_cast<std::size_t>(l)](y);
                ep[e][l] += w * pl * kti.p;
                eq[e][l] += w * pl * kti.q;
            }
        });
    }
    for (int k = 0; k < 3; ++k) {
        Vec2 ark = row.basis[static_cast<std::size_t>(k)].gradient;
        double en[3];
        for (int e = 0; e < 3; ++e) en[e] = dot(ark, col.edge_normal[e]);
        for (int l = 0; l < 3; ++l) {
            Vec2 acl = col.basis[static_cast<std::size_t>(l)].gradient;
            double s1p = en[0] * ep[0][l] + en[1] * ep[1][l] + en[2] * ep[2][l];
            double s1q = en[0] * eq[0][l] + en[1] * eq[1][l] + en[2] * eq[2][l];
            double grad = dot(ark, acl);
            B[k][l] = -4.0 * d2 * s1p + 4.0 * d2 * grad * ip - 2.0 * cu[k][l];
            M[k][l] = 2.0 * d2 * s1q - 2.0 * d2 * grad * iq + cp[k][l];
        }
    }
}

} // namespace detail

struct AssembledOperators {
    SparseMatrix diffusion;   // D
    SparseMatrix zero_order;  // M
    std::vector<std::vector<int>> neighbors;
};

/// Assembles the diffusion matrix D and the zero-order matrix M in one pass
/// over interacting cell pairs.  Inner integrals are exact (wedge
/// decomposition), outer integrals use the configured rules with segment
/// integrals split at the kernel-support kinks.  Blocks are stored
/// symmetrized, so D and M are exactly symmetric.
inline AssembledOperators assemble_operators(const Mesh& mesh, const KernelFamily& kf,
                                             const QuadratureConfig& cfg) {
    double horizon = 2.0 * kf.delta;
    if (horizon < 0.1 * mesh.min_diameter())
        throw HorizonTooSmall("2*delta below 0.1 * min cell diameter");
    const int ncells = mesh.num_cells();
    const QuadratureRule gauss = gauss_segment(cfg.edge_points);
    const QuadratureRule tri = triangle_rule(cfg.tri_degree);
    const double d2 = kf.delta * kf.delta;

    std::vector<detail::CellData> cells(static_cast<std::size_t>(ncells));
    for (int i = 0; i < ncells; ++i)
        cells[static_cast<std::size_t>(i)] = detail::make_cell_data(mesh, i);

    mesh.cells_within(0, horizon);  // build the grid before the parallel region
    AssembledOperators out;
    out.neighbors.resize(static_cast<std::size_t>(ncells));
    parallel_for(ncells, cfg.threads, [&](int i) {
        for (int j : mesh.cells_within(i, horizon))
            if (j == i || triangle_distance(cells[static_cast<std::size_t>(i)].tri,
                                            cells[static_cast<std::size_t>(j)].tri) < horizon)
                out.neighbors[static_cast<std::size_t>(i)].push_back(j);
    });
    out.diffusion = SparseMatrix::from_block_pattern(out.neighbors);
    out.zero_order = SparseMatrix::from_block_pattern(out.neighbors);

    // Off-diagonal blocks first: one unordered pair at a time, both
    // orientations averaged, mirrored into both block slots (exact symmetry).
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < ncells; ++i)
        for (int j : out.neighbors[static_cast<std::size_t>(i)])
            if (j > i) pairs.push_back({i, j});
    parallel_for(static_cast<int>(pairs.size()), cfg.threads, [&](int p) {
        auto [i, j] = pairs[static_cast<std::size_t>(p)];
        const detail::CellData& ci = cells[static_cast<std::size_t>(i)];
        const detail::CellData& cj = cells[static_cast<std::size_t>(j)];
        double b1[3][3], m1[3][3], b2[3][3], m2[3][3];
        detail::pair_half(kf, ci, cj, gauss, tri, b1, m1);  // ((i,k),(j,l)) over T_j
        detail::pair_half(kf, cj, ci, gauss, tri, b2, m2);  // ((j,l),(i,k)) over T_i
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                double bv = 0.5 * (b1[k][l] + b2[l][k]) / (2.0 * d2);
                double mv = 0.5 * (m1[k][l] + m2[l][k]);
                out.diffusion.at(dof_index(i, k), dof_index(j, l)) = bv;
                out.diffusion.at(dof_index(j, l), dof_index(i, k)) = bv;
                out.zero_order.at(dof_index(i, k), dof_index(j, l)) = mv;
                out.zero_order.at(dof_index(j, l), dof_index(i, k)) = mv;
            }
    });

    // Diagonal blocks, including the complement term W_i = sum_{j != i} U_j
    // accumulated in sorted neighbor order (deterministic).
    parallel_for(ncells, cfg.threads, [&](int i) {
        const detail::CellData& ci = cells[static_cast<std::size_t>(i)];
        const int nq = static_cast<int>(tri.nodes.size());
        Vec2 xs[32];
        double ws[32], wsum[32] = {}, phis[32][3];
        double jac = 2.0 * ci.tri.signed_area();
        Vec2 e1 = ci.tri[1] - ci.tri[0], e2 = ci.tri[2] - ci.tri[0];
        double ip = 0.0, iq = 0.0, cp[3][3] = {};
        for (int q = 0; q < nq; ++q) {
            xs[q] = ci.tri[0] + tri.nodes[static_cast<std::size_t>(q)].x * e1 +
                    tri.nodes[static_cast<std::size_t>(q)].y * e2;
            ws[q] = tri.weights[static_cast<std::size_t>(q)] * jac;
            KernelTriangleIntegrals self = kernel_triangle_integrals(kf, xs[q], ci.tri);
            ip += ws[q] * self.p;
            iq += ws[q] * self.q;
            for (int k = 0; k < 3; ++k)
                phis[q][k] = ci.basis[static_cast<std::size_t>(k)](xs[q]);
            for (int k = 0; k < 3; ++k)
                for (int l = k; l < 3; ++l)
                    cp[k][l] += ws[q] * self.p * phis[q][k] * phis[q][l];
        }
        for (int j : out.neighbors[static_cast<std::size_t>(i)]) {
            if (j == i) continue;
            const Triangle& tj = cells[static_cast<std::size_t>(j)].tri;
            for (int q = 0; q < nq; ++q)
                wsum[q] += kernel_triangle_integrals(kf, xs[q], tj).u;
        }
        double dw[3][3] = {};
        for (int q = 0; q < nq; ++q)
            for (int k = 0; k < 3; ++k)
                for (int l = k; l < 3; ++l)
                    dw[k][l] += 2.0 * ws[q] * wsum[q] * phis[q][k] * phis[q][l];
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < k; ++l) dw[k][l] = dw[l][k];

        // Null-vector correction: the diffusion form annihilates constants, and
        // the boundary/gradient parts of the diagonal row sums vanish nodewise,
        // so the complement term must cancel the stored off-diagonal row sums
        // exactly.  Redistribute the quadrature mismatch symmetrically.
        {
            double s[3], c[3], r[3], rsum = 0.0;
            for (int k = 0; k < 3; ++k) {
                int row = dof_index(i, k);
                double off = 0.0;
                const auto& rp = out.diffusion.row_ptr();
                const auto& cidx = out.diffusion.col_idx();
                const auto& vals = out.diffusion.values();
                for (int p = rp[static_cast<std::size_t>(row)];
                     p < rp[static_cast<std::size_t>(row) + 1]; ++p) {
                    int col = cidx[static_cast<std::size_t>(p)];
                    if (col < dof_index(i, 0) || col > dof_index(i, 2))
                        off += vals[static_cast<std::size_t>(p)];
                }
                s[k] = -2.0 * d2 * off;
                c[k] = dw[k][0] + dw[k][1] + dw[k][2];
                r[k] = s[k] - c[k];
                rsum += r[k];
            }
            double u[3];
            for (int k = 0; k < 3; ++k) u[k] = (r[k] - rsum / 6.0) / 3.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) dw[k][l] += u[k] + u[l];
        }

        // double edge-pair integral of Rbarbar over the cell's own boundary
        double gee[3][3] = {};
        detail::SegmentBreaks br_out, br_in;
        for (int ex = 0; ex < 3; ++ex) {
            Vec2 a = ci.tri[ex], b = ci.tri[(ex + 1) % 3];
            br_out.from_triangle(a, b, ci.tri, horizon);
            detail::quad_segment(gauss, a, b, br_out, [&](Vec2 x, double wx) {
                for (int ey = 0; ey < 3; ++ey) {
                    Vec2 c = ci.tri[ey], d = ci.tri[(ey + 1) % 3];
                    br_in.from_point(c, d, x, horizon);
                    double acc = 0.0;
                    detail::quad_segment(gauss, c, d, br_in, [&](Vec2 y, double wy) {
                        acc += wy * kf.eval_scaled(KernelTier::Rbarbar, x, y);
                    });
                    gee[ex][ey] += wx * acc;
                }
            });
        }
        // M diagonal edge term int_e phi_l Q_i
        double sq[3][3] = {};
        for (int e = 0; e < 3; ++e) {
            Vec2 a = ci.tri[e], b = ci.tri[(e + 1) % 3];
            br_out.from_triangle(a, b, ci.tri, horizon);
            detail::quad_segment(gauss, a, b, br_out, [&](Vec2 y, double wy) {
                double qi = kernel_triangle_integrals(kf, y, ci.tri).q;
                for (int l = 0; l < 3; ++l)
                    sq[e][l] += wy * ci.basis[static_cast<std::size_t>(l)](y) * qi;
            });
        }
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < k; ++l) cp[k][l] = cp[l][k];
        double bd[3][3], md[3][3];
        for (int k = 0; k < 3; ++k) {
            Vec2 ak = ci.basis[static_cast<std::size_t>(k)].gradient;
            double en[3];
            for (int e = 0; e < 3; ++e) en[e] = dot(ak, ci.edge_normal[e]);
            for (int l = 0; l < 3; ++l) {
                Vec2 al = ci.basis[static_cast<std::size_t>(l)].gradient;
                double enl[3];
                for (int e = 0; e < 3; ++e)
                    enl[e] = dot(al, ci.edge_normal[e]);
                double ee = 0.0;
                for (int ex = 0; ex < 3; ++ex)
                    for (int ey = 0; ey < 3; ++ey) ee += en[ex] * enl[ey] * gee[ex][ey];
                double s1q = en[0] * sq[0][l] + en[1] * sq[1][l] + en[2] * sq[2][l];
                bd[k][l] = -4.0 * d2 * d2 * ee + 2.0 * d2 * dot(ak, al) * ip + dw[k][l];
                md[k][l] = 2.0 * d2 * s1q - 2.0 * d2 * dot(ak, al) * iq + cp[k][l];
            }
        }
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                double bv = 0.5 * (bd[k][l] + bd[l][k]) / (2.0 * d2);
                double mv = 0.5 * (md[k][l] + md[l][k]);
                out.diffusion.at(dof_index(i, k), dof_index(i, l)) = bv;
                out.zero_order.at(dof_index(i, k), dof_index(i, l)) = mv;
            }
    });

    return out;
}

inline SparseMatrix assemble_diffusion(const Mesh& mesh, const KernelFamily& kf,
                                       const QuadratureConfig& cfg = {}) {
    return assemble_operators(mesh, kf, cfg).diffusion;
}

inline SparseMatrix assemble_zero_order(const Mesh& mesh, const KernelFamily& kf,
                                        const QuadratureConfig& cfg = {}) {
    return assemble_operators(mesh, kf, cfg).zero_order;
}

/// Vertex-value interpolation into the discontinuous P1 space.
inline DofVector interpolate(const ScalarField& field, const Mesh& mesh) {
    DofVector v(static_cast<std::size_t>(3 * mesh.num_cells()));
    for (int i = 0; i < mesh.num_cells(); ++i)
        for (int k = 0; k < 3; ++k)
            v[static_cast<std::size_t>(dof_index(i, k))] = field(mesh.vertex(i, k));
    return v;
}

/// Neumann boundary contribution before the factor 2 of the model equation:
///   bd[(i,k)] = -2 d^2 int_{dOmega} g(y) (sum_e (a_ik . n_e) int_e Rbarbar(x,y) dS_x) dS_y
///               + int_{dOmega} g(y) phibar_ik(y) P_i(y) dS_y
/// restricted to boundary edges within 2 delta of T_i.
inline DofVector assemble_boundary_term(const Mesh& mesh, const KernelFamily& kf,
                                        const ScalarField& g, const QuadratureConfig& cfg = {}) {
    const double horizon = 2.0 * kf.delta;
    const double d2 = kf.delta * kf.delta;
    const int ncells = mesh.num_cells();
    const QuadratureRule gauss = gauss_segment(cfg.edge_points);
    DofVector bd(static_cast<std::size_t>(3 * ncells), 0.0);
    parallel_for(ncells, cfg.threads, [&](int i) {
        detail::CellData ci = detail::make_cell_data(mesh, i);
        double t1[3] = {}, t2[3] = {};
        detail::SegmentBreaks br_out, br_in;
        for (const BoundaryEdge& be : mesh.boundary_edges()) {
            Vec2 pb = mesh.vertices()[static_cast<std::size_t>(be.v1)];
            Vec2 qb = mesh.vertices()[static_cast<std::size_t>(be.v2)];
            if (segment_triangle_distance(pb, qb, ci.tri) >= horizon) continue;
            br_out.from_triangle(pb, qb, ci.tri, horizon);
            detail::quad_segment(gauss, pb, qb, br_out, [&](Vec2 y, double wy) {
                double gv = g(y);
                double pi = kernel_triangle_integrals(kf, y, ci.tri).p;
                double gsum[3];
                for (int e = 0; e < 3; ++e) {
                    Vec2 a = ci.tri[e], b = ci.tri[(e + 1) % 3];
                    br_in.from_point(a, b, y, horizon);
                    double acc = 0.0;
                    detail::quad_segment(gauss, a, b, br_in, [&](Vec2 x, double wx) {
                        acc += wx * kf.eval_scaled(KernelTier::Rbarbar, x, y);
                    });
                    gsum[e] = acc;
                }
                for (int k = 0; k < 3; ++k) {
                    const AffineBasis& phik = ci.basis[static_cast<std::size_t>(k)];
                    double inner = 0.0;
                    for (int e = 0; e < 3; ++e)
                        inner += dot(phik.gradient, ci.edge_normal[e]) * gsum[e];
                    t1[k] += wy * gv * inner;
                    t2[k] += wy * gv * phik(y) * pi;
                }
            });
        }
        for (int k = 0; k < 3; ++k)
            bd[static_cast<std::size_t>(dof_index(i, k))] = -2.0 * d2 * t1[k] + t2[k];
    });
    return bd;
}

struct AssembledSystem {
    SparseMatrix S;  // D + M
    DofVector b;
};

/// Full discrete system of the nonlocal model: S c = b with S = D + M and
/// b = M * interpolate(f) + 2 * boundary term.
inline AssembledSystem assemble_system(const Mesh& mesh, const KernelFamily& kf,
                                       const ScalarField& f, const ScalarField& g,
                                       const QuadratureConfig& cfg = {}) {
    AssembledOperators ops = assemble_operators(mesh, kf, cfg);
    DofVector fvec = interpolate(f, mesh);
    DofVector b;
    ops.zero_order.apply(fvec, b);
    DofVector bd = assemble_boundary_term(mesh, kf, g, cfg);
    for (std::size_t r = 0; r < b.size(); ++r) b[r] += 2.0 * bd[r];
    AssembledSystem sys;
    ops.diffusion += ops.zero_order;
    sys.S = std::move(ops.diffusion);
    sys.b = std::move(b);
    return sys;
}

/// b = M * interpolate(f) + 2 * boundary term (assembles M internally).
inline DofVector assemble_rhs(const Mesh& mesh, const KernelFamily& kf, const ScalarField& f,
                              const ScalarField& g, const QuadratureConfig& cfg = {}) {
    SparseMatrix m = assemble_zero_order(mesh, kf, cfg);
    DofVector fvec = interpolate(f, mesh);
    DofVector b;
    m.apply(fvec, b);
    DofVector bd = assemble_boundary_term(mesh, kf, g, cfg);
    for (std::size_t r = 0; r < b.size(); ++r) b[r] += 2.0 * bd[r];
    return b;
}

} // namespace nlfem
