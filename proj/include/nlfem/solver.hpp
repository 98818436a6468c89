#pragma once

#include <cmath>
#include <functional>

#include "nlfem/assembly.hpp"
#include "nlfem/errors.hpp"
#include "nlfem/mesh.hpp"
#include "nlfem/quadrature.hpp"
#include "nlfem/sparse.hpp"

namespace nlfem {

struct CgResult {
    DofVector x;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for the SPD system S x = b.
/// Deterministic: fixed-order row sums, no reductions that depend on
/// scheduling.  The optional callback sees (iteration, relative residual).
inline CgResult conjugate_gradient(const SparseMatrix& s, const DofVector& b, double tol = 1e-10,
                                   int maxiter = 0,
                                   const std::function<void(int, double)>& log = {}) {
    const int n = s.size();
    if (s.symmetry_error() > 1e-10 * std::max(s.max_abs(), 1e-300))
        throw NonSymmetric("conjugate_gradient: matrix is not symmetric");
    if (maxiter <= 0) maxiter = 20 * n;
    std::vector<double> inv_diag(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        double d = s.get(r, r);
        if (d == 0.0) throw ZeroDiagonal("conjugate_gradient: zero diagonal entry");
        inv_diag[static_cast<std::size_t>(r)] = 1.0 / d;
    }
    auto dot_v = [n](const DofVector& a, const DofVector& c) {
        double t = 0.0;
        for (int i = 0; i < n; ++i)
            t += a[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
        return t;
    };
    CgResult res;
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    double bnorm = std::sqrt(dot_v(b, b));
    if (bnorm == 0.0) return res;  // x = 0 solves exactly
    DofVector r = b, z(static_cast<std::size_t>(n)), p, q;
    for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] *
                                         inv_diag[static_cast<std::size_t>(i)];
    p = z;
    double rz = dot_v(r, z);
    for (int it = 1; it <= maxiter; ++it) {
        s.apply(p, q);
        double alpha = rz / dot_v(p, q);
        for (int i = 0; i < n; ++i) {
            res.x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
            r[static_cast<std::size_t>(i)] -= alpha * q[static_cast<std::size_t>(i)];
        }
        double relres = std::sqrt(dot_v(r, r)) / bnorm;
        if (log) log(it, relres);
        res.iterations = it;
        res.relative_residual = relres;
        if (relres <= tol) return res;
        for (int i = 0; i < n; ++i)
            z[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] *
                                             inv_diag[static_cast<std::size_t>(i)];
        double rz_next = dot_v(r, z);
        double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] =
                z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
    }
    throw NotConverged(res.iterations, res.relative_residual);
}

struct ErrorNorms {
    double l2 = 0.0;
    double linf = 0.0;
};

/// L2 norm of (sum_k c_{i,k} phi_{i,k} - exact) by triangle quadrature and
/// max-norm of the dof-vertex errors.
inline ErrorNorms error_norms(const DofVector& c, const ScalarField& exact, const Mesh& mesh,
                              const QuadratureConfig& cfg = {}) {
    QuadratureRule tri = triangle_rule(cfg.tri_degree);
    ErrorNorms out;
    double acc = 0.0;
    for (int i = 0; i < mesh.num_cells(); ++i) {
        Triangle t = mesh.triangle(i);
        auto basis = mesh.basis_functions(i);
        double jac = 2.0 * t.signed_area();
        Vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
        for (std::size_t q = 0; q < tri.nodes.size(); ++q) {
            Vec2 x = t[0] + tri.nodes[q].x * e1 + tri.nodes[q].y * e2;
            double uh = 0.0;
            for (int k = 0; k < 3; ++k)
                uh += c[static_cast<std::size_t>(dof_index(i, k))] *
                      basis[static_cast<std::size_t>(k)](x);
            double diff = uh - exact(x);
            acc += tri.weights[q] * jac * diff * diff;
        }
        for (int k = 0; k < 3; ++k) {
            double diff = c[static_cast<std::size_t>(dof_index(i, k))] -
                          exact(mesh.vertex(i, k));
            out.linf = std::max(out.linf, std::abs(diff));
        }
    }
    out.l2 = std::sqrt(acc);
    return out;
}

} // namespace nlfem
