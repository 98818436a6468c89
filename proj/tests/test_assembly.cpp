#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nlfem/assembly.hpp"
#include "nlfem/problems.hpp"
#include "nlfem/solver.hpp"

using namespace nlfem;
using Catch::Approx;

TEST_CASE("diffusion matrix annihilates constants") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.5);  // 2h
    SparseMatrix d = assemble_diffusion(mesh, kf, {8, 6, 1});
    DofVector ones(static_cast<std::size_t>(3 * mesh.num_cells()), 1.0), y;
    d.apply(ones, y);
    double worst = 0.0;
    for (double v : y) worst = std::max(worst, std::abs(v));
    REQUIRE(worst <= 1e-8 * d.max_abs());
}

TEST_CASE("operators are symmetric") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.25);
    AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
    REQUIRE(ops.diffusion.symmetry_error() <= 1e-10 * ops.diffusion.max_abs());
    REQUIRE(ops.zero_order.symmetry_error() <= 1e-10 * ops.zero_order.max_abs());
}

TEST_CASE("sparsity respects the interaction horizon") {
    Mesh mesh = generate_unit_square_mesh(6);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.1);
    AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
    double horizon = 2.0 * kf.delta;
    for (int i = 0; i < mesh.num_cells(); ++i) {
        for (int j : ops.neighbors[static_cast<std::size_t>(i)])
            REQUIRE(triangle_distance(mesh.triangle(i), mesh.triangle(j)) < horizon);
        for (int j = 0; j < mesh.num_cells(); ++j) {
            bool stored = ops.diffusion.has_entry(dof_index(i, 0), dof_index(j, 0));
            bool interacting =
                triangle_distance(mesh.triangle(i), mesh.triangle(j)) < horizon;
            REQUIRE(stored == interacting);
        }
    }
}

TEST_CASE("zero-order row applied to ones equals the covered mass") {
    // interior cell farther than 2 delta from the boundary: the inner integral
    // of Rbar_delta over the plane is 4 under the adopted normalization, so
    // (M 1)_(i,k) = 4 area/3.
    Mesh mesh = generate_unit_square_mesh(8);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.05);
    SparseMatrix m = assemble_zero_order(mesh, kf, {8, 6, 1});
    DofVector ones(static_cast<std::size_t>(3 * mesh.num_cells()), 1.0), y;
    m.apply(ones, y);
    int checked = 0;
    for (int i = 0; i < mesh.num_cells(); ++i) {
        Triangle t = mesh.triangle(i);
        double dist_to_boundary = std::min({t[0].x, t[0].y, 1.0 - t[0].x, 1.0 - t[0].y,
                                            t[1].x, t[1].y, 1.0 - t[1].x, 1.0 - t[1].y,
                                            t[2].x, t[2].y, 1.0 - t[2].x, 1.0 - t[2].y});
        if (dist_to_boundary <= 2.0 * kf.delta) continue;
        double expect = 4.0 * mesh.cell_area(i) / 3.0;
        for (int k = 0; k < 3; ++k)
            REQUIRE(y[static_cast<std::size_t>(dof_index(i, k))] ==
                    Approx(expect).epsilon(1e-8));
        ++checked;
    }
    REQUIRE(checked > 0);
}

TEST_CASE("horizon guard") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0}, 0.001);
    REQUIRE_THROWS_AS(assemble_diffusion(mesh, kf, {8, 6, 1}), HorizonTooSmall);
}

TEST_CASE("interpolation into the discontinuous space") {
    Mesh mesh = generate_unit_square_mesh(2);
    DofVector v1 = interpolate([](Vec2) { return 1.0; }, mesh);
    for (double v : v1) REQUIRE(v == 1.0);
    DofVector vx = interpolate([](Vec2 p) { return p.x; }, mesh);
    bool found = false;
    for (int i = 0; i < mesh.num_cells(); ++i)
        for (int k = 0; k < 3; ++k) {
            Vec2 p = mesh.vertex(i, k);
            if (p.x == 0.5 && p.y == 0.0) {
                REQUIRE(vx[static_cast<std::size_t>(dof_index(i, k))] == 0.5);
                found = true;
            }
        }
    REQUIRE(found);
    // affine fields are reproduced exactly on each cell
    ScalarField affine = [](Vec2 p) { return 2.0 - 0.7 * p.x + 0.3 * p.y; };
    DofVector va = interpolate(affine, mesh);
    for (int i = 0; i < mesh.num_cells(); ++i) {
        auto basis = mesh.basis_functions(i);
        Vec2 probe = mesh.cell_centroid(i);
        double uh = 0.0;
        for (int k = 0; k < 3; ++k)
            uh += va[static_cast<std::size_t>(dof_index(i, k))] *
                  basis[static_cast<std::size_t>(k)](probe);
        REQUIRE(uh == Approx(affine(probe)).epsilon(1e-13));
    }
}

TEST_CASE("rhs with zero data is zero") {
    Mesh mesh = generate_unit_square_mesh(2);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.3);
    DofVector b = assemble_rhs(
        mesh, kf, [](Vec2) { return 0.0; }, [](Vec2) { return 0.0; }, {8, 6, 1});
    for (double v : b) REQUIRE(v == 0.0);
}

TEST_CASE("rhs with unit forcing matches the covered mass in the interior") {
    Mesh mesh = generate_unit_square_mesh(8);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.05);
    DofVector b = assemble_rhs(
        mesh, kf, [](Vec2) { return 1.0; }, [](Vec2) { return 0.0; }, {8, 6, 1});
    int i = -1;  // pick a central cell
    for (int c = 0; c < mesh.num_cells(); ++c)
        if (norm(mesh.cell_centroid(c) - Vec2{0.5, 0.5}) < 0.08) i = c;
    REQUIRE(i >= 0);
    for (int k = 0; k < 3; ++k)
        REQUIRE(b[static_cast<std::size_t>(dof_index(i, k))] ==
                Approx(4.0 * mesh.cell_area(i) / 3.0).epsilon(1e-8));
}

TEST_CASE("constant problem is solved exactly") {
    Problem prob = constant_problem();
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.25);
    AssembledSystem sys = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, 1});
    REQUIRE(sys.S.symmetry_error() <= 1e-10 * sys.S.max_abs());
    CgResult res = conjugate_gradient(sys.S, sys.b);
    for (double v : res.x) REQUIRE(v == Approx(1.0).margin(1e-6));
}

TEST_CASE("quadrature refinement consistency") {
    Mesh mesh = generate_unit_square_mesh(8);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.5);  // 4h
    AssembledOperators coarse = assemble_operators(mesh, kf, {8, 6, 1});
    AssembledOperators fine = assemble_operators(mesh, kf, {16, 10, 1});
    const auto& cv = coarse.diffusion.values();
    const auto& fv = fine.diffusion.values();
    REQUIRE(cv.size() == fv.size());
    double scale = coarse.diffusion.max_abs();
    double worst = 0.0;
    for (std::size_t p = 0; p < cv.size(); ++p)
        worst = std::max(worst, std::abs(cv[p] - fv[p]));
    REQUIRE(worst <= 1e-6 * scale);
    const auto& cm = coarse.zero_order.values();
    const auto& fm = fine.zero_order.values();
    double worst_m = 0.0;
    for (std::size_t p = 0; p < cm.size(); ++p)
        worst_m = std::max(worst_m, std::abs(cm[p] - fm[p]));
    REQUIRE(worst_m <= 1e-6 * coarse.zero_order.max_abs());
}

TEST_CASE("assembly results are independent of the thread cap") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.25);
    AssembledOperators a1 = assemble_operators(mesh, kf, {8, 6, 1});
    AssembledOperators a4 = assemble_operators(mesh, kf, {8, 6, 4});
    REQUIRE(a1.diffusion.values() == a4.diffusion.values());
    REQUIRE(a1.zero_order.values() == a4.zero_order.values());
}

TEST_CASE("matrix market export format") {
    Mesh mesh = generate_unit_square_mesh(1);
    KernelFamily kf = make_kernel_family({1.0}, 0.4);
    SparseMatrix m = assemble_zero_order(mesh, kf, {8, 6, 1});
    std::ostringstream out;
    m.write_matrix_market(out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "%%MatrixMarket matrix coordinate real symmetric");
    int rows = 0, cols = 0;
    long nnz = 0;
    in >> rows >> cols >> nnz;
    REQUIRE(rows == 6);
    REQUIRE(cols == 6);
    long count = 0;
    int r = 0, c = 0;
    double v = 0.0;
    while (in >> r >> c >> v) {
        REQUIRE(r >= c);  // lower-triangle storage
        REQUIRE(r >= 1);
        REQUIRE(r <= 6);
        ++count;
    }
    REQUIRE(count == nnz);
}
