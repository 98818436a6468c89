#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nlfem/assembly.hpp"
#include "nlfem/oracle.hpp"

using namespace nlfem;
using Catch::Approx;

TEST_CASE("tensor oracle matches reduced assembly without clipping") {
    Mesh mesh = generate_unit_square_mesh(2);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.8);
    AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> cell(0, mesh.num_cells() - 1);
    std::uniform_int_distribution<int> loc(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        int i = cell(rng), j = cell(rng), k = loc(rng), l = loc(rng);
        double red_d = ops.diffusion.get(dof_index(i, k), dof_index(j, l));
        double orc_d = brute_force_diffusion_entry(mesh, kf, i, k, j, l, 8);
        REQUIRE(std::abs(red_d - orc_d) <= 1e-8 * std::max(1.0, std::abs(orc_d)));
        double red_m = ops.zero_order.get(dof_index(i, k), dof_index(j, l));
        double orc_m = brute_force_zero_order_entry(mesh, kf, i, k, j, l, 8);
        REQUIRE(std::abs(red_m - orc_m) <= 1e-8 * std::max(1.0, std::abs(orc_m)));
    }
}

TEST_CASE("oracle entries are symmetric") {
    Mesh mesh = generate_unit_square_mesh(1);
    KernelFamily kf = make_kernel_family({1.0}, 2.0);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            double a = brute_force_diffusion_entry(mesh, kf, 0, k, 1, l, 8);
            double b = brute_force_diffusion_entry(mesh, kf, 1, l, 0, k, 8);
            REQUIRE(a == Approx(b).margin(1e-12));
        }
}

TEST_CASE("oracle is stable under quadrature-order refinement") {
    Mesh mesh = generate_unit_square_mesh(2);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.8);
    for (auto [i, k, j, l] : {std::array<int, 4>{0, 0, 0, 0}, {1, 2, 3, 1}, {4, 1, 2, 0}}) {
        double d8 = brute_force_diffusion_entry(mesh, kf, i, k, j, l, 8);
        double d10 = brute_force_diffusion_entry(mesh, kf, i, k, j, l, 10);
        REQUIRE(std::abs(d8 - d10) <= 1e-10 * std::max(1.0, std::abs(d8)));
        double m8 = brute_force_zero_order_entry(mesh, kf, i, k, j, l, 8);
        double m10 = brute_force_zero_order_entry(mesh, kf, i, k, j, l, 10);
        REQUIRE(std::abs(m8 - m10) <= 1e-10 * std::max(1.0, std::abs(m8)));
    }
}

TEST_CASE("tensor oracle refuses the clipped regime") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0}, 0.2);
    REQUIRE_THROWS_AS(brute_force_diffusion_entry(mesh, kf, 0, 0, 1, 0, 8), RegimeError);
    REQUIRE_THROWS_AS(brute_force_zero_order_entry(mesh, kf, 0, 0, 1, 0, 8), RegimeError);
}

TEST_CASE("rhs oracle with zero boundary flux") {
    Mesh mesh = generate_unit_square_mesh(2);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.8);
    auto f = [](Vec2 p) { return 1.0 + p.x - 0.5 * p.y; };
    auto zero = [](Vec2) { return 0.0; };
    DofVector b = assemble_rhs(mesh, kf, f, zero, {8, 6, 1});
    for (int i : {0, 3, 7})
        for (int k = 0; k < 3; ++k) {
            double orc = brute_force_rhs_entry(mesh, kf, f, zero, i, k, 8);
            REQUIRE(b[static_cast<std::size_t>(dof_index(i, k))] ==
                    Approx(orc).epsilon(1e-8));
        }
}

TEST_CASE("rhs oracle with nonzero boundary flux") {
    Mesh mesh = generate_unit_square_mesh(2);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.8);
    auto f = [](Vec2 p) { return 0.3 + 0.2 * p.y; };
    auto g = [](Vec2 p) { return 1.0 - 0.8 * p.x + 0.5 * p.y; };
    DofVector b = assemble_rhs(mesh, kf, f, g, {8, 6, 1});
    for (int i : {0, 5})
        for (int k = 0; k < 3; ++k) {
            double orc = brute_force_rhs_entry(mesh, kf, f, g, i, k, 8);
            REQUIRE(b[static_cast<std::size_t>(dof_index(i, k))] ==
                    Approx(orc).epsilon(1e-7).margin(1e-12));
        }
}

TEST_CASE("monte carlo standard error shrinks as 1/sqrt(samples)") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.25);
    McEstimate small = mc_zero_order_entry(mesh, kf, 5, 0, 5, 1, 100000, 42);
    McEstimate large = mc_zero_order_entry(mesh, kf, 5, 0, 5, 1, 1000000, 43);
    double ratio = large.std_error / small.std_error;
    REQUIRE(ratio > 0.2);
    REQUIRE(ratio < 0.45);  // 1/sqrt(10) ~ 0.316
}

TEST_CASE("monte carlo entries vanish beyond the horizon") {
    Mesh mesh = generate_unit_square_mesh(4);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.05);
    // cells 0 and last are far apart compared to 2 delta = 0.1
    McEstimate e =
        mc_diffusion_entry(mesh, kf, 0, 0, mesh.num_cells() - 1, 2, 20000, 99);
    REQUIRE(e.value == 0.0);
    REQUIRE(e.std_error == 0.0);
}

TEST_CASE("monte carlo agrees with reduced assembly in the clipped regime") {
    Mesh mesh = generate_unit_square_mesh(8);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.5);
    AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
    struct Probe {
        int i, k, j, l;
    };
    for (Probe p : {Probe{10, 0, 10, 1}, Probe{10, 0, 11, 2}, Probe{40, 1, 53, 0}}) {
        double red = ops.diffusion.get(dof_index(p.i, p.k), dof_index(p.j, p.l));
        McEstimate mc = mc_diffusion_entry(mesh, kf, p.i, p.k, p.j, p.l, 2000000, 1234);
        INFO("entry (" << p.i << "," << p.k << "),(" << p.j << "," << p.l << "): reduced "
                       << red << " mc " << mc.value << " se " << mc.std_error);
        REQUIRE(std::abs(red - mc.value) <= 4.0 * mc.std_error);
        double redm = ops.zero_order.get(dof_index(p.i, p.k), dof_index(p.j, p.l));
        McEstimate mcm = mc_zero_order_entry(mesh, kf, p.i, p.k, p.j, p.l, 2000000, 4321);
        REQUIRE(std::abs(redm - mcm.value) <= 4.0 * mcm.std_error);
    }
}
