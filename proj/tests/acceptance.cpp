// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlfem/assembly.hpp"
#include "nlfem/oracle.hpp"
#include "nlfem/problems.hpp"
#include "nlfem/solver.hpp"
#include "nlfem/verify.hpp"

using namespace nlfem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = fn();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, detail, secs);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

ScalarField poly_f() {
    return [](Vec2 p) { return 0.25 + 1.25 * p.x - 0.5 * p.y + 0.75 * p.x * p.y; };
}
ScalarField poly_g() {
    return [](Vec2 p) { return 0.4 - 0.3 * p.x + 0.9 * p.y; };
}

std::string solution_csv(const Mesh& mesh, const DofVector& c) {
    std::ostringstream out;
    out << "cell,local,x,y,value\n";
    char buf[160];
    for (int i = 0; i < mesh.num_cells(); ++i)
        for (int k = 0; k < 3; ++k) {
            Vec2 v = mesh.vertex(i, k);
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", i, k, v.x, v.y,
                          c[static_cast<std::size_t>(dof_index(i, k))]);
            out << buf;
        }
    return out.str();
}

struct LevelRow {
    double l2 = 0.0, linf = 0.0;
    int cg_iters = 0;
};

LevelRow run_level(int n, double ratio, int threads) {
    Problem prob = cosine_problem();
    double h = 1.0 / n;
    Mesh mesh = generate_unit_square_mesh(n);
    KernelFamily kf = make_kernel_family({1.0, -1.0}, ratio * h);
    AssembledSystem sys = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, threads});
    CgResult res = conjugate_gradient(sys.S, sys.b);
    ErrorNorms err = error_norms(res.x, prob.exact, mesh);
    return {err.l2, err.linf, res.iterations};
}

}  // namespace

int main() {
    // 1. kernel normalization
    run(1, "kernel normalization", []() -> std::pair<bool, std::string> {
        std::mt19937_64 rng(1001);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        std::vector<std::vector<double>> kernels = {parse_kernel_preset("const"),
                                                    parse_kernel_preset("quadratic")};
        for (int t = 0; t < 5; ++t) {
            std::vector<double> c(static_cast<std::size_t>(1 + t % 4));
            for (auto& v : c) v = u(rng);
            kernels.push_back(c);
        }
        double worst = 0.0;
        for (const auto& c : kernels) {
            KernelFamily kf = make_kernel_family(c, 0.2 + u(rng));
            double moment = 0.5 * kf.rbar_poly.integral_01();
            worst = std::max(worst,
                             std::abs(2.0 * std::numbers::pi * kf.alpha2 * moment - 1.0));
        }
        return {worst <= 1e-12, "max |2 pi alpha2 moment - 1| = " + fmt(worst)};
    });

    // 2. exact-integration oracles
    run(2, "triangle-disk integration vs analytic and Monte Carlo",
        []() -> std::pair<bool, std::string> {
            Triangle t{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}}};
            double e1 =
                std::abs(triangle_disk_poly(Polynomial({1.0}), 10.0, t.centroid(), t) - 0.5);
            double e2 = std::abs(
                triangle_disk_poly(Polynomial({0.0, 1.0}), 0.5, {0, 0}, t) - 1.0 / 6.0);
            if (e1 > 1e-12 || e2 > 1e-12)
                return {false, "analytic values off: " + fmt(e1) + ", " + fmt(e2)};
            std::mt19937_64 rng(2002);
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            std::uniform_real_distribution<double> uc(-0.5, 1.5);
            double worst_sigma = 0.0;
            for (int cfg = 0; cfg < 50; ++cfg) {
                Triangle tri = detail::random_triangle(rng, 1.0);
                Vec2 c{uc(rng), uc(rng)};
                double delta = (0.15 + 0.35 * u01(rng)) * tri.diameter();
                Polynomial p({u01(rng), 2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0});
                double exact = triangle_disk_poly(p, delta, c, tri);
                double sum = 0.0, sum_sq = 0.0;
                const long m = 1000000;
                double rho2 = 4.0 * delta * delta;
                for (long s = 0; s < m; ++s) {
                    Vec2 y = detail::sample_triangle(tri, rng);
                    double r2 = squared_norm(y - c);
                    double v = r2 < rho2 ? p(r2 / rho2) : 0.0;
                    sum += v;
                    sum_sq += v * v;
                }
                double mean = sum / m;
                double var = std::max(0.0, sum_sq / m - mean * mean);
                double est = tri.signed_area() * mean;
                double se = tri.signed_area() * std::sqrt(var / m);
                if (se > 0.0)
                    worst_sigma = std::max(worst_sigma, std::abs(est - exact) / se);
            }
            return {worst_sigma <= 4.0,
                    "50 configs at 1e6 samples, max |err|/se = " + fmt(worst_sigma)};
        });

    // 3. secant recurrence
    run(3, "secant recurrence vs adaptive integration", []() -> std::pair<bool, std::string> {
        std::mt19937_64 rng(3003);
        std::uniform_real_distribution<double> uth(-1.4, 1.4);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            double a = uth(rng), b = uth(rng);
            if (a > b) std::swap(a, b);
            for (int n = 1; n <= 12; ++n) {
                double exact = detail::adaptive_simpson(
                    [n](double th) { return std::pow(1.0 / std::cos(th), n); }, a, b);
                double got = secant_power_integral(n, a, b);
                worst = std::max(worst,
                                 std::abs(got - exact) / std::max(1e-14, std::abs(exact)));
            }
        }
        return {worst <= 1e-10, "max rel = " + fmt(worst)};
    });

    // 4. reduced vs direct equivalence (+ timing reused by criterion 8)
    double mc_seconds = 0.0;
    run(4, "reduced assembly vs brute-force oracle", [&mc_seconds]() -> std::pair<bool, std::string> {
        // (a) no-clipping regime: every entry of D, M, b
        double worst = 0.0;
        for (const char* preset : {"const", "quadratic"}) {
            Mesh mesh = generate_unit_square_mesh(2);
            KernelFamily kf = make_kernel_family(parse_kernel_preset(preset), 0.8);
            AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
            DofVector b = assemble_rhs(mesh, kf, poly_f(), poly_g(), {8, 6, 1});
            double dmax = ops.diffusion.max_abs(), mmax = ops.zero_order.max_abs();
            double bmax = 0.0;
            for (double v : b) bmax = std::max(bmax, std::abs(v));
            for (int i = 0; i < mesh.num_cells(); ++i)
                for (int k = 0; k < 3; ++k) {
                    for (int j = 0; j < mesh.num_cells(); ++j)
                        for (int l = 0; l < 3; ++l) {
                            double rd = ops.diffusion.get(dof_index(i, k), dof_index(j, l));
                            double od = brute_force_diffusion_entry(mesh, kf, i, k, j, l, 8);
                            worst = std::max(worst, std::abs(rd - od) /
                                                        std::max(std::abs(od), 1e-13 * dmax));
                            double rm = ops.zero_order.get(dof_index(i, k), dof_index(j, l));
                            double om = brute_force_zero_order_entry(mesh, kf, i, k, j, l, 8);
                            worst = std::max(worst, std::abs(rm - om) /
                                                        std::max(std::abs(om), 1e-13 * mmax));
                        }
                    double rb = b[static_cast<std::size_t>(dof_index(i, k))];
                    double ob = brute_force_rhs_entry(mesh, kf, poly_f(), poly_g(), i, k, 8);
                    worst = std::max(worst,
                                     std::abs(rb - ob) / std::max(std::abs(ob), 1e-13 * bmax));
                }
        }
        if (worst > 1e-8) return {false, "no-clipping worst rel = " + fmt(worst)};

        // (b) clipped regime: 30 sampled entries vs Monte Carlo at 1e7 samples
        Mesh mesh = generate_unit_square_mesh(8);
        KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.5);  // 4h
        AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
        DofVector b = assemble_rhs(mesh, kf, poly_f(), poly_g(), {8, 6, 1});
        std::mt19937_64 rng(4004);
        std::uniform_int_distribution<int> cell(0, mesh.num_cells() - 1);
        std::uniform_int_distribution<int> loc(0, 2);
        const long samples = 10000000;
        double worst_sigma = 0.0;
        auto t0 = std::chrono::steady_clock::now();
        int done = 0;
        while (done < 14) {  // diffusion entries, mix of diagonal and off-diagonal
            int i = cell(rng), k = loc(rng), l = loc(rng);
            int j = i;
            if (done % 2 == 1) {
                auto nb = mesh.cells_within(i, 2.0 * kf.delta);
                j = nb[static_cast<std::size_t>(cell(rng)) % nb.size()];
                if (triangle_distance(mesh.triangle(i), mesh.triangle(j)) >= 2.0 * kf.delta)
                    continue;
            }
            double red = ops.diffusion.get(dof_index(i, k), dof_index(j, l));
            McEstimate mc = mc_diffusion_entry(mesh, kf, i, k, j, l, samples,
                                               40000 + static_cast<std::uint64_t>(done));
            if (mc.std_error > 0.0)
                worst_sigma = std::max(worst_sigma, std::abs(red - mc.value) / mc.std_error);
            ++done;
        }
        for (int t = 0; t < 10; ++t) {  // zero-order entries
            int i = cell(rng), k = loc(rng), l = loc(rng), j = i;
            if (t % 2 == 1) {
                auto nb = mesh.cells_within(i, 2.0 * kf.delta);
                j = nb[static_cast<std::size_t>(cell(rng)) % nb.size()];
                if (triangle_distance(mesh.triangle(i), mesh.triangle(j)) >= 2.0 * kf.delta) {
                    --t;
                    continue;
                }
            }
            double red = ops.zero_order.get(dof_index(i, k), dof_index(j, l));
            McEstimate mc = mc_zero_order_entry(mesh, kf, i, k, j, l, samples,
                                                41000 + static_cast<std::uint64_t>(t));
            if (mc.std_error > 0.0)
                worst_sigma = std::max(worst_sigma, std::abs(red - mc.value) / mc.std_error);
        }
        for (int t = 0; t < 6; ++t) {  // rhs entries
            int i = cell(rng), k = loc(rng);
            double red = b[static_cast<std::size_t>(dof_index(i, k))];
            McEstimate mc = mc_rhs_entry(mesh, kf, poly_f(), poly_g(), i, k, samples,
                                         42000 + static_cast<std::uint64_t>(t));
            if (mc.std_error > 0.0)
                worst_sigma = std::max(worst_sigma, std::abs(red - mc.value) / mc.std_error);
        }
        mc_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = worst_sigma <= 4.0;
        return {pass, "no-clip worst rel = " + fmt(worst) + "; clipped 30 entries max |err|/se = " +
                          fmt(worst_sigma)};
    });

    // 5. structural properties on n=16
    run(5, "structural properties (null vector, symmetry, sparsity)",
        []() -> std::pair<bool, std::string> {
            Mesh mesh = generate_unit_square_mesh(16);
            double h = 1.0 / 16;
            KernelFamily kf = make_kernel_family({1.0, -1.0}, 4.0 * h);
            AssembledOperators ops = assemble_operators(mesh, kf, {8, 6, 1});
            DofVector ones(static_cast<std::size_t>(3 * mesh.num_cells()), 1.0), y;
            ops.diffusion.apply(ones, y);
            double null_err = 0.0;
            for (double v : y) null_err = std::max(null_err, std::abs(v));
            double dmax = ops.diffusion.max_abs();
            double sym_d = ops.diffusion.symmetry_error() / dmax;
            double sym_m = ops.zero_order.symmetry_error() / ops.zero_order.max_abs();
            bool sparsity_ok = true;
            double horizon = 2.0 * kf.delta;
            for (int i = 0; i < mesh.num_cells() && sparsity_ok; ++i)
                for (int j = 0; j < mesh.num_cells(); ++j) {
                    bool stored = ops.diffusion.has_entry(dof_index(i, 0), dof_index(j, 0));
                    bool interacting =
                        triangle_distance(mesh.triangle(i), mesh.triangle(j)) < horizon;
                    if (stored != interacting) {
                        sparsity_ok = false;
                        break;
                    }
                }
            bool pass = null_err <= 1e-8 * dmax && sym_d <= 1e-10 && sym_m <= 1e-10 &&
                        sparsity_ok;
            return {pass, "|D 1|/|D|max = " + fmt(null_err / dmax) + ", sym " + fmt(sym_d) +
                              "/" + fmt(sym_m) + ", sparsity " +
                              (sparsity_ok ? "ok" : "VIOLATED")};
        });

    // 6. exact discrete solution of the constant problem
    run(6, "constant problem solves to u = 1", []() -> std::pair<bool, std::string> {
        Problem prob = constant_problem();
        double worst = 0.0;
        for (int n : {4, 8})
            for (double ratio : {2.0, 4.0}) {
                double h = 1.0 / n;
                Mesh mesh = generate_unit_square_mesh(n);
                KernelFamily kf = make_kernel_family({1.0, -1.0}, ratio * h);
                AssembledSystem sys = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, 1});
                CgResult res = conjugate_gradient(sys.S, sys.b);
                for (double v : res.x) worst = std::max(worst, std::abs(v - 1.0));
            }
        return {worst <= 1e-6, "max |c - 1| over n in {4,8}, delta in {2h,4h}: " + fmt(worst)};
    });

    // 7. convergence of the cosine problem
    std::vector<LevelRow> conv_rows;
    run(7, "cosine problem converges with delta = 2h", [&conv_rows]() -> std::pair<bool, std::string> {
        std::string detail = "l2:";
        bool pass = true;
        double prev = 0.0;
        for (int level = 0; level < 3; ++level) {
            int n = 4 << level;
            LevelRow row = run_level(n, 2.0, 1);
            conv_rows.push_back(row);
            detail += " " + fmt(row.l2);
            if (level > 0 && !(row.l2 * 2.0 <= prev)) pass = false;
            prev = row.l2;
        }
        return {pass, detail + " (each level down by >= 2x)"};
    });

    // 8. performance of the reduced assembly
    run(8, "reduced assembly outruns the Monte Carlo oracle", [&mc_seconds]() -> std::pair<bool, std::string> {
        Mesh mesh8 = generate_unit_square_mesh(8);
        KernelFamily kf8 = make_kernel_family({1.0, -1.0}, 0.5);
        auto t0 = std::chrono::steady_clock::now();
        AssembledOperators ops = assemble_operators(mesh8, kf8, {8, 6, 1});
        double t_red = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        (void)ops;
        Mesh mesh32 = generate_unit_square_mesh(32);
        KernelFamily kf32 = make_kernel_family({1.0, -1.0}, 4.0 / 32.0);
        Problem prob = cosine_problem();
        t0 = std::chrono::steady_clock::now();
        AssembledSystem sys = assemble_system(mesh32, kf32, prob.f, prob.g, {8, 6, 1});
        double t32 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        (void)sys;
        bool pass = mc_seconds >= 10.0 * t_red && t32 < 60.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "n=8 reduced %.2f s vs MC oracle %.1f s (%.0fx); n=32 full %.1f s",
                      t_red, mc_seconds, mc_seconds / std::max(t_red, 1e-9), t32);
        return {pass, buf};
    });

    // 9. determinism
    run(9, "deterministic outputs", [&conv_rows]() -> std::pair<bool, std::string> {
        Problem prob = cosine_problem();
        Mesh mesh = generate_unit_square_mesh(8);
        KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.25);
        AssembledSystem s1 = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, 1});
        AssembledSystem s2 = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, 1});
        DofVector c1 = conjugate_gradient(s1.S, s1.b).x;
        DofVector c2 = conjugate_gradient(s2.S, s2.b).x;
        if (solution_csv(mesh, c1) != solution_csv(mesh, c2))
            return {false, "rerun CSV differs"};
        AssembledSystem s4 = assemble_system(mesh, kf, prob.f, prob.g, {8, 6, 4});
        DofVector c4 = conjugate_gradient(s4.S, s4.b).x;
        double worst = 0.0;
        for (std::size_t r = 0; r < c1.size(); ++r)
            worst = std::max(worst, std::abs(c1[r] - c4[r]));
        if (worst > 1e-12)
            return {false, "thread-count drift " + fmt(worst)};
        // convergence error columns reproduce bit-identically
        for (int level = 0; level < 3; ++level) {
            LevelRow again = run_level(4 << level, 2.0, 1);
            if (again.l2 != conv_rows[static_cast<std::size_t>(level)].l2 ||
                again.linf != conv_rows[static_cast<std::size_t>(level)].linf)
                return {false, "convergence rerun differs at level " + std::to_string(level)};
        }
        return {true, "reruns bit-identical; cross-thread max diff = " + fmt(worst)};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
