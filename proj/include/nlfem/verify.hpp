#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "nlfem/assembly.hpp"
#include "nlfem/exact_integrate.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/mesh.hpp"
#include "nlfem/oracle.hpp"

namespace nlfem {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Independent numeric integrator used as the oracle for the secant recurrence.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

inline Triangle random_triangle(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    for (;;) {
        Triangle t{{Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}}};
        if (t.signed_area() < 0.0) std::swap(t.v[1], t.v[2]);
        if (t.signed_area() > 0.05 * scale * scale) return t;
    }
}

} // namespace detail

/// Kernel-module properties: normalization, differentiation identities,
/// exact support, and the gradient identity behind the reduction.
inline std::vector<PropertyResult> run_kernel_suite() {
    std::vector<PropertyResult> out;
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    {  // Eq.-(5)-style normalization, exact moment evaluation
        double worst = 0.0;
        std::vector<std::vector<double>> kernels = {{1.0}, {1.0, -1.0}};
        for (int r = 0; r < 5; ++r) {
            std::vector<double> c(static_cast<std::size_t>(1 + (r % 4)));
            for (auto& v : c) v = u01(rng);  // positive coefficients: positive moment
            kernels.push_back(c);
        }
        for (const auto& c : kernels) {
            KernelFamily kf = make_kernel_family(c, 0.37);
            double moment = 0.5 * kf.rbar_poly.integral_01();
            worst = std::max(worst,
                             std::abs(2.0 * std::numbers::pi * kf.alpha2 * moment - 1.0));
        }
        out.push_back({"kernel normalization (presets + 5 random)", worst <= 1e-12,
                       "max |2 pi a2 m - 1| = " + detail::fmt(worst)});
    }
    {  // d/dr rbar = -r, d/dr rbarbar = -rbar at 200 random points
        KernelFamily kf = make_kernel_family({0.3, 1.1, -0.7, 0.25}, 0.2);
        Polynomial d1 = kf.rbar_poly.derivative();
        Polynomial d2 = kf.rbarbar_poly.derivative();
        double worst = 0.0;
        for (int s = 0; s < 200; ++s) {
            double r = u01(rng);
            worst = std::max(worst, std::abs(d1(r) + kf.r_poly(r)) /
                                        (1.0 + std::abs(kf.r_poly(r))));
            worst = std::max(worst, std::abs(d2(r) + kf.rbar_poly(r)) /
                                        (1.0 + std::abs(kf.rbar_poly(r))));
        }
        out.push_back({"tail antiderivative differentiation identity", worst <= 1e-12,
                       "max rel residual = " + detail::fmt(worst)});
    }
    {  // support is exact
        KernelFamily kf = make_kernel_family({1.0, -0.5}, 0.31);
        bool ok = true;
        for (double f : {2.0, 2.0000000001, 2.5, 3.0, 10.0}) {
            Vec2 x{0.4, -0.2};
            Vec2 y = x + Vec2{f * kf.delta, 0.0};
            for (KernelTier t : {KernelTier::R, KernelTier::Rbar, KernelTier::Rbarbar})
                if (kf.eval_scaled(t, x, y) != 0.0) ok = false;
        }
        out.push_back({"scaled kernels vanish exactly outside 2 delta", ok, ""});
    }
    {  // grad_x Rbar_delta = -(x-y) R_delta / (2 delta^2), finite differences
        KernelFamily kf = make_kernel_family({1.0, -1.0, 0.5}, 0.43);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            Vec2 x{u01(rng), u01(rng)};
            double ang = 2.0 * std::numbers::pi * u01(rng);
            double rad = (0.1 + 1.7 * u01(rng)) * kf.delta;
            Vec2 y = x + rad * Vec2{std::cos(ang), std::sin(ang)};
            double step = 1e-6 * kf.delta;
            Vec2 grad{(kf.eval_scaled(KernelTier::Rbar, {x.x + step, x.y}, y) -
                       kf.eval_scaled(KernelTier::Rbar, {x.x - step, x.y}, y)) /
                          (2.0 * step),
                      (kf.eval_scaled(KernelTier::Rbar, {x.x, x.y + step}, y) -
                       kf.eval_scaled(KernelTier::Rbar, {x.x, x.y - step}, y)) /
                          (2.0 * step)};
            Vec2 expect = (-kf.eval_scaled(KernelTier::R, x, y) /
                           (2.0 * kf.delta * kf.delta)) * (x - y);
            double scale = std::max(norm(expect), 1e-12);
            worst = std::max(worst, norm(grad - expect) / scale);
        }
        out.push_back({"gradient identity grad Rbar = -(x-y) R / (2 d^2)", worst <= 1e-4,
                       "max rel = " + detail::fmt(worst)});
    }
    return out;
}

/// Exact-integration properties: analytic values, decomposition identities,
/// the secant recurrence against adaptive integration, and the Monte Carlo
/// oracle over random clipped configurations.
inline std::vector<PropertyResult> run_geometry_suite(long mc_samples = 1000000) {
    std::vector<PropertyResult> out;
    std::mt19937_64 rng(771177);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    {
        Triangle t{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}}};
        double full = triangle_disk_poly(Polynomial({1.0}), 50.0, {0.3, 0.3}, t);
        double moment = triangle_disk_poly(Polynomial({0.0, 1.0}), 0.5, {0.0, 0.0}, t);
        Triangle big{{Vec2{0, 0}, Vec2{2, 0}, Vec2{0, 2}}};
        double quarter = triangle_disk_poly(Polynomial({1.0}), 0.5, {0.0, 0.0}, big);
        double e1 = std::abs(full - 0.5), e2 = std::abs(moment - 1.0 / 6.0);
        double e3 = std::abs(quarter - std::numbers::pi / 4.0);
        bool ok = e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12;
        out.push_back({"triangle-disk analytic values", ok,
                       "errors " + detail::fmt(e1) + " " + detail::fmt(e2) + " " +
                           detail::fmt(e3)});
    }
    {  // disk completeness: wedges of a containing polygon sum to the disk
        double rho = 0.73;
        Vec2 c{0.2, -0.1};
        Triangle poly{{c + Vec2{-3, -3}, c + Vec2{3, -3}, c + Vec2{0, 4}}};
        double worst = 0.0;
        for (int k = 0; k <= 4; ++k) {
            double total = 0.0;
            for (int e = 0; e < 3; ++e)
                total += wedge_monomial({c, poly[e], poly[(e + 1) % 3], rho}, k);
            double exact = 2.0 * std::numbers::pi * std::pow(rho, 2 * k + 2) /
                           (2.0 * k + 2.0);
            worst = std::max(worst, std::abs(total - exact) / exact);
        }
        out.push_back({"disk completeness over containing polygon", worst <= 1e-12,
                       "max rel = " + detail::fmt(worst)});
    }
    {  // additivity under a cevian split
        double worst = 0.0;
        Polynomial p({0.4, -0.3, 1.2, 0.05});
        for (int s = 0; s < 40; ++s) {
            Triangle t = detail::random_triangle(rng, 1.0);
            double lam = 0.1 + 0.8 * u01(rng);
            Vec2 split = t[1] + lam * (t[2] - t[1]);
            Triangle t1{{t[0], t[1], split}}, t2{{t[0], split, t[2]}};
            Vec2 c{u01(rng) * 2.0 - 1.0, u01(rng) * 2.0 - 1.0};
            double delta = 0.1 + 0.5 * u01(rng);
            double whole = triangle_disk_poly(p, delta, c, t);
            double parts = triangle_disk_poly(p, delta, c, t1) +
                           triangle_disk_poly(p, delta, c, t2);
            worst = std::max(worst, std::abs(whole - parts) /
                                        std::max(1e-14, std::abs(whole)));
        }
        out.push_back({"additivity under cevian splits", worst <= 1e-12,
                       "max rel = " + detail::fmt(worst)});
    }
    {  // rigid-motion invariance
        double worst = 0.0;
        Polynomial p({0.2, 0.7, -0.4});
        for (int s = 0; s < 40; ++s) {
            Triangle t = detail::random_triangle(rng, 1.0);
            Vec2 c{u01(rng), u01(rng)};
            double delta = 0.15 + 0.4 * u01(rng);
            double ang = 2.0 * std::numbers::pi * u01(rng);
            Vec2 shift{u01(rng) * 5.0, u01(rng) * 5.0};
            double ca = std::cos(ang), sa = std::sin(ang);
            auto rot = [&](Vec2 v) { return Vec2{ca * v.x - sa * v.y, sa * v.x + ca * v.y} + shift; };
            Triangle t2{{rot(t[0]), rot(t[1]), rot(t[2])}};
            double before = triangle_disk_poly(p, delta, c, t);
            double after = triangle_disk_poly(p, delta, rot(c), t2);
            worst = std::max(worst, std::abs(before - after) /
                                        std::max(1e-14, std::abs(before)));
        }
        out.push_back({"rigid-motion invariance", worst <= 1e-12,
                       "max rel = " + detail::fmt(worst)});
    }
    {  // secant recurrence vs adaptive integration
        std::uniform_real_distribution<double> uth(-1.4, 1.4);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            double a = uth(rng), b = uth(rng);
            if (a > b) std::swap(a, b);
            int n = 1 + s % 12;
            double exact = detail::adaptive_simpson(
                [n](double th) { return std::pow(1.0 / std::cos(th), n); }, a, b);
            double got = secant_power_integral(n, a, b);
            worst = std::max(worst,
                             std::abs(got - exact) / std::max(1e-14, std::abs(exact)));
        }
        out.push_back({"secant recurrence vs adaptive integration", worst <= 1e-10,
                       "max rel = " + detail::fmt(worst)});
    }
    {  // Monte Carlo oracle on random clipped configurations
        std::uniform_real_distribution<double> uc(-0.5, 1.5);
        double worst_sigma = 0.0;
        for (int s = 0; s < 50; ++s) {
            Triangle t = detail::random_triangle(rng, 1.0);
            Vec2 c{uc(rng), uc(rng)};
            double delta = (0.15 + 0.35 * u01(rng)) * t.diameter();
            Polynomial p({u01(rng), u01(rng) * 2.0 - 1.0, u01(rng) * 2.0 - 1.0});
            double exact = triangle_disk_poly(p, delta, c, t);
            double sum = 0.0, sum_sq = 0.0;
            double inv4d2 = 1.0 / (4.0 * delta * delta);
            double rho2 = 4.0 * delta * delta;
            for (long m = 0; m < mc_samples; ++m) {
                Vec2 y = detail::sample_triangle(t, rng);
                double r2 = squared_norm(y - c);
                double v = r2 < rho2 ? p(r2 * inv4d2) : 0.0;
                sum += v;
                sum_sq += v * v;
            }
            double mean = sum / static_cast<double>(mc_samples);
            double var = std::max(0.0, sum_sq / static_cast<double>(mc_samples) - mean * mean);
            double area = t.signed_area();
            double est = area * mean;
            double se = area * std::sqrt(var / static_cast<double>(mc_samples));
            if (se > 0.0)
                worst_sigma = std::max(worst_sigma, std::abs(est - exact) / se);
        }
        out.push_back({"Monte Carlo oracle (50 clipped configs)", worst_sigma <= 4.0,
                       "max |err|/se = " + detail::fmt(worst_sigma)});
    }
    return out;
}

/// Reduced-vs-direct comparison on the n=2 mesh in the no-clipping regime,
/// with a per-entry table written to `table`.
inline std::vector<PropertyResult> run_oracle_suite(std::ostream& table) {
    std::vector<PropertyResult> out;
    Mesh mesh = generate_unit_square_mesh(2);
    char buf[160];
    for (const char* preset : {"const", "quadratic"}) {
        KernelFamily kf = make_kernel_family(parse_kernel_preset(preset), 0.8);
        AssembledOperators ops = assemble_operators(mesh, kf, {});
        auto f = [](Vec2 p) { return 0.25 + 1.25 * p.x - 0.5 * p.y + 0.75 * p.x * p.y; };
        auto g = [](Vec2 p) { return 0.4 - 0.3 * p.x + 0.9 * p.y; };
        DofVector b = assemble_rhs(mesh, kf, f, g, {});
        double worst_d = 0.0, worst_m = 0.0, worst_b = 0.0;
        table << "# kernel " << preset << ": entry  reduced  oracle  rel-diff\n";
        int printed = 0;
        for (int i = 0; i < mesh.num_cells(); ++i)
            for (int k = 0; k < 3; ++k) {
                for (int j = 0; j < mesh.num_cells(); ++j)
                    for (int l = 0; l < 3; ++l) {
                        double red = ops.diffusion.get(dof_index(i, k), dof_index(j, l));
                        double orc = brute_force_diffusion_entry(mesh, kf, i, k, j, l, 8);
                        double rd = std::abs(red - orc) / std::max(1e-30, std::abs(orc));
                        worst_d = std::max(worst_d, rd);
                        double redm = ops.zero_order.get(dof_index(i, k), dof_index(j, l));
                        double orcm = brute_force_zero_order_entry(mesh, kf, i, k, j, l, 8);
                        double rm = std::abs(redm - orcm) / std::max(1e-30, std::abs(orcm));
                        worst_m = std::max(worst_m, rm);
                        if (printed < 6) {
                            std::snprintf(buf, sizeof buf,
                                          "D[(%d,%d),(%d,%d)]  %+.12e  %+.12e  %.2e\n", i, k,
                                          j, l, red, orc, rd);
                            table << buf;
                            ++printed;
                        }
                    }
                double redb = b[static_cast<std::size_t>(dof_index(i, k))];
                double orcb = brute_force_rhs_entry(mesh, kf, f, g, i, k, 8);
                worst_b = std::max(worst_b,
                                   std::abs(redb - orcb) / std::max(1e-30, std::abs(orcb)));
            }
        std::snprintf(buf, sizeof buf, "# %s worst rel-diff: D %.2e  M %.2e  b %.2e\n",
                      preset, worst_d, worst_m, worst_b);
        table << buf;
        bool ok = worst_d <= 1e-8 && worst_m <= 1e-8 && worst_b <= 1e-8;
        out.push_back({std::string("reduced vs 4D oracle, no clipping (") + preset + ")", ok,
                       "worst D " + detail::fmt(worst_d) + ", M " + detail::fmt(worst_m) +
                           ", b " + detail::fmt(worst_b)});
    }
    {  // clipped spot check against Monte Carlo
        Mesh mesh8 = generate_unit_square_mesh(8);
        KernelFamily kf = make_kernel_family({1.0, -1.0}, 0.5);  // 4h
        AssembledOperators ops = assemble_operators(mesh8, kf, {});
        double worst_sigma = 0.0;
        std::mt19937_64 rng(5150);
        int checked = 0;
        while (checked < 6) {
            std::uniform_int_distribution<int> ui(0, mesh8.num_cells() - 1);
            int i = ui(rng), k = ui(rng) % 3, l = ui(rng) % 3;
            auto nbrs = mesh8.cells_within(i, 2.0 * kf.delta);
            int j = nbrs[static_cast<std::size_t>(ui(rng)) % nbrs.size()];
            if (triangle_distance(mesh8.triangle(i), mesh8.triangle(j)) >= 2.0 * kf.delta)
                continue;
            double red = ops.diffusion.get(dof_index(i, k), dof_index(j, l));
            McEstimate mc = mc_diffusion_entry(mesh8, kf, i, k, j, l, 1000000,
                                               9000 + static_cast<std::uint64_t>(checked));
            if (mc.std_error > 0.0)
                worst_sigma = std::max(worst_sigma, std::abs(red - mc.value) / mc.std_error);
            std::snprintf(buf, sizeof buf, "D[(%d,%d),(%d,%d)]  %+.12e  %+.12e  %.2f se\n", i,
                          k, j, l, red, mc.value,
                          mc.std_error > 0 ? std::abs(red - mc.value) / mc.std_error : 0.0);
            table << buf;
            ++checked;
        }
        out.push_back({"reduced vs Monte Carlo oracle, clipped spot check",
                       worst_sigma <= 4.0, "max |err|/se = " + detail::fmt(worst_sigma)});
    }
    return out;
}

} // namespace nlfem
