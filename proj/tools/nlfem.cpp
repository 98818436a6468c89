// nlfem: nonlocal-diffusion finite element solver on 2D triangular meshes.
// Subcommands: mesh-gen, solve, convergence, verify.
// Exit codes: 0 ok, 2 usage error, 3 solver failure, 4 configuration/regime error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nlfem/assembly.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/mesh.hpp"
#include "nlfem/problems.hpp"
#include "nlfem/solver.hpp"
#include "nlfem/verify.hpp"

namespace {

struct QuadFlags {
    int edge_quad = 8;
    int tri_degree = 6;
    int threads = 0;
};

void add_quad_flags(CLI::App* cmd, QuadFlags& q) {
    cmd->add_option("--edge-quad", q.edge_quad, "Gauss points per boundary sub-segment")
        ->check(CLI::Range(1, 16));
    cmd->add_option("--tri-quad-degree", q.tri_degree, "triangle rule degree")
        ->check(CLI::Range(1, 10));
    cmd->add_option("--threads", q.threads, "assembly thread cap (0 = machine)");
}

void write_solution_csv(const std::string& path, const nlfem::Mesh& mesh,
                        const nlfem::DofVector& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << "cell,local,x,y,value\n";
    char buf[160];
    for (int i = 0; i < mesh.num_cells(); ++i)
        for (int k = 0; k < 3; ++k) {
            nlfem::Vec2 v = mesh.vertex(i, k);
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", i, k, v.x, v.y,
                          c[static_cast<std::size_t>(nlfem::dof_index(i, k))]);
            out << buf;
        }
}

struct SolveOutcome {
    nlfem::ErrorNorms err;
    double assembly_seconds = 0.0;
    int cg_iters = 0;
    nlfem::DofVector c;
};

SolveOutcome run_solve(const nlfem::Mesh& mesh, const nlfem::KernelFamily& kf,
                       const nlfem::Problem& prob, const QuadFlags& q, bool verbose) {
    nlfem::QuadratureConfig cfg{q.edge_quad, q.tri_degree, q.threads};
    auto t0 = std::chrono::steady_clock::now();
    nlfem::AssembledSystem sys = nlfem::assemble_system(mesh, kf, prob.f, prob.g, cfg);
    auto t1 = std::chrono::steady_clock::now();
    std::function<void(int, double)> log;
    if (verbose)
        log = [](int it, double relres) {
            std::printf("iter %d relres %.6e\n", it, relres);
        };
    nlfem::CgResult res = nlfem::conjugate_gradient(sys.S, sys.b, 1e-10, 0, log);
    SolveOutcome out;
    out.err = nlfem::error_norms(res.x, prob.exact, mesh, cfg);
    out.assembly_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.cg_iters = res.iterations;
    out.c = std::move(res.x);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal-diffusion finite element solver (reduced 4D->2D assembly)"};
    app.require_subcommand(1);

    auto* meshgen = app.add_subcommand("mesh-gen", "generate a unit-square mesh");
    int gen_n = 4;
    std::string gen_out = "mesh.txt";
    meshgen->add_option("--n", gen_n, "lattice subdivisions per side")->required();
    meshgen->add_option("--out", gen_out, "output mesh file")->required();

    auto* solve = app.add_subcommand("solve", "assemble and solve one problem");
    std::string mesh_path, kernel_spec = "quadratic", problem_name = "cosine";
    std::string solve_out;
    double delta = 0.25;
    bool verbose = false;
    QuadFlags solve_q;
    solve->add_option("--mesh", mesh_path, "mesh file")->required();
    solve->add_option("--kernel", kernel_spec, "const | quadratic | poly:c0,c1,...");
    solve->add_option("--delta", delta, "horizon delta")->required();
    solve->add_option("--problem", problem_name, "constant | cosine")
        ->check(CLI::IsMember({"constant", "cosine"}));
    solve->add_option("--out", solve_out, "solution CSV output");
    solve->add_flag("--verbose", verbose, "per-iteration solver diagnostics");
    add_quad_flags(solve, solve_q);

    auto* conv = app.add_subcommand("convergence", "manufactured-solution study");
    int levels = 3;
    double delta_ratio = 2.0;
    std::string conv_problem = "cosine", conv_out = "convergence.csv", conv_kernel = "quadratic";
    QuadFlags conv_q;
    conv->add_option("--levels", levels, "number of refinement levels")->required();
    conv->add_option("--delta-ratio", delta_ratio, "delta / h ratio");
    conv->add_option("--problem", conv_problem, "constant | cosine")
        ->check(CLI::IsMember({"constant", "cosine"}));
    conv->add_option("--kernel", conv_kernel, "kernel preset");
    conv->add_option("--out", conv_out, "CSV output")->required();
    add_quad_flags(conv, conv_q);

    auto* verify = app.add_subcommand("verify", "run module property suites");
    std::string suite = "all";
    verify->add_option("--suite", suite, "kernels | geometry | oracle | all")
        ->check(CLI::IsMember({"kernels", "geometry", "oracle", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (meshgen->parsed()) {
            if (gen_n < 1) {
                std::fprintf(stderr, "error: --n must be >= 1\n");
                return 2;
            }
            std::ofstream out(gen_out);
            if (!out) {
                std::fprintf(stderr, "error: cannot open '%s'\n", gen_out.c_str());
                return 2;
            }
            nlfem::save_mesh(nlfem::generate_unit_square_mesh(gen_n), out);
            return 0;
        }

        if (solve->parsed()) {
            std::ifstream in(mesh_path);
            if (!in) {
                std::fprintf(stderr, "error: cannot open mesh file '%s'\n", mesh_path.c_str());
                return 2;
            }
            nlfem::Mesh mesh = nlfem::load_mesh(in);
            nlfem::KernelFamily kf =
                nlfem::make_kernel_family(nlfem::parse_kernel_preset(kernel_spec), delta);
            nlfem::Problem prob = nlfem::named_problem(problem_name);
            SolveOutcome res = run_solve(mesh, kf, prob, solve_q, verbose);
            if (!solve_out.empty()) write_solution_csv(solve_out, mesh, res.c);
            std::printf("l2 %.17g\nlinf %.17g\n", res.err.l2, res.err.linf);
            return 0;
        }

        if (conv->parsed()) {
            if (levels < 2) {
                std::fprintf(stderr, "error: --levels must be >= 2\n");
                return 2;
            }
            std::ofstream out(conv_out);
            if (!out) {
                std::fprintf(stderr, "error: cannot open '%s'\n", conv_out.c_str());
                return 2;
            }
            out << "level,n,h,delta,l2,linf,assembly_seconds,cg_iters\n";
            nlfem::Problem prob = nlfem::named_problem(conv_problem);
            auto coeffs = nlfem::parse_kernel_preset(conv_kernel);
            char buf[240];
            for (int level = 0; level < levels; ++level) {
                int n = 4 << level;
                double h = 1.0 / n;
                double d = delta_ratio * h;
                nlfem::Mesh mesh = nlfem::generate_unit_square_mesh(n);
                nlfem::KernelFamily kf = nlfem::make_kernel_family(coeffs, d);
                SolveOutcome res = run_solve(mesh, kf, prob, conv_q, false);
                std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.3f,%d\n",
                              level, n, h, d, res.err.l2, res.err.linf,
                              res.assembly_seconds, res.cg_iters);
                out << buf;
                std::printf("level %d n %d l2 %.6e linf %.6e\n", level, n, res.err.l2,
                            res.err.linf);
            }
            return 0;
        }

        if (verify->parsed()) {
            std::vector<nlfem::PropertyResult> results;
            if (suite == "kernels" || suite == "all") {
                auto r = nlfem::run_kernel_suite();
                results.insert(results.end(), r.begin(), r.end());
            }
            if (suite == "geometry" || suite == "all") {
                auto r = nlfem::run_geometry_suite();
                results.insert(results.end(), r.begin(), r.end());
            }
            if (suite == "oracle" || suite == "all") {
                auto r = nlfem::run_oracle_suite(std::cout);
                results.insert(results.end(), r.begin(), r.end());
            }
            bool all_pass = true;
            for (const auto& r : results) {
                std::printf("%s %s%s%s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                            r.detail.empty() ? "" : ": ", r.detail.c_str());
                all_pass = all_pass && r.pass;
            }
            return all_pass ? 0 : 1;
        }
    } catch (const nlfem::HorizonTooSmall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const nlfem::RegimeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const nlfem::NotConverged& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
