// Command-line front end: solve one system, run a benchmark grid, or report
// what RCM reordering does to a matrix.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pobk/bench.hpp"
#include "pobk/pobk.hpp"

namespace {

pobk::bench::ResultFormat format_for(const std::filesystem::path& p) {
    return p.extension() == ".json" ? pobk::bench::ResultFormat::json : pobk::bench::ResultFormat::csv;
}

struct SolveArgs {
    std::string matrix;
    std::string solver = "pobk";
    pobk::SolverConfig cfg;
    std::string rhs = "ones";
    std::uint64_t rhs_seed = 0;
    std::string out;
    std::string trace;
};

int run_solve(const SolveArgs& args) {
    using namespace pobk;
    const auto path = bench::locate_matrix(args.matrix);
    const SparseMatrix a = mm::read_file(path);
    const auto rhs = bench::generate_rhs(a, bench::parse_rhs_mode(args.rhs), args.rhs_seed);
    const Method method = parse_method(args.solver);

    bench::SolverEntry entry{method, args.cfg};
    const bench::NamedMatrix nm{bench::matrix_label(args.matrix), a};

    SolverConfig cfg = args.cfg;
    cfg.k = std::min(cfg.k, a.rows());
    const auto t0 = std::chrono::steady_clock::now();
    const SolveReport report = solve(method, a, rhs.f, rhs.x_star, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::cout << "matrix      " << nm.name << " (" << a.rows() << " x " << a.cols() << ", nnz " << a.nnz() << ")\n"
              << "solver      " << to_string(method) << "  k=" << cfg.k << " thr=" << cfg.thr << " theta=" << cfg.theta
              << "\n"
              << "termination " << to_string(report.termination) << "\n"
              << "iterations  " << report.iterations << "  (projections " << report.projections << ")\n"
              << "final RSE   " << std::scientific << std::setprecision(3) << report.final_rse() << "\n"
              << "wall time   " << std::fixed << std::setprecision(4) << secs << " s\n";

    if (!args.trace.empty()) bench::emit_trace(report, args.trace);
    if (!args.out.empty()) {
        bench::ResultRow row = bench::detail::failed_row(nm.name, &a, entry, cfg.k, 1);
        row.final_rse = report.final_rse();
        if (report.converged()) {
            row.converged = 1;
            row.mean_it = static_cast<double>(report.iterations);
            row.mean_cpu_s = secs;
        }
        bench::emit_results({row}, format_for(args.out), args.out);
    }
    return report.converged() ? 0 : 2;
}

int run_bench(const std::string& spec_path, const std::string& out) {
    using namespace pobk::bench;
    ExperimentSpec spec = parse_experiment_file(spec_path);
    if (!out.empty()) {
        spec.out = out;
        spec.format = format_for(spec.out);
    }
    if (spec.out.empty()) throw pobk::invalid_argument("no output path: pass --out or set 'out' in the spec");
    const auto rows = run_experiment(spec, &std::cerr);
    emit_results(rows, spec.format, spec.out);
    write_csv(std::cout, rows);
    return 0;
}

int run_reorder(const std::string& matrix, bool report, const std::string& write_to) {
    using namespace pobk;
    const SparseMatrix a = mm::read_file(bench::locate_matrix(matrix));
    const auto t0 = std::chrono::steady_clock::now();
    const Permutation p = rcm_order(a);
    const double rcm_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const SparseMatrix reordered = apply_permutation(a, p, PermuteSide::both);
    if (report || write_to.empty()) {
        std::cout << "matrix            " << bench::matrix_label(matrix) << " (" << a.rows() << " x " << a.cols()
                  << ", nnz " << a.nnz() << ")\n"
                  << "bandwidth before  " << bandwidth(a) << "\n"
                  << "bandwidth after   " << bandwidth(reordered) << "\n"
                  << "rcm time          " << std::fixed << std::setprecision(6) << rcm_secs << " s\n";
    }
    if (!write_to.empty()) mm::write_file(write_to, reordered);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block Kaczmarz solvers with RCM preprocessing"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve A x = A x* for one matrix");
    solve->add_option("--matrix", sa.matrix, "Matrix Market path or collection name")->required();
    solve->add_option("--solver", sa.solver, "rk|grbk|rbkk|grebkk|arbk|pobk")
        ->check(CLI::IsMember({"rk", "grbk", "rbkk", "grebkk", "arbk", "pobk"}));
    solve->add_option("--k", sa.cfg.k, "Number of blocks");
    solve->add_option("--thr", sa.cfg.thr, "Cosine threshold for orthogonal pairs");
    solve->add_option("--theta", sa.cfg.theta, "Greedy relaxation parameter");
    solve->add_option("--alpha", sa.cfg.alpha, "aRBK step size");
    solve->add_option("--sample-size", sa.cfg.sample_size, "aRBK rows sampled per group (0: half)");
    solve->add_option("--tol", sa.cfg.tol, "RSE tolerance");
    solve->add_option("--max-iters", sa.cfg.max_iters, "Outer iteration cap");
    solve->add_option("--seed", sa.cfg.seed, "Random seed");
    solve->add_flag("!--no-reorder", sa.cfg.reorder, "POBK: skip RCM");
    solve->add_option("--rhs", sa.rhs, "ones|random")->check(CLI::IsMember({"ones", "random"}));
    solve->add_option("--rhs-seed", sa.rhs_seed, "Seed for --rhs random");
    solve->add_option("--out", sa.out, "Result row (.csv or .json)");
    solve->add_option("--trace", sa.trace, "RSE trace CSV");

    std::string spec_path, bench_out;
    auto* bench = app.add_subcommand("bench", "Run an experiment grid from a spec file");
    bench->add_option("--spec", spec_path, "Experiment file")->required()->check(CLI::ExistingFile);
    bench->add_option("--out", bench_out, "Results path (.csv or .json)");

    std::string reorder_matrix, reorder_write;
    bool reorder_report = false;
    auto* reorder = app.add_subcommand("reorder", "Report RCM bandwidth reduction");
    reorder->add_option("--matrix", reorder_matrix, "Matrix Market path or collection name")->required();
    reorder->add_flag("--report", reorder_report, "Print bandwidth before/after and RCM time");
    reorder->add_option("--write", reorder_write, "Write the reordered matrix");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*solve) return run_solve(sa);
        if (*bench) return run_bench(spec_path, bench_out);
        if (*reorder) return run_reorder(reorder_matrix, reorder_report, reorder_write);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
