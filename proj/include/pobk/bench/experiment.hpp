#ifndef POBK_BENCH_EXPERIMENT_HPP
#define POBK_BENCH_EXPERIMENT_HPP

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pobk/bench/fetch.hpp"
#include "pobk/bench/results.hpp"
#include "pobk/bench/rhs.hpp"
#include "pobk/matrix_market.hpp"
#include "pobk/solvers.hpp"

namespace pobk::bench {

struct SolverEntry {
    Method method;
    SolverConfig config;
};

/// A solver-by-matrix grid with repetitions.
struct ExperimentSpec {
    std::vector<std::string> matrices;          ///< .mtx paths or collection names
    std::vector<SolverEntry> solvers;
    std::map<std::string, std::size_t> matrix_k; ///< block count per matrix, overriding the solver's
    std::size_t repetitions = 10;
    RhsMode rhs = RhsMode::ones;
    std::uint64_t rhs_seed = 0;
    std::filesystem::path out;
    ResultFormat format = ResultFormat::csv;
    std::filesystem::path trace_dir;            ///< empty: no traces
    std::filesystem::path cache_dir = default_cache_dir();

    void validate() const {
        if (repetitions < 1) throw invalid_argument("repetitions must be at least 1");
        if (matrices.empty()) throw invalid_argument("experiment lists no matrices");
        if (solvers.empty()) throw invalid_argument("experiment lists no solvers");
        for (const auto& s : solvers) s.config.validate();
    }
};

/// Block counts suggested by the orthogonality diagnostics for matrices where
/// they were studied; used when an experiment enables them.
inline const std::map<std::string, std::size_t>& guided_block_counts() {
    static const std::map<std::string, std::size_t> k = {{"ex29", 5}, {"wathen100", 2}};
    return k;
}

struct NamedMatrix {
    std::string name;
    SparseMatrix matrix;
};

inline std::string matrix_label(const std::string& spec) {
    if (std::filesystem::is_regular_file(spec)) return std::filesystem::path(spec).stem().string();
    const auto slash = spec.rfind('/');
    return slash == std::string::npos ? spec : spec.substr(slash + 1);
}

namespace detail {

inline ResultRow failed_row(const std::string& matrix, const SparseMatrix* a, const SolverEntry& s, std::size_t k,
                            std::size_t reps) {
    ResultRow r;
    r.matrix = matrix;
    if (a) {
        r.m = a->rows();
        r.nnz = a->nnz();
        r.density = a->rows() ? static_cast<double>(a->nnz()) / (static_cast<double>(a->rows()) * static_cast<double>(a->rows())) : 0.0;
    }
    r.solver = std::string(to_string(s.method));
    r.k = k;
    r.thr = s.config.thr;
    r.theta = s.config.theta;
    r.mean_it = std::numeric_limits<double>::infinity();
    r.mean_cpu_s = std::numeric_limits<double>::quiet_NaN();
    r.converged = 0;
    r.reps = reps;
    r.final_rse = std::numeric_limits<double>::quiet_NaN();
    return r;
}

} // namespace detail

/// Runs one (matrix, solver) cell. Repetition r uses seed config.seed + r.
/// Wall time is taken around each solve call only.
inline ResultRow run_cell(const NamedMatrix& nm, const ConsistentRhs& rhs, SolverEntry entry, std::size_t reps,
                          const std::filesystem::path& trace_dir = {}) {
    const SparseMatrix& a = nm.matrix;
    entry.config.k = std::min(entry.config.k, a.rows());
    ResultRow row = detail::failed_row(nm.name, &a, entry, entry.config.k, reps);
    double it_sum = 0.0, cpu_sum = 0.0, worst = 0.0;
    std::size_t converged = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        SolverConfig cfg = entry.config;
        cfg.seed = entry.config.seed + rep;
        const auto t0 = std::chrono::steady_clock::now();
        const SolveReport report = solve(entry.method, a, rhs.f, rhs.x_star, cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (rep == 0 && !trace_dir.empty()) {
            std::filesystem::create_directories(trace_dir);
            emit_trace(report, trace_dir / (nm.name + "_" + std::string(to_string(entry.method)) + ".csv"));
        }
        it_sum += static_cast<double>(report.iterations);
        cpu_sum += secs;
        worst = std::max(worst, report.final_rse());
        if (report.converged()) ++converged;
    }
    row.converged = converged;
    row.final_rse = worst;
    if (converged == reps) {
        row.mean_it = it_sum / static_cast<double>(reps);
        row.mean_cpu_s = cpu_sum / static_cast<double>(reps);
    }
    return row;
}

/// Rows in matrix-major, then solver, order; one row per cell even when the
/// cell fails.
inline std::vector<ResultRow> run_grid(const std::vector<NamedMatrix>& matrices, const ExperimentSpec& spec,
                                       std::ostream* log = nullptr) {
    spec.validate();
    std::vector<ResultRow> rows;
    for (const auto& nm : matrices) {
        ConsistentRhs rhs;
        std::string rhs_error;
        try {
            rhs = generate_rhs(nm.matrix, spec.rhs, spec.rhs_seed);
        } catch (const error& e) {
            rhs_error = e.what();
        }
        for (SolverEntry entry : spec.solvers) {
            if (const auto it = spec.matrix_k.find(nm.name); it != spec.matrix_k.end()) entry.config.k = it->second;
            try {
                if (!rhs_error.empty()) throw error(rhs_error);
                rows.push_back(run_cell(nm, rhs, entry, spec.repetitions, spec.trace_dir));
            } catch (const std::exception& e) {
                if (log) *log << nm.name << " / " << to_string(entry.method) << ": " << e.what() << '\n';
                rows.push_back(detail::failed_row(nm.name, &nm.matrix, entry, std::min(entry.config.k, nm.matrix.rows()),
                                                  spec.repetitions));
            }
        }
    }
    return rows;
}

/// Loads every matrix (I/O is not timed) and runs the grid. A matrix that
/// cannot be loaded yields failed rows for each solver.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream* log = nullptr) {
    spec.validate();
    std::vector<ResultRow> rows;
    for (const auto& m : spec.matrices) {
        const std::string label = matrix_label(m);
        std::vector<NamedMatrix> one;
        try {
            one.push_back({label, mm::read_file(locate_matrix(m, spec.cache_dir))});
        } catch (const std::exception& e) {
            if (log) *log << label << ": " << e.what() << '\n';
            for (SolverEntry entry : spec.solvers) {
                if (const auto it = spec.matrix_k.find(label); it != spec.matrix_k.end()) entry.config.k = it->second;
                rows.push_back(detail::failed_row(label, nullptr, entry, entry.config.k, spec.repetitions));
            }
            continue;
        }
        auto cell_rows = run_grid(one, spec, log);
        rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
    return rows;
}

} // namespace pobk::bench

#endif // POBK_BENCH_EXPERIMENT_HPP
