#ifndef POBK_SOLVERS_KERNELS_HPP
#define POBK_SOLVERS_KERNELS_HPP

#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "pobk/lstsq.hpp"
#include "pobk/solvers/config.hpp"
#include "pobk/sparse.hpp"

namespace pobk {

/// Relative solution error ||x - x*|| / ||x*||.
inline double rse(std::span<const double> x, std::span<const double> x_star) {
    if (x.size() != x_star.size()) throw dimension_error("rse: length mismatch");
    const double ref = norm2(x_star);
    if (ref == 0.0) throw invalid_argument("rse: reference solution is zero");
    return distance2(x, x_star) / ref;
}

/// Orthogonal projection of x onto the hyperplane A_(i) x = f_i.
inline void row_project_inplace(const SparseMatrix& a, std::span<const double> f, std::span<double> x, index_t i) {
    const auto r = a.row(i);
    const double nrm = r.squared_norm();
    if (nrm == 0.0) throw zero_row_error(i, "row_project: zero row");
    // compensated residual f_i - a.x
    double s = f[i], c = 0.0;
    for (std::size_t p = 0; p < r.size(); ++p) {
        const double prod = -r.values[p] * x[r.cols[p]];
        const double perr = std::fma(-r.values[p], x[r.cols[p]], -prod);
        const double t = s + prod;
        const double z = t - s;
        c += (s - (t - z)) + (prod - z) + perr;
        s = t;
    }
    const double step = (s + c) / nrm;
    for (std::size_t p = 0; p < r.size(); ++p) x[r.cols[p]] += step * r.values[p];
}

inline Vector row_project(const SparseMatrix& a, std::span<const double> f, std::span<const double> x, index_t i) {
    if (i >= a.rows()) throw invalid_argument("row_project: row index out of range");
    if (f.size() != a.rows() || x.size() != a.cols()) throw dimension_error("row_project: length mismatch");
    Vector out(x.begin(), x.end());
    row_project_inplace(a, f, out, i);
    return out;
}

/// x + B^+ (f_block - B x).
inline Vector block_project(const SparseMatrix& block, std::span<const double> f_block, std::span<const double> x,
                            double rel_tol = default_rank_tolerance) {
    if (x.size() != block.cols()) throw dimension_error("block_project: iterate length mismatch");
    Vector out(x.begin(), x.end());
    BlockProjector(block, rel_tol).project(f_block, out);
    return out;
}

/// Right-hand side entries of the given rows.
inline Vector gather(std::span<const double> v, std::span<const index_t> rows) {
    Vector out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = v[rows[i]];
    return out;
}

/// Records the RSE trace and decides when an iteration loop stops.
class StopControl {
public:
    StopControl(std::span<const double> x_star, const SolverConfig& cfg)
        : x_star_(x_star), ref_(norm2(x_star)), cfg_(cfg), start_(std::chrono::steady_clock::now()) {
        if (ref_ == 0.0) throw invalid_argument("reference solution is zero; RSE undefined");
    }

    /// Records the RSE of `x` after `iterations` outer iterations. Returns the
    /// termination reason when the loop should stop.
    std::optional<Termination> record(std::span<const double> x, std::size_t iterations) {
        const double e = distance2(x, x_star_) / ref_;
        trace_.push_back(e);
        if (e <= cfg_.tol) return Termination::converged;
        if (iterations >= cfg_.max_iters) return Termination::iteration_cap;
        if (trace_.size() == 1 || e < best_ * (1.0 - cfg_.stagnation_rel)) {
            best_ = e;
            since_best_ = 0;
        } else if (++since_best_ >= cfg_.stagnation_window) {
            return Termination::stagnation;
        }
        return std::nullopt;
    }

    SolveReport finish(Vector solution, std::size_t iterations, std::size_t projections, Termination t) {
        SolveReport r;
        r.solution = std::move(solution);
        r.iterations = iterations;
        r.projections = projections;
        r.rse_trace = std::move(trace_);
        r.termination = t;
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return r;
    }

private:
    std::span<const double> x_star_;
    double ref_;
    const SolverConfig& cfg_;
    std::chrono::steady_clock::time_point start_;
    Vector trace_;
    double best_ = 0.0;
    std::size_t since_best_ = 0;
};

inline void check_system(const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star) {
    if (f.size() != a.rows()) throw dimension_error("right-hand side length differs from row count");
    if (x_star.size() != a.cols()) throw dimension_error("reference solution length differs from column count");
}

} // namespace pobk

#endif // POBK_SOLVERS_KERNELS_HPP
