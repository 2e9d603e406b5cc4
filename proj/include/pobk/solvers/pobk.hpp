#ifndef POBK_SOLVERS_POBK_HPP
#define POBK_SOLVERS_POBK_HPP

#include <chrono>
#include <vector>

#include "pobk/partition.hpp"
#include "pobk/permutation.hpp"
#include "pobk/reorder.hpp"
#include "pobk/solvers/kernels.hpp"

namespace pobk {

/// Everything POBK fixes before iterating: the reordered system, its uniform
/// blocks with their factorizations, and the orthogonal pairing.
struct PobkPlan {
    SparseMatrix matrix;          ///< Ã = P A P^T
    Vector rhs;                   ///< f̃ = P f
    Permutation permutation;      ///< P; identity when reordering is off
    std::vector<RowRange> ranges; ///< contiguous blocks of Ã
    BlockPartition partition;
    CosineTable cosines;
    OrthoClassification classes;
    std::vector<BlockProjector> projectors; ///< one per block, same order as ranges
    std::vector<Vector> block_rhs;
};

inline PobkPlan pobk_plan(const SparseMatrix& a, std::span<const double> f, const SolverConfig& cfg) {
    cfg.validate();
    if (!a.is_square()) throw invalid_argument("pobk: matrix must be square");
    if (f.size() != a.rows()) throw dimension_error("pobk: right-hand side length mismatch");
    PobkPlan plan;
    if (cfg.reorder) {
        auto sys = preprocess_system(a, f);
        plan.matrix = std::move(sys.matrix);
        plan.rhs = std::move(sys.rhs);
        plan.permutation = std::move(sys.permutation);
    } else {
        plan.matrix = a;
        plan.rhs.assign(f.begin(), f.end());
        plan.permutation = Permutation::identity(a.rows());
    }
    plan.ranges = uniform_partition(a.rows(), std::min<std::size_t>(cfg.k, a.rows()));
    plan.partition = compute_centroids(plan.matrix, plan.rhs, std::span<const RowRange>(plan.ranges));
    plan.cosines = cosine_table(plan.partition);
    plan.classes = classify_orthogonal(plan.cosines, cfg.thr);
    plan.projectors.reserve(plan.ranges.size());
    for (const auto& r : plan.ranges) {
        plan.projectors.emplace_back(row_block(plan.matrix, r.first, r.last), cfg.rank_tolerance);
        plan.block_rhs.emplace_back(plan.rhs.begin() + static_cast<std::ptrdiff_t>(r.first),
                                    plan.rhs.begin() + static_cast<std::ptrdiff_t>(r.last));
    }
    return plan;
}

/// One outer iteration: both halves of every orthogonal pair in order, then
/// every leftover block in ascending order. Returns the projection count.
inline std::size_t pobk_sweep(const PobkPlan& plan, std::span<double> x) {
    std::size_t n = 0;
    for (const auto& [first, second] : plan.classes.oclass) {
        plan.projectors[first].project(plan.block_rhs[first], x);
        plan.projectors[second].project(plan.block_rhs[second], x);
        n += 2;
    }
    for (std::size_t b : plan.classes.nclass) {
        plan.projectors[b].project(plan.block_rhs[b], x);
        ++n;
    }
    return n;
}

/// Iterates a prepared plan from x0 = 0. RSE is measured in the permuted frame
/// against P x*; the returned solution is in the original ordering.
inline SolveReport pobk_iterate(const PobkPlan& plan, std::span<const double> x_star, const SolverConfig& cfg) {
    if (x_star.size() != plan.matrix.cols()) throw dimension_error("pobk: reference solution length mismatch");
    const Vector x_star_perm = permute_vector(x_star, plan.permutation, PermuteDirection::forward);
    StopControl stop(x_star_perm, cfg);
    Vector x(plan.matrix.cols(), 0.0);
    std::size_t it = 0, projections = 0;
    auto t = stop.record(x, it);
    while (!t) {
        projections += pobk_sweep(plan, x);
        t = stop.record(x, ++it);
    }
    return stop.finish(permute_vector(x, plan.permutation, PermuteDirection::inverse), it, projections, *t);
}

/// Preprocessed orthogonal block Kaczmarz. Wall time covers reordering,
/// blocking, factorization and iteration.
inline SolveReport pobk_solve(const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star,
                              const SolverConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    check_system(a, f, x_star);
    const PobkPlan plan = pobk_plan(a, f, cfg);
    SolveReport r = pobk_iterate(plan, x_star, cfg);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace pobk

#endif // POBK_SOLVERS_POBK_HPP
