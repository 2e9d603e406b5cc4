#ifndef POBK_SOLVERS_ARBK_HPP
#define POBK_SOLVERS_ARBK_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "pobk/partition.hpp"
#include "pobk/random.hpp"
#include "pobk/solvers/kernels.hpp"

namespace pobk {

/// Averaged randomized block Kaczmarz.
///
/// Every outer iteration samples, independently in each group, a subset S_j of
/// the group's rows (uniform without replacement), forms the relaxed
/// projection x + α A_S^+ (f_S - A_S x) from the same previous iterate, and
/// averages the group results with `cfg.weights`. Groups whose sample is the
/// whole group reuse a cached factorization; other samples are factored
/// afresh.
inline SolveReport arbk_solve(const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star,
                              const RowBlocks& groups, const SolverConfig& cfg) {
    cfg.validate();
    check_system(a, f, x_star);
    if (!is_partition(groups, a.rows())) throw invalid_argument("arbk_solve: invalid partition");
    if (!cfg.weights.empty() && cfg.weights.size() != groups.size())
        throw dimension_error("arbk_solve: " + std::to_string(cfg.weights.size()) + " weights for " +
                              std::to_string(groups.size()) + " groups");
    StopControl stop(x_star, cfg);

    const std::size_t g = groups.size();
    const Vector weights = cfg.weights.empty() ? Vector(g, 1.0 / static_cast<double>(g)) : cfg.weights;
    std::vector<std::size_t> sample_size(g);
    std::vector<std::optional<BlockProjector>> whole(g);
    std::vector<Vector> group_rhs(g);
    for (std::size_t j = 0; j < g; ++j) {
        const std::size_t n = groups[j].size();
        sample_size[j] = cfg.sample_size == 0 ? std::max<std::size_t>(1, n / 2) : std::min(cfg.sample_size, n);
        if (sample_size[j] == n) {
            whole[j].emplace(select_rows(a, groups[j]), cfg.rank_tolerance);
            group_rhs[j] = gather(f, groups[j]);
        }
    }

    rng gen(cfg.seed ^ 0x5851F42D4C957F2Dull);
    Vector x(a.cols(), 0.0), next(a.cols()), trial(a.cols());
    std::size_t it = 0, projections = 0;
    auto t = stop.record(x, it);
    while (!t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t j = 0; j < g; ++j) {
            std::copy(x.begin(), x.end(), trial.begin());
            if (whole[j]) {
                whole[j]->project(group_rhs[j], trial, cfg.alpha);
            } else {
                auto picks = gen.sample_without_replacement(groups[j].size(), sample_size[j]);
                std::sort(picks.begin(), picks.end());
                std::vector<index_t> rows(picks.size());
                for (std::size_t q = 0; q < picks.size(); ++q) rows[q] = groups[j][picks[q]];
                BlockProjector(select_rows(a, rows), cfg.rank_tolerance).project(gather(f, rows), trial, cfg.alpha);
            }
            ++projections;
            for (index_t c = 0; c < x.size(); ++c) next[c] += weights[j] * trial[c];
        }
        std::swap(x, next);
        t = stop.record(x, ++it);
    }
    return stop.finish(std::move(x), it, projections, *t);
}

/// Groups drawn by a seeded random partition into cfg.k parts.
inline SolveReport arbk_solve(const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star,
                              const SolverConfig& cfg) {
    cfg.validate();
    check_system(a, f, x_star);
    const auto start = std::chrono::steady_clock::now();
    const RowBlocks groups = random_partition(a.rows(), std::min<std::size_t>(cfg.k, a.rows()), cfg.seed);
    SolveReport r = arbk_solve(a, f, x_star, groups, cfg);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace pobk

#endif // POBK_SOLVERS_ARBK_HPP
