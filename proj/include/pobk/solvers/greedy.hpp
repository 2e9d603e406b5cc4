#ifndef POBK_SOLVERS_GREEDY_HPP
#define POBK_SOLVERS_GREEDY_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "pobk/kmeans.hpp"
#include "pobk/partition.hpp"
#include "pobk/random.hpp"
#include "pobk/solvers/kernels.hpp"

namespace pobk {

/// The three greedy block methods share one iteration and differ only in how
/// rows are partitioned: GRBK shuffles rows at random, RBK(k) runs k-means on
/// the rows of [A f], GREBK(k) runs k-means on the standardized distances of
/// x0 = 0 to every hyperplane.
enum class GreedyVariant { grbk, rbkk, grebkk };

inline std::string_view to_string(GreedyVariant v) {
    switch (v) {
    case GreedyVariant::grbk: return "grbk";
    case GreedyVariant::rbkk: return "rbkk";
    case GreedyVariant::grebkk: return "grebkk";
    }
    return "unknown";
}

/// Sampling in the iteration draws from a stream offset from the partition's.
inline constexpr std::uint64_t sampling_stream = 0x9E3779B97F4A7C15ull;

inline BlockPartition greedy_partition(const SparseMatrix& a, std::span<const double> f, GreedyVariant variant,
                                       std::size_t k, std::uint64_t seed) {
    RowBlocks blocks;
    switch (variant) {
    case GreedyVariant::grbk: blocks = random_partition(a.rows(), k, seed); break;
    case GreedyVariant::rbkk: blocks = kmeans(augment_with_rhs(a, f), k, seed); break;
    case GreedyVariant::grebkk: {
        const Vector x0(a.cols(), 0.0);
        blocks = kmeans(column_points(standardized_distances(a, f, x0)), k, seed);
        break;
    }
    }
    return compute_centroids(a, f, std::move(blocks));
}

/// Quantities of one greedy selection step, exposed for testing.
struct GreedySelection {
    Vector centroid_residual;  ///< f̄_τ - Ā_τ x per block
    double epsilon = 0.0;
    std::vector<std::size_t> candidates; ///< U_j, ascending
};

/// Evaluates the threshold and candidate set for iterate x. Blocks with a zero
/// centroid can never be selected.
inline GreedySelection greedy_select(const SparseMatrix& centroids, std::span<const double> centroid_rhs,
                                     std::span<const double> centroid_norm_sq, double frobenius_sq, double theta,
                                     std::span<const double> x) {
    GreedySelection s;
    const std::size_t k = centroids.rows();
    s.centroid_residual.resize(k);
    double total = 0.0;
    double best_ratio = -1.0;
    std::size_t best = k;
    for (std::size_t t = 0; t < k; ++t) {
        const double r = centroid_rhs[t] - centroids.row(t).dot(x);
        s.centroid_residual[t] = r;
        total += r * r;
        if (centroid_norm_sq[t] > 0.0 && r * r / centroid_norm_sq[t] > best_ratio) {
            best_ratio = r * r / centroid_norm_sq[t];
            best = t;
        }
    }
    if (total == 0.0 || best == k) return s;
    s.epsilon = theta / total * best_ratio + (1.0 - theta) / frobenius_sq;
    for (std::size_t t = 0; t < k; ++t) {
        const double r = s.centroid_residual[t];
        // the maximizer always qualifies; rounding must not drop it
        if (t == best || (centroid_norm_sq[t] > 0.0 && r * r >= s.epsilon * total * centroid_norm_sq[t]))
            s.candidates.push_back(t);
    }
    return s;
}

/// Greedy randomized block Kaczmarz over a fixed partition.
///
/// Each iteration selects a block from centroid residuals (threshold ε_j,
/// candidate set U_j, probability proportional to the squared residual) and
/// projects onto the full block. One iteration is one projection.
inline SolveReport greedy_block_solve(const SparseMatrix& a, std::span<const double> f,
                                      std::span<const double> x_star, const BlockPartition& partition,
                                      const SolverConfig& cfg) {
    cfg.validate();
    check_system(a, f, x_star);
    if (!is_partition(partition.blocks, a.rows())) throw invalid_argument("greedy_block_solve: invalid partition");
    StopControl stop(x_star, cfg);

    const std::size_t k = partition.size();
    std::vector<Triplet> ct;
    Vector centroid_norm_sq(k, 0.0);
    double frobenius_sq = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
        for (index_t j = 0; j < a.cols(); ++j)
            if (partition.centroids[t][j] != 0.0) ct.push_back({t, j, partition.centroids[t][j]});
        centroid_norm_sq[t] = dot(partition.centroids[t], partition.centroids[t]);
        frobenius_sq += centroid_norm_sq[t];
    }
    const SparseMatrix centroids = SparseMatrix::from_triplets(k, a.cols(), std::move(ct));

    std::vector<BlockProjector> projectors;
    std::vector<Vector> block_rhs;
    projectors.reserve(k);
    for (const auto& rows : partition.blocks) {
        projectors.emplace_back(select_rows(a, rows), cfg.rank_tolerance);
        block_rhs.push_back(gather(f, rows));
    }

    rng gen(cfg.seed ^ sampling_stream);
    Vector x(a.cols(), 0.0);
    Vector weights(k);
    std::size_t it = 0;
    auto t = stop.record(x, it);
    while (!t) {
        const auto sel = greedy_select(centroids, partition.centroid_rhs, centroid_norm_sq, frobenius_sq, cfg.theta, x);
        if (sel.candidates.empty()) {
            // centroid residual vanished while the true error did not
            t = Termination::stagnation;
            break;
        }
        std::fill(weights.begin(), weights.end(), 0.0);
        double mass = 0.0;
        for (std::size_t c : sel.candidates) {
            weights[c] = sel.centroid_residual[c] * sel.centroid_residual[c];
            mass += weights[c];
        }
        if (mass == 0.0) {
            t = Termination::stagnation;
            break;
        }
        const std::size_t chosen = gen.weighted(weights);
        projectors[chosen].project(block_rhs[chosen], x);
        t = stop.record(x, ++it);
    }
    return stop.finish(std::move(x), it, it, *t);
}

inline SolveReport greedy_block_solve(const SparseMatrix& a, std::span<const double> f,
                                      std::span<const double> x_star, GreedyVariant variant, const SolverConfig& cfg) {
    cfg.validate();
    check_system(a, f, x_star);
    const auto start = std::chrono::steady_clock::now();
    const BlockPartition p = greedy_partition(a, f, variant, std::min<std::size_t>(cfg.k, a.rows()), cfg.seed);
    SolveReport r = greedy_block_solve(a, f, x_star, p, cfg);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace pobk

#endif // POBK_SOLVERS_GREEDY_HPP
