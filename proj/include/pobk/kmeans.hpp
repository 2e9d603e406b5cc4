#ifndef POBK_KMEANS_HPP
#define POBK_KMEANS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pobk/random.hpp"
#include "pobk/sparse.hpp"

namespace pobk {

using RowBlocks = std::vector<std::vector<index_t>>;

struct KMeansOptions {
    std::size_t max_rounds = 300;
};

namespace detail {

inline double squared_distance(const RowView& p, double p_norm_sq, std::span<const double> c, double c_norm_sq) {
    return std::max(0.0, p_norm_sq - 2.0 * p.dot(c) + c_norm_sq);
}

} // namespace detail

/// Lloyd's k-means over the rows of `points`, Euclidean metric.
///
/// Seeding is k-means++ driven by `seed`. Iteration stops when no assignment
/// changes or after `max_rounds`. A cluster that empties is refilled with the
/// point lying farthest from its own centroid. Returns k nonempty clusters of
/// row indices, each sorted ascending.
inline RowBlocks kmeans(const SparseMatrix& points, std::size_t k, std::uint64_t seed, KMeansOptions opts = {}) {
    if (k == 0) throw invalid_argument("kmeans: k must be positive");
    const index_t n = points.rows();
    if (k > n) throw invalid_argument("kmeans: more clusters than points");
    const index_t dim = points.cols();

    rng gen(seed);
    Vector point_norm(n);
    for (index_t i = 0; i < n; ++i) point_norm[i] = points.row(i).squared_norm();

    std::vector<Vector> centers;
    Vector center_norm;
    auto add_center = [&](index_t i) {
        Vector c(dim, 0.0);
        const auto r = points.row(i);
        for (std::size_t p = 0; p < r.size(); ++p) c[r.cols[p]] = r.values[p];
        centers.push_back(std::move(c));
        center_norm.push_back(point_norm[i]);
    };

    // k-means++ seeding
    add_center(static_cast<index_t>(gen.below(n)));
    Vector nearest(n, std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        const auto& c = centers.back();
        double total = 0.0;
        for (index_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], detail::squared_distance(points.row(i), point_norm[i], c, center_norm.back()));
            total += nearest[i];
        }
        add_center(total > 0.0 ? gen.weighted(nearest) : static_cast<index_t>(gen.below(n)));
    }

    std::vector<std::size_t> assign(n, k);
    Vector dist(n, 0.0);
    for (std::size_t round = 0; round < opts.max_rounds; ++round) {
        bool changed = false;
        for (index_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = detail::squared_distance(points.row(i), point_norm[i], centers[c], center_norm[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            dist[i] = best_d;
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }

        std::vector<std::size_t> count(k, 0);
        for (index_t i = 0; i < n; ++i) ++count[assign[i]];
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0) continue;
            index_t far = n;
            for (index_t i = 0; i < n; ++i)
                if (count[assign[i]] > 1 && (far == n || dist[i] > dist[far])) far = i;
            --count[assign[far]];
            assign[far] = c;
            dist[far] = 0.0;
            count[c] = 1;
            changed = true;
        }

        for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
        for (index_t i = 0; i < n; ++i) {
            const auto r = points.row(i);
            auto& c = centers[assign[i]];
            for (std::size_t p = 0; p < r.size(); ++p) c[r.cols[p]] += r.values[p];
        }
        for (std::size_t c = 0; c < k; ++c) {
            const double inv = 1.0 / static_cast<double>(count[c]);
            double s = 0.0;
            for (double& v : centers[c]) {
                v *= inv;
                s += v * v;
            }
            center_norm[c] = s;
        }
        if (!changed) break;
    }

    RowBlocks clusters(k);
    for (index_t i = 0; i < n; ++i) clusters[assign[i]].push_back(i);
    return clusters;
}

/// Dense-point convenience overload.
inline RowBlocks kmeans(std::span<const Vector> points, std::size_t k, std::uint64_t seed, KMeansOptions opts = {}) {
    if (points.empty()) throw invalid_argument("kmeans: no points");
    const index_t dim = points.front().size();
    std::vector<Triplet> t;
    for (index_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw dimension_error("kmeans: points differ in dimension");
        for (index_t j = 0; j < dim; ++j)
            if (points[i][j] != 0.0) t.push_back({i, j, points[i][j]});
    }
    return kmeans(SparseMatrix::from_triplets(points.size(), dim, std::move(t)), k, seed, opts);
}

} // namespace pobk

#endif // POBK_KMEANS_HPP
