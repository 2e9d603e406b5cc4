#ifndef POBK_PARTITION_HPP
#define POBK_PARTITION_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pobk/kmeans.hpp"
#include "pobk/random.hpp"
#include "pobk/sparse.hpp"

namespace pobk {

/// Half-open row range [first, last).
struct RowRange {
    index_t first;
    index_t last;

    index_t size() const noexcept { return last - first; }
    friend bool operator==(const RowRange&, const RowRange&) = default;
};

/// First k-1 blocks get floor(m/k) consecutive rows, the last block the rest.
inline std::vector<RowRange> uniform_partition(index_t m, std::size_t k) {
    if (k == 0) throw invalid_argument("uniform_partition: k must be positive");
    if (k > m) throw invalid_argument("uniform_partition: k exceeds row count");
    const index_t step = m / k;
    std::vector<RowRange> out;
    out.reserve(k);
    for (std::size_t b = 0; b + 1 < k; ++b) out.push_back({b * step, (b + 1) * step});
    out.push_back({(k - 1) * step, m});
    return out;
}

inline RowBlocks to_blocks(std::span<const RowRange> ranges) {
    RowBlocks out;
    out.reserve(ranges.size());
    for (const auto& r : ranges) {
        std::vector<index_t> rows(r.size());
        std::iota(rows.begin(), rows.end(), r.first);
        out.push_back(std::move(rows));
    }
    return out;
}

/// Seeded shuffle of the row indices cut into uniform_partition sizes.
/// Rows within a block are sorted.
inline RowBlocks random_partition(index_t m, std::size_t k, std::uint64_t seed) {
    const auto ranges = uniform_partition(m, k);
    std::vector<index_t> rows(m);
    std::iota(rows.begin(), rows.end(), index_t{0});
    rng gen(seed);
    gen.shuffle(std::span<index_t>(rows));
    RowBlocks out;
    for (const auto& r : ranges) {
        std::vector<index_t> block(rows.begin() + static_cast<std::ptrdiff_t>(r.first),
                                   rows.begin() + static_cast<std::ptrdiff_t>(r.last));
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    return out;
}

/// True when `blocks` are nonempty, disjoint and cover {0..m-1}.
inline bool is_partition(const RowBlocks& blocks, index_t m) {
    std::vector<char> seen(m, 0);
    index_t total = 0;
    for (const auto& b : blocks) {
        if (b.empty()) return false;
        for (index_t r : b) {
            if (r >= m || seen[r]) return false;
            seen[r] = 1;
            ++total;
        }
    }
    return total == m;
}

/// Blocks of rows with their centroid data.
struct BlockPartition {
    RowBlocks blocks;
    std::vector<Vector> centroids; ///< mean of each block's rows, dense, length ncols
    Vector centroid_rhs;           ///< mean of each block's right-hand side entries
    Vector row_norms_sq;           ///< ||A_(i)||^2 for every row

    std::size_t size() const noexcept { return blocks.size(); }
};

inline BlockPartition compute_centroids(const SparseMatrix& a, std::span<const double> f, RowBlocks blocks) {
    if (f.size() != a.rows()) throw dimension_error("compute_centroids: right-hand side length mismatch");
    BlockPartition p;
    p.row_norms_sq.resize(a.rows());
    for (index_t i = 0; i < a.rows(); ++i) p.row_norms_sq[i] = a.row(i).squared_norm();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw zero_row_error(b, "compute_centroids: empty block");
        Vector c(a.cols(), 0.0);
        double rhs = 0.0;
        for (index_t i : blocks[b]) {
            if (i >= a.rows()) throw invalid_argument("compute_centroids: row index out of range");
            const auto r = a.row(i);
            for (std::size_t q = 0; q < r.size(); ++q) c[r.cols[q]] += r.values[q];
            rhs += f[i];
        }
        const double inv = 1.0 / static_cast<double>(blocks[b].size());
        for (double& v : c) v *= inv;
        p.centroids.push_back(std::move(c));
        p.centroid_rhs.push_back(rhs * inv);
    }
    p.blocks = std::move(blocks);
    return p;
}

inline BlockPartition compute_centroids(const SparseMatrix& a, std::span<const double> f,
                                        std::span<const RowRange> ranges) {
    return compute_centroids(a, f, to_blocks(ranges));
}

/// Symmetric k-by-k table of |cos| between block centroids, unit diagonal.
class CosineTable {
public:
    CosineTable() = default;

    /// From a row-major k*k buffer, for fixtures and diagnostics.
    CosineTable(std::size_t k, Vector values) : k_(k), values_(std::move(values)) {
        if (values_.size() != k * k) throw dimension_error("cosine table must be k*k");
    }

    std::size_t size() const noexcept { return k_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * k_ + j]; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const CosineTable&, const CosineTable&) = default;

private:
    friend CosineTable cosine_table(const BlockPartition&);
    std::size_t k_ = 0;
    Vector values_;
};

/// One inner product per unordered pair of blocks.
inline CosineTable cosine_table(const BlockPartition& p) {
    const std::size_t k = p.size();
    Vector norm(k);
    for (std::size_t i = 0; i < k; ++i) {
        norm[i] = norm2(p.centroids[i]);
        if (norm[i] == 0.0) throw zero_row_error(i, "cosine_table: zero centroid in block");
    }
    Vector c(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        c[i * k + i] = 1.0;
        for (std::size_t j = i + 1; j < k; ++j) {
            const double v = std::abs(dot(p.centroids[i], p.centroids[j])) / (norm[i] * norm[j]);
            c[i * k + j] = c[j * k + i] = v;
        }
    }
    return CosineTable(k, std::move(c));
}

struct BlockPair {
    std::size_t first;
    std::size_t second;
    friend bool operator==(const BlockPair&, const BlockPair&) = default;
};

/// Near-orthogonal block pairs (Oclass) and the leftover blocks (Nclass).
struct OrthoClassification {
    std::vector<BlockPair> oclass;
    std::vector<std::size_t> nclass;
    double thr = 0.0;
};

/// Greedy pairing: for each unpaired block i in ascending order, pair it with
/// the smallest unpaired j > i whose cosine is below `thr`. Unpaired blocks go
/// to nclass in ascending order.
inline OrthoClassification classify_orthogonal(const CosineTable& c, double thr) {
    if (!(thr > 0.0 && thr < 1.0)) throw invalid_argument("classify_orthogonal: thr must lie in (0, 1)");
    const std::size_t k = c.size();
    OrthoClassification out;
    out.thr = thr;
    std::vector<char> used(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!used[j] && c(i, j) < thr) {
                out.oclass.push_back({i, j});
                used[i] = used[j] = 1;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        if (!used[i]) out.nclass.push_back(i);
    return out;
}

/// Entries below this count as zero in the orthogonality diagnostics.
inline constexpr double zero_cosine_eps = 1e-12;

struct OrthogonalityMetrics {
    double zn = 0.0; ///< share of zero entries in the table
    double nn = 0.0; ///< nonzero count times nonzero mean, over k*k
    std::size_t zeros = 0;
    std::size_t nonzeros = 0;
};

/// Counts every one of the k*k entries, diagonal included.
inline OrthogonalityMetrics zn_nn_metrics(const CosineTable& c) {
    OrthogonalityMetrics m;
    const auto total = static_cast<double>(c.size() * c.size());
    if (total == 0.0) return m;
    double nonzero_sum = 0.0;
    for (double v : c.values()) {
        if (v < zero_cosine_eps) {
            ++m.zeros;
        } else {
            ++m.nonzeros;
            nonzero_sum += v;
        }
    }
    m.zn = static_cast<double>(m.zeros) / total;
    // n2 * mean(nonzeros) is the nonzero sum
    m.nn = nonzero_sum / total;
    return m;
}

/// d_i = |f_i - A_(i) x0| / ||A_(i)||.
inline Vector standardized_distances(const SparseMatrix& a, std::span<const double> f, std::span<const double> x0) {
    if (f.size() != a.rows() || x0.size() != a.cols())
        throw dimension_error("standardized_distances: length mismatch");
    Vector d(a.rows());
    for (index_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        const double nrm = std::sqrt(r.squared_norm());
        if (nrm == 0.0) throw zero_row_error(i, "standardized_distances: zero row");
        d[i] = std::abs(f[i] - r.dot(x0)) / nrm;
    }
    return d;
}

/// Rows of [A f] as points, for clustering on matrix rows and right-hand side.
inline SparseMatrix augment_with_rhs(const SparseMatrix& a, std::span<const double> f) {
    if (f.size() != a.rows()) throw dimension_error("augment_with_rhs: length mismatch");
    std::vector<Triplet> t = a.triplets();
    for (index_t i = 0; i < a.rows(); ++i)
        if (f[i] != 0.0) t.push_back({i, a.cols(), f[i]});
    return SparseMatrix::from_triplets(a.rows(), a.cols() + 1, std::move(t));
}

/// One-dimensional points from a vector of scalars.
inline SparseMatrix column_points(std::span<const double> v) {
    std::vector<Triplet> t;
    for (index_t i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) t.push_back({i, 0, v[i]});
    return SparseMatrix::from_triplets(v.size(), 1, std::move(t));
}

} // namespace pobk

#endif // POBK_PARTITION_HPP
