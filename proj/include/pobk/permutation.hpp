#ifndef POBK_PERMUTATION_HPP
#define POBK_PERMUTATION_HPP

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pobk/sparse.hpp"

namespace pobk {

/// Bijection on {0..n-1}. `forward()[i]` is the new position of old index i,
/// so the matrix P it represents maps e_i to e_forward[i].
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(index_t n) {
        std::vector<index_t> f(n);
        std::iota(f.begin(), f.end(), index_t{0});
        return from_forward(std::move(f));
    }

    /// From "new position of old index i".
    static Permutation from_forward(std::vector<index_t> forward) {
        Permutation p;
        p.inverse_.assign(forward.size(), forward.size());
        for (index_t i = 0; i < forward.size(); ++i) {
            if (forward[i] >= forward.size() || p.inverse_[forward[i]] != forward.size())
                throw invalid_argument("permutation is not a bijection at index " + std::to_string(i));
            p.inverse_[forward[i]] = i;
        }
        p.forward_ = std::move(forward);
        return p;
    }

    /// From an ordering: `order[k]` is the old index placed at new position k.
    static Permutation from_order(std::span<const index_t> order) {
        std::vector<index_t> f(order.size(), order.size());
        for (index_t k = 0; k < order.size(); ++k) {
            if (order[k] >= order.size() || f[order[k]] != order.size())
                throw invalid_argument("ordering is not a bijection at position " + std::to_string(k));
            f[order[k]] = k;
        }
        return from_forward(std::move(f));
    }

    index_t size() const noexcept { return forward_.size(); }
    std::span<const index_t> forward() const noexcept { return forward_; }
    std::span<const index_t> inverse() const noexcept { return inverse_; }

    /// P^T as a permutation.
    Permutation inverted() const {
        Permutation p;
        p.forward_ = inverse_;
        p.inverse_ = forward_;
        return p;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<index_t> forward_;
    std::vector<index_t> inverse_;
};

enum class PermuteSide { rows, cols, both };
enum class PermuteDirection { forward, inverse };

/// rows: PA, cols: AP^T, both: PAP^T.
inline SparseMatrix apply_permutation(const SparseMatrix& a, const Permutation& p, PermuteSide side) {
    const bool on_rows = side != PermuteSide::cols;
    const bool on_cols = side != PermuteSide::rows;
    if (on_rows && p.size() != a.rows())
        throw dimension_error("apply_permutation: permutation size differs from row count");
    if (on_cols && p.size() != a.cols())
        throw dimension_error("apply_permutation: permutation size differs from column count");

    const auto fwd = p.forward();
    const auto inv = p.inverse();
    std::vector<index_t> offsets(a.rows() + 1, 0);
    std::vector<index_t> cols;
    Vector vals;
    cols.reserve(a.nnz());
    vals.reserve(a.nnz());
    std::vector<std::pair<index_t, double>> scratch;
    for (index_t new_row = 0; new_row < a.rows(); ++new_row) {
        const auto r = a.row(on_rows ? inv[new_row] : new_row);
        scratch.clear();
        for (std::size_t q = 0; q < r.size(); ++q)
            scratch.emplace_back(on_cols ? fwd[r.cols[q]] : r.cols[q], r.values[q]);
        if (on_cols) std::sort(scratch.begin(), scratch.end());
        for (const auto& [c, v] : scratch) {
            cols.push_back(c);
            vals.push_back(v);
        }
        offsets[new_row + 1] = cols.size();
    }
    return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

/// forward: Pv, inverse: P^T v.
inline Vector permute_vector(std::span<const double> v, const Permutation& p, PermuteDirection direction) {
    if (v.size() != p.size()) throw dimension_error("permute_vector: length mismatch");
    Vector out(v.size());
    const auto fwd = p.forward();
    if (direction == PermuteDirection::forward) {
        for (index_t i = 0; i < v.size(); ++i) out[fwd[i]] = v[i];
    } else {
        for (index_t i = 0; i < v.size(); ++i) out[i] = v[fwd[i]];
    }
    return out;
}

} // namespace pobk

#endif // POBK_PERMUTATION_HPP
