#ifndef POBK_SPARSE_HPP
#define POBK_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pobk/error.hpp"

namespace pobk {

using index_t = std::size_t;
using Vector = std::vector<double>;

/// One coordinate entry; the input form for building a SparseMatrix.
struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// View of one stored row.
struct RowView {
    std::span<const index_t> cols;
    std::span<const double> values;

    std::size_t size() const noexcept { return cols.size(); }

    double dot(std::span<const double> x) const noexcept {
        double s = 0.0;
        for (std::size_t p = 0; p < cols.size(); ++p) s += values[p] * x[cols[p]];
        return s;
    }

    double squared_norm() const noexcept {
        double s = 0.0;
        for (double v : values) s += v * v;
        return s;
    }
};

/// Compressed sparse row matrix of doubles.
///
/// Column indices within a row are strictly increasing and no stored value is
/// zero. Instances are immutable once built.
class SparseMatrix {
public:
    SparseMatrix() : row_offsets_(1, 0) {}

    /// Zero matrix of the given shape.
    SparseMatrix(index_t nrows, index_t ncols)
        : nrows_(nrows), ncols_(ncols), row_offsets_(nrows + 1, 0) {}

    /// Takes ownership of CSR arrays after checking every invariant. Zeros
    /// are dropped.
    SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
                 std::vector<index_t> col_indices, Vector values)
        : nrows_(nrows), ncols_(ncols), row_offsets_(std::move(row_offsets)),
          col_indices_(std::move(col_indices)), values_(std::move(values)) {
        if (row_offsets_.size() != nrows_ + 1 || row_offsets_.front() != 0 ||
            row_offsets_.back() != values_.size() || col_indices_.size() != values_.size())
            throw invalid_argument("inconsistent CSR array lengths");
        for (index_t i = 0; i < nrows_; ++i) {
            if (row_offsets_[i] > row_offsets_[i + 1])
                throw invalid_argument("row offsets decrease at row " + std::to_string(i));
            for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
                if (col_indices_[p] >= ncols_)
                    throw invalid_argument("column index out of range in row " + std::to_string(i));
                if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1])
                    throw invalid_argument("column indices not strictly increasing in row " +
                                           std::to_string(i));
            }
        }
        drop_zeros();
    }

    /// Builds from coordinates in any order. Duplicates are summed; entries
    /// that are (or sum to) zero are not stored.
    static SparseMatrix from_triplets(index_t nrows, index_t ncols, std::vector<Triplet> entries) {
        for (const auto& t : entries)
            if (t.row >= nrows || t.col >= ncols)
                throw invalid_argument("triplet (" + std::to_string(t.row) + ", " +
                                       std::to_string(t.col) + ") out of range");
        std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        SparseMatrix m(nrows, ncols);
        m.col_indices_.reserve(entries.size());
        m.values_.reserve(entries.size());
        std::size_t p = 0;
        while (p < entries.size()) {
            const auto [r, c, v0] = entries[p];
            double v = v0;
            while (++p < entries.size() && entries[p].row == r && entries[p].col == c) v += entries[p].value;
            if (v != 0.0) {
                m.col_indices_.push_back(c);
                m.values_.push_back(v);
                ++m.row_offsets_[r + 1];
            }
        }
        std::partial_sum(m.row_offsets_.begin(), m.row_offsets_.end(), m.row_offsets_.begin());
        return m;
    }

    static SparseMatrix identity(index_t n) {
        std::vector<index_t> offsets(n + 1), cols(n);
        std::iota(offsets.begin(), offsets.end(), index_t{0});
        std::iota(cols.begin(), cols.end(), index_t{0});
        return SparseMatrix(n, n, std::move(offsets), std::move(cols), Vector(n, 1.0));
    }

    /// Row-major dense input; zeros skipped.
    static SparseMatrix from_dense(index_t nrows, index_t ncols, std::span<const double> dense) {
        if (dense.size() != nrows * ncols) throw dimension_error("dense buffer size mismatch");
        std::vector<Triplet> t;
        for (index_t i = 0; i < nrows; ++i)
            for (index_t j = 0; j < ncols; ++j)
                if (dense[i * ncols + j] != 0.0) t.push_back({i, j, dense[i * ncols + j]});
        return from_triplets(nrows, ncols, std::move(t));
    }

    index_t rows() const noexcept { return nrows_; }
    index_t cols() const noexcept { return ncols_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    bool is_square() const noexcept { return nrows_ == ncols_; }

    RowView row(index_t i) const noexcept {
        const auto b = row_offsets_[i], e = row_offsets_[i + 1];
        return {std::span<const index_t>(col_indices_).subspan(b, e - b),
                std::span<const double>(values_).subspan(b, e - b)};
    }

    std::span<const index_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const index_t> col_indices() const noexcept { return col_indices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Value at (i, j), zero when not stored.
    double at(index_t i, index_t j) const {
        const auto r = row(i);
        const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), j);
        if (it == r.cols.end() || *it != j) return 0.0;
        return r.values[static_cast<std::size_t>(it - r.cols.begin())];
    }

    std::vector<Triplet> triplets() const {
        std::vector<Triplet> out;
        out.reserve(nnz());
        for (index_t i = 0; i < nrows_; ++i)
            for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
                out.push_back({i, col_indices_[p], values_[p]});
        return out;
    }

    /// Row-major dense copy.
    Vector to_dense() const {
        Vector d(nrows_ * ncols_, 0.0);
        for (index_t i = 0; i < nrows_; ++i)
            for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
                d[i * ncols_ + col_indices_[p]] = values_[p];
        return d;
    }

    SparseMatrix transpose() const {
        std::vector<Triplet> t = triplets();
        for (auto& e : t) std::swap(e.row, e.col);
        return from_triplets(ncols_, nrows_, std::move(t));
    }

    double frobenius_norm_sq() const noexcept {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return s;
    }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    void drop_zeros() {
        if (std::none_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; })) return;
        std::size_t out = 0;
        std::vector<index_t> offsets(nrows_ + 1, 0);
        for (index_t i = 0; i < nrows_; ++i) {
            for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
                if (values_[p] == 0.0) continue;
                col_indices_[out] = col_indices_[p];
                values_[out] = values_[p];
                ++out;
            }
            offsets[i + 1] = out;
        }
        col_indices_.resize(out);
        values_.resize(out);
        row_offsets_ = std::move(offsets);
    }

    index_t nrows_ = 0;
    index_t ncols_ = 0;
    std::vector<index_t> row_offsets_;
    std::vector<index_t> col_indices_;
    Vector values_;
};

/// y = A x, summing each row in ascending column order.
inline Vector spmv(const SparseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols())
        throw dimension_error("spmv: x has length " + std::to_string(x.size()) + ", expected " +
                              std::to_string(a.cols()));
    Vector y(a.rows());
    for (index_t i = 0; i < a.rows(); ++i) y[i] = a.row(i).dot(x);
    return y;
}

/// Contiguous rows [first, last) as an independent matrix.
inline SparseMatrix row_block(const SparseMatrix& a, index_t first, index_t last) {
    if (first >= last) throw invalid_argument("row_block: empty row range");
    if (last > a.rows()) throw invalid_argument("row_block: range exceeds row count");
    const auto offsets = a.row_offsets();
    const auto b = offsets[first], e = offsets[last];
    std::vector<index_t> new_offsets(last - first + 1);
    for (index_t i = first; i <= last; ++i) new_offsets[i - first] = offsets[i] - b;
    return SparseMatrix(last - first, a.cols(), std::move(new_offsets),
                        {a.col_indices().begin() + b, a.col_indices().begin() + e},
                        {a.values().begin() + b, a.values().begin() + e});
}

/// Arbitrary rows, in the given order.
inline SparseMatrix select_rows(const SparseMatrix& a, std::span<const index_t> rows) {
    if (rows.empty()) throw invalid_argument("select_rows: no rows selected");
    std::vector<index_t> offsets(rows.size() + 1, 0);
    std::vector<index_t> cols;
    Vector vals;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= a.rows()) throw invalid_argument("select_rows: row " + std::to_string(rows[k]) + " out of range");
        const auto r = a.row(rows[k]);
        cols.insert(cols.end(), r.cols.begin(), r.cols.end());
        vals.insert(vals.end(), r.values.begin(), r.values.end());
        offsets[k + 1] = cols.size();
    }
    return SparseMatrix(rows.size(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

// dense vector helpers

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw dimension_error("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double distance2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw dimension_error("distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace pobk

#endif // POBK_SPARSE_HPP
