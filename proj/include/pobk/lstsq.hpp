#ifndef POBK_LSTSQ_HPP
#define POBK_LSTSQ_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pobk/sparse.hpp"

namespace pobk {

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double default_rank_tolerance = 1e-12;

/// Cached Moore-Penrose pseudoinverse of one row block.
///
/// The block is densified over its column support only (the columns holding
/// at least one nonzero), factored once by SVD, and kept as the dense
/// support-by-rows matrix B^+. Columns outside the support never receive an
/// update, which is exact: the minimum-norm solution lies in the row space.
class BlockProjector {
public:
    explicit BlockProjector(SparseMatrix block, double rel_tol = default_rank_tolerance)
        : block_(std::move(block)) {
        std::vector<bool> used(block_.cols(), false);
        for (index_t c : block_.col_indices()) used[c] = true;
        for (index_t c = 0; c < block_.cols(); ++c)
            if (used[c]) support_.push_back(c);

        std::vector<index_t> local(block_.cols(), 0);
        for (index_t s = 0; s < support_.size(); ++s) local[support_[s]] = s;

        const auto nr = static_cast<Eigen::Index>(block_.rows());
        const auto ns = static_cast<Eigen::Index>(support_.size());
        pinv_.setZero(ns, nr);
        if (ns == 0 || nr == 0) return;

        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(nr, ns);
        for (index_t i = 0; i < block_.rows(); ++i) {
            const auto r = block_.row(i);
            for (std::size_t p = 0; p < r.size(); ++p)
                dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(local[r.cols[p]])) = r.values[p];
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sigma = svd.singularValues();
        singular_values_.assign(sigma.data(), sigma.data() + sigma.size());
        const double cutoff = sigma.size() > 0 ? rel_tol * sigma(0) : 0.0;
        Eigen::Index r = 0;
        while (r < sigma.size() && sigma(r) > cutoff) ++r;
        rank_ = static_cast<index_t>(r);
        if (r == 0) return;
        const Eigen::VectorXd inv = sigma.head(r).cwiseInverse();
        pinv_.noalias() = svd.matrixV().leftCols(r) * inv.asDiagonal() * svd.matrixU().leftCols(r).transpose();
    }

    const SparseMatrix& block() const noexcept { return block_; }
    std::span<const index_t> support() const noexcept { return support_; }
    index_t rank() const noexcept { return rank_; }

    /// All singular values, non-increasing, including those truncated.
    std::span<const double> singular_values() const noexcept { return singular_values_; }

    /// z = B^+ r as a full-length vector.
    Vector solve(std::span<const double> r) const {
        if (r.size() != block_.rows())
            throw dimension_error("min-norm solve: residual has length " + std::to_string(r.size()) +
                                  ", block has " + std::to_string(block_.rows()) + " rows");
        Vector z(block_.cols(), 0.0);
        if (rank_ == 0) return z;
        const Eigen::VectorXd local = pinv_ * Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
        for (index_t s = 0; s < support_.size(); ++s) z[support_[s]] = local(static_cast<Eigen::Index>(s));
        return z;
    }

    /// x += alpha * B^+ (f_block - B x), in place.
    void project(std::span<const double> f_block, std::span<double> x, double alpha = 1.0) const {
        if (f_block.size() != block_.rows()) throw dimension_error("project: right-hand side length mismatch");
        if (x.size() != block_.cols()) throw dimension_error("project: iterate length mismatch");
        if (rank_ == 0) return;
        Eigen::VectorXd residual(static_cast<Eigen::Index>(block_.rows()));
        for (index_t i = 0; i < block_.rows(); ++i)
            residual(static_cast<Eigen::Index>(i)) = f_block[i] - block_.row(i).dot(x);
        const Eigen::VectorXd update = pinv_ * residual;
        for (index_t s = 0; s < support_.size(); ++s) x[support_[s]] += alpha * update(static_cast<Eigen::Index>(s));
    }

private:
    SparseMatrix block_;
    std::vector<index_t> support_;
    Eigen::MatrixXd pinv_;
    Vector singular_values_;
    index_t rank_ = 0;
};

/// Minimum-norm least-squares solution B^+ r.
inline Vector min_norm_lstsq(const SparseMatrix& b, std::span<const double> r,
                             double rel_tol = default_rank_tolerance) {
    if (r.size() != b.rows()) throw dimension_error("min_norm_lstsq: residual length differs from row count");
    return BlockProjector(b, rel_tol).solve(r);
}

} // namespace pobk

#endif // POBK_LSTSQ_HPP
