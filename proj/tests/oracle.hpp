// Reference computations for tests. Everything here is dense, direct and
// deliberately naive so it shares no code path with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pobk/random.hpp"
#include "pobk/sparse.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense densify(const pobk::SparseMatrix& a) {
    Dense d(a.rows(), std::vector<double>(a.cols(), 0.0));
    for (const auto& t : a.triplets()) d[t.row][t.col] = t.value;
    return d;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Dense a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) throw std::runtime_error("oracle::solve: singular");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Minimum-norm solution for a full-row-rank B via the normal equations
/// z = B^T (B B^T)^{-1} r.
inline std::vector<double> min_norm_full_row_rank(const Dense& b, const std::vector<double>& r) {
    const std::size_t m = b.size(), n = b.front().size();
    Dense g(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k) g[i][j] += b[i][k] * b[j][k];
    const auto y = solve(g, r);
    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) z[k] += b[i][k] * y[i];
    return z;
}

/// Least squares for a full-column-rank B via B^T B z = B^T r.
inline std::vector<double> lstsq_full_column_rank(const Dense& b, const std::vector<double>& r) {
    const std::size_t m = b.size(), n = b.front().size();
    Dense g(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k) g[i][j] += b[k][i] * b[k][j];
        for (std::size_t k = 0; k < m; ++k) rhs[i] += b[k][i] * r[k];
    }
    return solve(g, rhs);
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) num += (a[i] - b[i]) * (a[i] - b[i]);
    const double den = norm(b);
    return std::sqrt(num) / (den == 0.0 ? 1.0 : den);
}

/// Random banded matrix with a dominant diagonal, so it is nonsingular.
inline pobk::SparseMatrix random_banded(std::size_t m, std::size_t half_band, pobk::rng& gen) {
    std::vector<pobk::Triplet> t;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i >= half_band ? i - half_band : 0;
        const std::size_t hi = std::min(m - 1, i + half_band);
        for (std::size_t j = lo; j <= hi; ++j)
            t.push_back({i, j, i == j ? 2.0 * static_cast<double>(half_band) + 1.0 + gen.uniform() : gen.uniform(-1.0, 1.0)});
    }
    return pobk::SparseMatrix::from_triplets(m, m, std::move(t));
}

/// Old-index order for a random relabelling.
inline std::vector<std::size_t> random_order(std::size_t m, pobk::rng& gen) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    gen.shuffle(std::span<std::size_t>(order));
    return order;
}

inline std::vector<double> random_vector(std::size_t m, pobk::rng& gen) {
    std::vector<double> v(m);
    for (auto& x : v) x = gen.uniform(-1.0, 1.0);
    return v;
}

} // namespace oracle
