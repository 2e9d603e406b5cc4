#ifndef POBK_REORDER_HPP
#define POBK_REORDER_HPP

#include <algorithm>
#include <cstdlib>
#include <span>
#include <vector>

#include "pobk/permutation.hpp"
#include "pobk/sparse.hpp"

namespace pobk {

/// Symmetric adjacency over the nonzero pattern of A + A^T, without self loops.
class AdjacencyGraph {
public:
    explicit AdjacencyGraph(const SparseMatrix& a) {
        if (!a.is_square()) throw invalid_argument("adjacency graph needs a square matrix");
        const index_t n = a.rows();
        std::vector<index_t> count(n, 0);
        for (index_t i = 0; i < n; ++i)
            for (index_t j : a.row(i).cols)
                if (j != i) {
                    ++count[i];
                    ++count[j];
                }
        offsets_.assign(n + 1, 0);
        for (index_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + count[i];
        adjacency_.resize(offsets_[n]);
        std::vector<index_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (index_t i = 0; i < n; ++i)
            for (index_t j : a.row(i).cols)
                if (j != i) {
                    adjacency_[fill[i]++] = j;
                    adjacency_[fill[j]++] = i;
                }
        // sort and dedupe each list: (i,j) and (j,i) both stored yield duplicates
        std::vector<index_t> compact_offsets(n + 1, 0);
        index_t out = 0;
        for (index_t i = 0; i < n; ++i) {
            auto b = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
            auto e = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
            std::sort(b, e);
            e = std::unique(b, e);
            for (auto it = b; it != e; ++it) adjacency_[out++] = *it;
            compact_offsets[i + 1] = out;
        }
        adjacency_.resize(out);
        offsets_ = std::move(compact_offsets);
    }

    index_t size() const noexcept { return offsets_.size() - 1; }

    std::span<const index_t> neighbors(index_t v) const noexcept {
        return std::span<const index_t>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }

    index_t degree(index_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

private:
    std::vector<index_t> offsets_;
    std::vector<index_t> adjacency_;
};

/// max |i - j| over stored entries; 0 for diagonal or empty matrices.
inline index_t bandwidth(const SparseMatrix& a) {
    if (!a.is_square()) throw invalid_argument("bandwidth needs a square matrix");
    index_t bw = 0;
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j : a.row(i).cols) bw = std::max(bw, i > j ? i - j : j - i);
    return bw;
}

namespace detail {

/// Breadth-first level structure rooted at `root`. Fills `level` (graph-wide
/// scratch, reset for visited nodes on return) and returns nodes in BFS order
/// with the level boundaries.
struct LevelStructure {
    std::vector<index_t> order;
    std::vector<std::size_t> level_start; // one past the end is order.size()
};

inline LevelStructure rooted_levels(const AdjacencyGraph& g, index_t root, std::vector<char>& mark) {
    LevelStructure ls;
    ls.order.push_back(root);
    mark[root] = 1;
    std::size_t head = 0;
    while (head < ls.order.size()) {
        ls.level_start.push_back(head);
        const std::size_t tail = ls.order.size();
        for (; head < tail; ++head)
            for (index_t w : g.neighbors(ls.order[head]))
                if (!mark[w]) {
                    mark[w] = 1;
                    ls.order.push_back(w);
                }
    }
    for (index_t v : ls.order) mark[v] = 0;
    return ls;
}

/// George-Liu pseudo-peripheral node search inside one component.
inline index_t pseudo_peripheral(const AdjacencyGraph& g, std::span<const index_t> component, std::vector<char>& mark) {
    auto better = [&g](index_t a, index_t b) {
        return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
    };
    index_t root = *std::min_element(component.begin(), component.end(), better);
    LevelStructure ls = rooted_levels(g, root, mark);
    for (int sweep = 0; sweep < 10; ++sweep) {
        const auto last = std::span<const index_t>(ls.order).subspan(ls.level_start.back());
        const index_t candidate = *std::min_element(last.begin(), last.end(), better);
        LevelStructure next = rooted_levels(g, candidate, mark);
        if (next.level_start.size() <= ls.level_start.size()) break;
        root = candidate;
        ls = std::move(next);
    }
    return root;
}

} // namespace detail

/// Reverse Cuthill-McKee ordering of pattern(A + A^T).
///
/// Components are taken in order of their smallest original index. Each is
/// traversed breadth-first from a pseudo-peripheral node, enqueueing the
/// unvisited neighbours of a node by ascending degree and then ascending
/// index. The concatenated order is reversed. The result is a pure function of
/// the input pattern.
inline Permutation rcm_order(const SparseMatrix& a) {
    if (!a.is_square()) throw invalid_argument("rcm_order needs a square matrix");
    const AdjacencyGraph g(a);
    const index_t n = g.size();
    std::vector<char> visited(n, 0), mark(n, 0);
    std::vector<index_t> order;
    order.reserve(n);
    std::vector<index_t> scratch;

    for (index_t seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        const auto component = detail::rooted_levels(g, seed, mark).order;
        const index_t start = detail::pseudo_peripheral(g, component, mark);

        std::size_t head = order.size();
        order.push_back(start);
        visited[start] = 1;
        while (head < order.size()) {
            const index_t v = order[head++];
            scratch.clear();
            for (index_t w : g.neighbors(v))
                if (!visited[w]) scratch.push_back(w);
            std::sort(scratch.begin(), scratch.end(), [&g](index_t x, index_t y) {
                return g.degree(x) < g.degree(y) || (g.degree(x) == g.degree(y) && x < y);
            });
            for (index_t w : scratch) {
                visited[w] = 1;
                order.push_back(w);
            }
        }
    }
    std::reverse(order.begin(), order.end());
    return Permutation::from_order(order);
}

/// A reordered system: Ã = P A P^T, f̃ = P f.
struct PreprocessedSystem {
    SparseMatrix matrix;
    Vector rhs;
    Permutation permutation;
};

inline PreprocessedSystem preprocess_system(const SparseMatrix& a, std::span<const double> f) {
    if (!a.is_square()) throw invalid_argument("preprocess_system needs a square matrix");
    if (f.size() != a.rows()) throw dimension_error("preprocess_system: right-hand side length mismatch");
    Permutation p = rcm_order(a);
    return {apply_permutation(a, p, PermuteSide::both), permute_vector(f, p, PermuteDirection::forward), std::move(p)};
}

} // namespace pobk

#endif // POBK_REORDER_HPP
