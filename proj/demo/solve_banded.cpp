// Builds a scrambled banded system, solves it with POBK and prints the trace.

#include <iomanip>
#include <iostream>

#include "pobk/pobk.hpp"

int main() {
    using namespace pobk;
    const index_t m = 400;
    rng gen(7);

    // pentadiagonal, diagonally dominant
    std::vector<Triplet> t;
    for (index_t i = 0; i < m; ++i)
        for (index_t j = (i >= 2 ? i - 2 : 0); j <= std::min(m - 1, i + 2); ++j)
            t.push_back({i, j, i == j ? 6.0 : gen.uniform(-1.0, 1.0)});
    const SparseMatrix banded = SparseMatrix::from_triplets(m, m, std::move(t));

    std::vector<index_t> order(m);
    std::iota(order.begin(), order.end(), index_t{0});
    gen.shuffle(std::span<index_t>(order));
    const SparseMatrix a = apply_permutation(banded, Permutation::from_order(order), PermuteSide::both);

    Vector x_star(m);
    for (auto& v : x_star) v = gen.uniform(-1.0, 1.0);
    const Vector f = spmv(a, x_star);

    SolverConfig cfg;
    cfg.k = 8;
    const PobkPlan plan = pobk_plan(a, f, cfg);
    std::cout << "bandwidth " << bandwidth(a) << " -> " << bandwidth(plan.matrix) << ", " << plan.classes.oclass.size()
              << " orthogonal pairs, " << plan.classes.nclass.size() << " leftover blocks\n";

    const SolveReport r = pobk_iterate(plan, x_star, cfg);
    for (std::size_t i = 0; i < r.rse_trace.size(); ++i)
        std::cout << std::setw(4) << i << "  " << std::scientific << std::setprecision(3) << r.rse_trace[i] << '\n';
    std::cout << to_string(r.termination) << " after " << r.iterations << " sweeps\n";
}
