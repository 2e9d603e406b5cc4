#ifndef POBK_SOLVERS_RK_HPP
#define POBK_SOLVERS_RK_HPP

#include "pobk/random.hpp"
#include "pobk/solvers/kernels.hpp"

namespace pobk {

/// Randomized row Kaczmarz: row i drawn with probability ||A_(i)||^2 / ||A||_F^2.
/// One iteration is one row projection.
inline SolveReport rk_solve(const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star,
                            const SolverConfig& cfg) {
    cfg.validate();
    check_system(a, f, x_star);
    StopControl stop(x_star, cfg);
    Vector weights(a.rows());
    for (index_t i = 0; i < a.rows(); ++i) weights[i] = a.row(i).squared_norm();
    rng gen(cfg.seed);
    Vector x(a.cols(), 0.0);

    std::size_t it = 0;
    auto t = stop.record(x, it);
    while (!t) {
        row_project_inplace(a, f, x, gen.weighted(weights));
        t = stop.record(x, ++it);
    }
    return stop.finish(std::move(x), it, it, *t);
}

} // namespace pobk

#endif // POBK_SOLVERS_RK_HPP
