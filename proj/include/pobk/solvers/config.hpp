#ifndef POBK_SOLVERS_CONFIG_HPP
#define POBK_SOLVERS_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pobk/lstsq.hpp"
#include "pobk/sparse.hpp"

namespace pobk {

struct SolverConfig {
    double tol = 1e-6;                ///< stop once RSE <= tol
    std::size_t max_iters = 500000;   ///< outer iteration cap
    double theta = 0.5;               ///< greedy relaxation, in (0, 1)
    std::size_t k = 20;               ///< number of blocks
    double thr = 0.05;                ///< cosine threshold for orthogonal pairs
    double alpha = 1.0;               ///< aRBK step size, in (0, 2]
    Vector weights;                   ///< aRBK averaging weights; empty means uniform
    std::size_t sample_size = 0;      ///< aRBK rows sampled per group; 0 means half the group
    std::uint64_t seed = 0;
    bool reorder = true;              ///< POBK: apply RCM before blocking
    double rank_tolerance = default_rank_tolerance;
    std::size_t stagnation_window = 50;
    double stagnation_rel = 1e-14;

    void validate() const {
        if (!(tol > 0.0)) throw invalid_argument("tol must be positive");
        if (!(theta > 0.0 && theta < 1.0)) throw invalid_argument("theta must lie in (0, 1)");
        if (!(alpha > 0.0 && alpha <= 2.0)) throw invalid_argument("alpha must lie in (0, 2]");
        if (k == 0) throw invalid_argument("k must be positive");
        if (!weights.empty()) {
            double s = 0.0;
            for (double w : weights) {
                if (w < 0.0) throw invalid_argument("weights must be nonnegative");
                s += w;
            }
            if (std::abs(s - 1.0) > 1e-12) throw invalid_argument("weights must sum to 1");
        }
    }
};

enum class Termination { converged, iteration_cap, stagnation };

inline std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::converged: return "converged";
    case Termination::iteration_cap: return "iteration_cap";
    case Termination::stagnation: return "stagnation";
    }
    return "unknown";
}

struct SolveReport {
    Vector solution;
    std::size_t iterations = 0;   ///< outer iterations
    std::size_t projections = 0;  ///< block or row projections applied
    Vector rse_trace;             ///< RSE before the first iteration and after each one
    double wall_time = 0.0;       ///< seconds
    Termination termination = Termination::iteration_cap;

    double final_rse() const { return rse_trace.empty() ? NAN : rse_trace.back(); }
    bool converged() const noexcept { return termination == Termination::converged; }
};

} // namespace pobk

#endif // POBK_SOLVERS_CONFIG_HPP
