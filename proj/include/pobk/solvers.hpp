#ifndef POBK_SOLVERS_HPP
#define POBK_SOLVERS_HPP

#include <string>
#include <string_view>

#include "pobk/solvers/arbk.hpp"
#include "pobk/solvers/config.hpp"
#include "pobk/solvers/greedy.hpp"
#include "pobk/solvers/kernels.hpp"
#include "pobk/solvers/pobk.hpp"
#include "pobk/solvers/rk.hpp"
#include "pobk/solvers/spectral.hpp"

namespace pobk {

enum class Method { rk, grbk, rbkk, grebkk, arbk, pobk };

inline std::string_view to_string(Method m) {
    switch (m) {
    case Method::rk: return "rk";
    case Method::grbk: return "grbk";
    case Method::rbkk: return "rbkk";
    case Method::grebkk: return "grebkk";
    case Method::arbk: return "arbk";
    case Method::pobk: return "pobk";
    }
    return "unknown";
}

inline Method parse_method(std::string_view name) {
    for (Method m : {Method::rk, Method::grbk, Method::rbkk, Method::grebkk, Method::arbk, Method::pobk})
        if (to_string(m) == name) return m;
    throw invalid_argument("unknown solver '" + std::string(name) + "'");
}

inline SolveReport solve(Method m, const SparseMatrix& a, std::span<const double> f, std::span<const double> x_star,
                         const SolverConfig& cfg) {
    switch (m) {
    case Method::rk: return rk_solve(a, f, x_star, cfg);
    case Method::grbk: return greedy_block_solve(a, f, x_star, GreedyVariant::grbk, cfg);
    case Method::rbkk: return greedy_block_solve(a, f, x_star, GreedyVariant::rbkk, cfg);
    case Method::grebkk: return greedy_block_solve(a, f, x_star, GreedyVariant::grebkk, cfg);
    case Method::arbk: return arbk_solve(a, f, x_star, cfg);
    case Method::pobk: return pobk_solve(a, f, x_star, cfg);
    }
    throw invalid_argument("unknown solver");
}

} // namespace pobk

#endif // POBK_SOLVERS_HPP
