#ifndef POBK_BENCH_RHS_HPP
#define POBK_BENCH_RHS_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "pobk/random.hpp"
#include "pobk/sparse.hpp"

namespace pobk::bench {

enum class RhsMode { ones, random };

inline RhsMode parse_rhs_mode(std::string_view s) {
    if (s == "ones") return RhsMode::ones;
    if (s == "random") return RhsMode::random;
    throw invalid_argument("unknown rhs mode '" + std::string(s) + "'");
}

inline std::string_view to_string(RhsMode m) { return m == RhsMode::ones ? "ones" : "random"; }

/// A consistent system's right-hand side together with its exact solution.
struct ConsistentRhs {
    Vector f;
    Vector x_star;
};

/// x* is all ones, or uniform on [-1, 1) from `seed`; f = A x*.
inline ConsistentRhs generate_rhs(const SparseMatrix& a, RhsMode mode, std::uint64_t seed = 0) {
    if (!a.is_square()) throw invalid_argument("generate_rhs: matrix must be square");
    ConsistentRhs out;
    out.x_star.resize(a.cols(), 1.0);
    if (mode == RhsMode::random) {
        rng gen(seed);
        for (double& v : out.x_star) v = gen.uniform(-1.0, 1.0);
    }
    out.f = spmv(a, out.x_star);
    return out;
}

} // namespace pobk::bench

#endif // POBK_BENCH_RHS_HPP
