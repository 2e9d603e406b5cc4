#ifndef POBK_SOLVERS_SPECTRAL_HPP
#define POBK_SOLVERS_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <span>

#include "pobk/lstsq.hpp"

namespace pobk {

struct BlockSpectrum {
    double sigma_max = 0.0;
    double sigma_min = 0.0; ///< smallest singular value above the rank cutoff
    /// 1 - sigma_min^2 / sigma_max^2, the per-projection contraction factor.
    double factor() const { return 1.0 - (sigma_min * sigma_min) / (sigma_max * sigma_max); }
};

inline BlockSpectrum block_spectrum(const SparseMatrix& block, double rel_tol = default_rank_tolerance) {
    const BlockProjector proj(block, rel_tol);
    if (proj.rank() == 0) throw invalid_argument("block_spectrum: zero block");
    const auto sv = proj.singular_values();
    return {sv.front(), sv[proj.rank() - 1]};
}

/// Worst-case contraction of one outer iteration over k blocks:
/// max over blocks of (1 - sigma_min^2 / sigma_max^2), raised to k. This
/// bounds the squared error ratio.
inline double block_spectral_bound(std::span<const SparseMatrix> blocks, std::size_t k,
                                   double rel_tol = default_rank_tolerance) {
    if (blocks.empty()) throw invalid_argument("block_spectral_bound: no blocks");
    double worst = 0.0;
    for (const auto& b : blocks) worst = std::max(worst, block_spectrum(b, rel_tol).factor());
    return std::pow(worst, static_cast<double>(k));
}

} // namespace pobk

#endif // POBK_SOLVERS_SPECTRAL_HPP
