#pragma once

#include <cstddef>
#include <vector>

#include "gaussdual/ladder_model.hpp"
#include "gaussdual/sparse.hpp"

namespace gaussdual {

/// Gaussian obtained by Fourier-dualizing a ladder model.
///
/// Every rung factor becomes a Gaussian whose quadratic form uses the local
/// covariance in place of the local precision. The sign-inverting edge
/// constraints w'_i = -w_i are substituted away, which flips the sign of the
/// cross-half entries of each rung. The boundary delta factors pin the first
/// k and last k variables to zero. What remains is an (N - 2k)-variate
/// zero-mean Gaussian with precision `precision`.
struct DualModel {
    std::size_t k = 0;
    std::size_t rungs = 0;
    /// Precision of the reduced dual Gaussian, size n_dual = (L - 1) * k.
    SparseSymMatrix precision;
    /// variable_map[p] = primal (0-based) index of dual coordinate p; always k + p.
    std::vector<std::size_t> variable_map;
    /// The 2k pinned primal indices, ascending: 0..k-1 and L*k..N-1.
    std::vector<std::size_t> pinned;

    std::size_t size() const noexcept { return precision.size(); }
    std::size_t num_primal() const noexcept { return (rungs + 1) * k; }
};

/// D * block * D with D = diag(-1 (k times), +1 (k times)).
/// Throws DimensionMismatch unless block is 2k x 2k.
SymMatrix sign_congruence(const SymMatrix& block, std::size_t k);

struct DualBuildOptions {
    /// When false the cross-half sign flip is skipped; the result differs but
    /// has the same determinant. Used to check that invariance.
    bool sign_inverters = true;
};

/// Assembles the pinned dual precision in O(L k^2) time and memory.
DualModel build_dual(const LadderModel& model, DualBuildOptions options = {});

bool dual_is_tree(const DualModel& dual, double zero_tol = 0.0);

}  // namespace gaussdual
