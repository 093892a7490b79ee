#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "gaussdual/linalg.hpp"
#include "gaussdual/sparse.hpp"

namespace gaussdual {

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

/// Leaf-peeling order of a forest. When order[t] is eliminated, at most one of
/// its neighbors is still present; that neighbor is its parent.
struct EliminationOrder {
    std::vector<std::size_t> order;
    std::vector<std::size_t> parent;  ///< indexed by vertex; kNoParent for roots
};

enum class LogDetMethod { TreeBp, BlockTridiag, Dense };

std::string_view to_string(LogDetMethod m);

struct LogDetStats {
    std::size_t pivots = 0;
    std::size_t depth = 0;  ///< longest chain of dependent pivots
    double wall_ms = 0.0;
};

struct LogDetReport {
    LogDetMethod method = LogDetMethod::Dense;
    double logdet = 0.0;
    std::size_t n = 0;
    LogDetStats stats;
};

/// Peels leaves in rounds: each round takes every vertex of current degree
/// <= 1 in ascending index order. Throws NotAForest if a round finds none
/// while vertices remain.
EliminationOrder tree_elimination_order(const SparseSymMatrix& g);

/// Gaussian elimination along a forest (one leaf-to-root sweep of Gaussian
/// belief propagation). Each pivot is the diagonal left after the children's
/// messages w^2 / pivot have been subtracted. Linear in n + |edges|.
LogDetReport logdet_tree_bp(const SparseSymMatrix& m);

/// Block-tridiagonal matrix: diagonal blocks A_0..A_{B-1} and super-diagonal
/// blocks C_0..C_{B-2} (C_b couples block b to block b+1).
struct BlockTridiagonal {
    std::vector<SymMatrix> diag;
    std::vector<Eigen::MatrixXd> upper;
};

/// Splits a matrix into consecutive `block_size` x `block_size` blocks.
/// Throws DimensionMismatch if n is not a multiple of block_size or some
/// nonzero lies outside the block tridiagonal band.
BlockTridiagonal partition_block_tridiagonal(const SparseSymMatrix& m, std::size_t block_size);

/// Forward Schur recursion U_0 = A_0, U_{b+1} = A_{b+1} - C_b^T U_b^{-1} C_b.
LogDetReport logdet_block_tridiagonal(const std::vector<SymMatrix>& diag_blocks,
                                      const std::vector<Eigen::MatrixXd>& upper_blocks);
LogDetReport logdet_block_tridiagonal(const BlockTridiagonal& m);

/// Densify and Cholesky-factorize. The reference for the other methods.
LogDetReport logdet_dense(const SparseSymMatrix& m);

}  // namespace gaussdual
