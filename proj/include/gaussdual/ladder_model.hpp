#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaussdual/linalg.hpp"
#include "gaussdual/sparse.hpp"

namespace gaussdual {

/// Gaussian model on a ladder: L overlapping rungs of 2k variables, rung l
/// (0-based) covering global variables l*k .. l*k + 2k - 1. Each rung carries
/// a local covariance block; the joint density is proportional to the product
/// of the rung densities, so the global precision is the overlap-add of the
/// local precision blocks.
class LadderModel {
public:
    /// Throws DimensionMismatch unless k >= 1, blocks is non-empty and every
    /// block is 2k x 2k. Positive definiteness is checked by validate().
    LadderModel(std::size_t k, std::vector<SymMatrix> covariance_blocks);

    /// Builds the model from local precision blocks (inverted once here).
    static LadderModel from_precision(std::size_t k, const std::vector<SymMatrix>& precision_blocks);

    std::size_t k() const noexcept { return k_; }
    std::size_t rungs() const noexcept { return blocks_.size(); }
    /// Total variable count (L + 1) * k.
    std::size_t num_variables() const noexcept { return (blocks_.size() + 1) * k_; }
    const std::vector<SymMatrix>& blocks() const noexcept { return blocks_; }
    const SymMatrix& block(std::size_t l) const { return blocks_.at(l); }

    /// Global index of local coordinate p in rung l.
    std::size_t global_index(std::size_t l, std::size_t p) const noexcept { return l * k_ + p; }

    /// Every block multiplied by c.
    LadderModel scaled(double c) const;

    std::optional<std::string> name;
    std::optional<std::uint64_t> seed;

private:
    std::size_t k_;
    std::vector<SymMatrix> blocks_;
};

struct ValidationReport {
    bool assumption1_ok = false;              ///< every block SPD
    bool assumption2_cycles_present = false;  ///< every local precision graph has a cycle (advisory)
    bool assumption3_blocks_acyclic = false;  ///< every local covariance graph is a forest
    bool assumption3_union_acyclic = false;   ///< the glued covariance graph is a forest
    std::vector<std::string> messages;

    /// Assumptions I and III; II is informational only.
    bool ok() const noexcept { return assumption1_ok && assumption3_union_acyclic; }
};

/// Off-diagonal entries with |m(i, j)| > zero_tol become edges.
SparseSymMatrix sparsity_graph(const SymMatrix& m, double zero_tol = 0.0);

bool is_forest(const SparseSymMatrix& g);

ValidationReport validate(const LadderModel& model, double zero_tol = 0.0);

/// Overlap-add of the inverted local blocks: the N x N global precision J.
SparseSymMatrix assemble_global_precision(const LadderModel& model);

/// log det of each local covariance block, in rung order.
std::vector<double> local_logdets(const LadderModel& model);

}  // namespace gaussdual
