#pragma once

#include <cstddef>
#include <vector>

#include "gaussdual/linalg.hpp"

namespace gaussdual {

struct WeightedEdge {
    std::size_t i = 0;  ///< always i < j
    std::size_t j = 0;
    double weight = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Symmetric matrix stored as its diagonal plus the nonzero strict upper
/// triangle. The edge list is also the matrix's undirected sparsity graph.
///
/// Edges are kept sorted by (i, j), carry no duplicates, no self-loops and
/// no zero weights.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;
    explicit SparseSymMatrix(std::size_t n) : diag_(n, 0.0) {}

    /// Builds from a diagonal and an edge list. Edges may be given in either
    /// orientation and in any order; duplicate (i, j) pairs and self-loops are
    /// rejected, zero weights are dropped.
    SparseSymMatrix(std::vector<double> diag, std::vector<WeightedEdge> edges);

    std::size_t size() const noexcept { return diag_.size(); }
    const std::vector<double>& diag() const noexcept { return diag_; }
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

    double max_diag() const noexcept;

    Eigen::MatrixXd to_dense() const;
    SymMatrix to_sym() const;

    friend bool operator==(const SparseSymMatrix&, const SparseSymMatrix&) = default;

private:
    std::vector<double> diag_;
    std::vector<WeightedEdge> edges_;
};

/// Accumulates a symmetric matrix whose nonzeros satisfy |i - j| < bandwidth.
/// Overlapping contributions add. Storage is n * bandwidth, so assembly of
/// ladder-structured matrices stays linear in n.
class BandAccumulator {
public:
    BandAccumulator(std::size_t n, std::size_t bandwidth);

    /// Adds `value` at (i, j) and (j, i). Requires |i - j| < bandwidth.
    void add(std::size_t i, std::size_t j, double value);

    /// Entries with |value| <= zero_tol are omitted from the edge list.
    SparseSymMatrix finish(double zero_tol = 0.0) const;

private:
    std::size_t n_;
    std::size_t bw_;
    std::vector<double> band_;  // band_[i * bw_ + (j - i)] for j >= i
};

/// Row/column-indexed neighbor lists of a sparse matrix (CSR layout).
struct Adjacency {
    std::vector<std::size_t> offsets;    // size n + 1
    std::vector<std::size_t> neighbors;  // neighbor vertex
    std::vector<double> weights;         // matching edge weight

    static Adjacency build(const SparseSymMatrix& m);

    std::size_t degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }
};

}  // namespace gaussdual
