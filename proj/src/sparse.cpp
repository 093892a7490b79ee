#include "gaussdual/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaussdual {

SparseSymMatrix::SparseSymMatrix(std::vector<double> diag, std::vector<WeightedEdge> edges)
    : diag_(std::move(diag)) {
    const std::size_t n = diag_.size();
    edges_.reserve(edges.size());
    for (WeightedEdge e : edges) {
        if (e.i == e.j) throw DimensionMismatch("self-loop edge at " + std::to_string(e.i));
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.j >= n) {
            throw DimensionMismatch("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                    ") out of range for dimension " + std::to_string(n));
        }
        if (e.weight != 0.0) edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t t = 1; t < edges_.size(); ++t) {
        if (edges_[t].i == edges_[t - 1].i && edges_[t].j == edges_[t - 1].j) {
            throw DimensionMismatch("duplicate edge (" + std::to_string(edges_[t].i) + ", " +
                                    std::to_string(edges_[t].j) + ")");
        }
    }
}

double SparseSymMatrix::max_diag() const noexcept {
    double m = 0.0;
    for (double d : diag_) m = std::max(m, d);
    return m;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(diag_.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag_[static_cast<std::size_t>(i)];
    for (const auto& e : edges_) {
        const auto i = static_cast<Eigen::Index>(e.i);
        const auto j = static_cast<Eigen::Index>(e.j);
        m(i, j) = e.weight;
        m(j, i) = e.weight;
    }
    return m;
}

SymMatrix SparseSymMatrix::to_sym() const { return SymMatrix(to_dense()); }

BandAccumulator::BandAccumulator(std::size_t n, std::size_t bandwidth)
    : n_(n), bw_(std::max<std::size_t>(bandwidth, 1)), band_(n * bw_, 0.0) {}

void BandAccumulator::add(std::size_t i, std::size_t j, double value) {
    if (i > j) std::swap(i, j);
    if (j >= n_ || j - i >= bw_) {
        throw DimensionMismatch("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside band of width " + std::to_string(bw_));
    }
    band_[i * bw_ + (j - i)] += value;
}

SparseSymMatrix BandAccumulator::finish(double zero_tol) const {
    std::vector<double> diag(n_);
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < n_; ++i) {
        const double* row = &band_[i * bw_];
        diag[i] = row[0];
        for (std::size_t d = 1; d < bw_ && i + d < n_; ++d) {
            if (std::abs(row[d]) > zero_tol) edges.push_back({i, i + d, row[d]});
        }
    }
    // Already sorted and unique; the constructor re-checks cheaply.
    return SparseSymMatrix(std::move(diag), std::move(edges));
}

Adjacency Adjacency::build(const SparseSymMatrix& m) {
    const std::size_t n = m.size();
    Adjacency adj;
    adj.offsets.assign(n + 1, 0);
    for (const auto& e : m.edges()) {
        ++adj.offsets[e.i + 1];
        ++adj.offsets[e.j + 1];
    }
    for (std::size_t v = 0; v < n; ++v) adj.offsets[v + 1] += adj.offsets[v];
    adj.neighbors.resize(adj.offsets[n]);
    adj.weights.resize(adj.offsets[n]);
    std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& e : m.edges()) {
        adj.neighbors[fill[e.i]] = e.j;
        adj.weights[fill[e.i]++] = e.weight;
        adj.neighbors[fill[e.j]] = e.i;
        adj.weights[fill[e.j]++] = e.weight;
    }
    return adj;
}

}  // namespace gaussdual
