#pragma once

// Fixtures and independent oracles shared by the test binaries. Nothing here
// calls into the factorization or elimination code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaussdual/gaussdual.hpp"

namespace gaussdual::testing {

inline SymMatrix example1_block() {
    return {{2, 1, 1, 0}, {1, 2, 0, 0}, {1, 0, 2, 1}, {0, 0, 1, 2}};
}

inline LadderModel example1_model() {
    return LadderModel(2, {example1_block(), example1_block(), example1_block()});
}

inline SymMatrix example2_block1() {
    return {{3, 1, 0, 2, 0, 0}, {1, 2, 1, 0, 0, 0}, {0, 1, 3, 0, 0, 0},
            {2, 0, 0, 3, 1, 0}, {0, 0, 0, 1, 2, 1}, {0, 0, 0, 0, 1, 3}};
}

inline SymMatrix example2_block2() {
    return {{4, 1, 0, -2, 0, 0}, {1, 3, -1, 0, 0, 0}, {0, -1, 1, 0, 0, 0},
            {-2, 0, 0, 4, 1, 0}, {0, 0, 0, 1, 3, -1}, {0, 0, 0, 0, -1, 1}};
}

inline LadderModel example2_model() { return LadderModel(3, {example2_block1(), example2_block2()}); }

inline LadderModel identity_model(std::size_t k, std::size_t rungs) {
    return LadderModel(k, std::vector<SymMatrix>(rungs, SymMatrix::identity(2 * k)));
}

/// Determinant by Laplace expansion along the first row. Exponential; n <= 8.
inline double cofactor_det(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        if (m(0, c) == 0.0) continue;
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index c2 = 0; c2 < n; ++c2) {
                if (c2 != c) minor(r - 1, cc++) = m(r, c2);
            }
        }
        det += ((c % 2 == 0) ? 1.0 : -1.0) * m(0, c) * cofactor_det(minor);
    }
    return det;
}

/// Log-determinant of an SPD matrix via Eigen's LDLT (a different
/// factorization path from the library's Cholesky).
inline double ldlt_logdet(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0.0;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    return ldlt.vectorD().array().log().sum();
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// G^T G + n I with G uniform in [-1, 1].
inline Eigen::MatrixXd random_spd(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd g(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i)
        for (Eigen::Index j = 0; j < nn; ++j) g(i, j) = u(rng);
    Eigen::MatrixXd m = g.transpose() * g + static_cast<double>(n) * Eigen::MatrixXd::Identity(nn, nn);
    return 0.5 * (m + m.transpose());
}

/// Random forest on n vertices (each vertex attaches to an earlier one with
/// probability `attach`), relabelled by a random permutation, with
/// diagonally dominant values.
inline SparseSymMatrix random_forest_spd(std::size_t n, std::mt19937_64& rng, double attach = 0.9) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::size_t> label(n);
    std::iota(label.begin(), label.end(), std::size_t{0});
    std::shuffle(label.begin(), label.end(), rng);

    std::vector<WeightedEdge> edges;
    std::vector<double> incident(n, 0.0);
    for (std::size_t v = 1; v < n; ++v) {
        if (u(rng) > attach) continue;
        const std::size_t p = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        const double w = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + 2.0 * u(rng));
        edges.push_back({label[p], label[v], w});
        incident[label[p]] += std::abs(w);
        incident[label[v]] += std::abs(w);
    }
    std::vector<double> diag(n);
    for (std::size_t v = 0; v < n; ++v) diag[v] = incident[v] + 0.05 + u(rng);
    return SparseSymMatrix(std::move(diag), std::move(edges));
}

/// Applies the relabelling v -> perm[v].
inline SparseSymMatrix permuted(const SparseSymMatrix& m, const std::vector<std::size_t>& perm) {
    std::vector<double> diag(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) diag[perm[v]] = m.diag()[v];
    std::vector<WeightedEdge> edges;
    for (const auto& e : m.edges()) edges.push_back({perm[e.i], perm[e.j], e.weight});
    return SparseSymMatrix(std::move(diag), std::move(edges));
}

/// Dense N x N global precision assembled entry by entry from dense inverses
/// (Eigen's partial-pivot LU, not the library's Cholesky path).
inline Eigen::MatrixXd oracle_global_precision(const LadderModel& model) {
    const auto k = static_cast<Eigen::Index>(model.k());
    const auto n = static_cast<Eigen::Index>(model.num_variables());
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t l = 0; l < model.rungs(); ++l) {
        const auto off = static_cast<Eigen::Index>(l) * k;
        j.block(off, off, 2 * k, 2 * k) += model.block(l).dense().partialPivLu().inverse();
    }
    return j;
}

}  // namespace gaussdual::testing
