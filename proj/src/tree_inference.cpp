#include "gaussdual/tree_inference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace gaussdual {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

EliminationOrder peel_leaves(const Adjacency& adj, std::size_t n) {
    EliminationOrder elim;
    elim.order.reserve(n);
    elim.parent.assign(n, kNoParent);

    std::vector<std::size_t> degree(n);
    std::vector<char> eliminated(n, 0);
    std::vector<std::size_t> round;
    for (std::size_t v = 0; v < n; ++v) {
        degree[v] = adj.degree(v);
        if (degree[v] <= 1) round.push_back(v);
    }

    std::vector<std::size_t> next;
    while (!round.empty()) {
        std::sort(round.begin(), round.end());
        next.clear();
        for (std::size_t v : round) {
            if (eliminated[v]) continue;
            eliminated[v] = 1;
            elim.order.push_back(v);
            for (std::size_t t = adj.offsets[v]; t < adj.offsets[v + 1]; ++t) {
                const std::size_t u = adj.neighbors[t];
                if (eliminated[u]) continue;
                elim.parent[v] = u;
                // Exactly one live neighbor remains; it becomes a leaf candidate
                // when its degree drops to one.
                if (--degree[u] == 1) next.push_back(u);
            }
            degree[v] = 0;
        }
        // A vertex reaching degree 0 inside this round (its last neighbor was
        // peeled after it became a candidate) was already pushed at degree 1.
        round.swap(next);
    }

    if (elim.order.size() != n) {
        throw NotAForest("sparsity graph has a cycle: " + std::to_string(n - elim.order.size()) +
                         " vertices could not be peeled");
    }
    return elim;
}

}  // namespace

std::string_view to_string(LogDetMethod m) {
    switch (m) {
        case LogDetMethod::TreeBp: return "tree_bp";
        case LogDetMethod::BlockTridiag: return "block_tridiag";
        case LogDetMethod::Dense: return "dense";
    }
    return "unknown";
}

EliminationOrder tree_elimination_order(const SparseSymMatrix& g) {
    return peel_leaves(Adjacency::build(g), g.size());
}

LogDetReport logdet_tree_bp(const SparseSymMatrix& m) {
    const auto start = Clock::now();
    const std::size_t n = m.size();
    const Adjacency adj = Adjacency::build(m);
    const EliminationOrder elim = peel_leaves(adj, n);

    const double threshold = pivot_threshold(m.max_diag());
    std::vector<double> pivot = m.diag();
    std::vector<std::size_t> depth(n, 1);
    LogDetReport report;
    report.method = LogDetMethod::TreeBp;
    report.n = n;

    double logdet = 0.0;
    for (std::size_t v : elim.order) {
        const double p = pivot[v];
        if (!(p > threshold)) throw NotPositiveDefinite(v, p);
        logdet += std::log(p);
        const std::size_t u = elim.parent[v];
        if (u == kNoParent) {
            report.stats.depth = std::max(report.stats.depth, depth[v]);
            continue;
        }
        double w = 0.0;
        for (std::size_t t = adj.offsets[v]; t < adj.offsets[v + 1]; ++t) {
            if (adj.neighbors[t] == u) {
                w = adj.weights[t];
                break;
            }
        }
        pivot[u] -= w * w / p;
        depth[u] = std::max(depth[u], depth[v] + 1);
    }

    report.logdet = logdet;
    report.stats.pivots = n;
    report.stats.wall_ms = elapsed_ms(start);
    return report;
}

BlockTridiagonal partition_block_tridiagonal(const SparseSymMatrix& m, std::size_t block_size) {
    const std::size_t n = m.size();
    if (block_size == 0 || n % block_size != 0) {
        throw DimensionMismatch("dimension " + std::to_string(n) +
                                " is not a multiple of block size " + std::to_string(block_size));
    }
    const std::size_t blocks = n / block_size;
    const auto bs = static_cast<Eigen::Index>(block_size);

    std::vector<Eigen::MatrixXd> diag(blocks, Eigen::MatrixXd::Zero(bs, bs));
    BlockTridiagonal out;
    out.upper.assign(blocks > 0 ? blocks - 1 : 0, Eigen::MatrixXd::Zero(bs, bs));
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i % block_size);
        diag[i / block_size](r, r) = m.diag()[i];
    }
    for (const auto& e : m.edges()) {
        const std::size_t bi = e.i / block_size;
        const std::size_t bj = e.j / block_size;
        const auto r = static_cast<Eigen::Index>(e.i % block_size);
        const auto c = static_cast<Eigen::Index>(e.j % block_size);
        if (bi == bj) {
            diag[bi](r, c) = e.weight;
            diag[bi](c, r) = e.weight;
        } else if (bj == bi + 1) {
            out.upper[bi](r, c) = e.weight;
        } else {
            throw DimensionMismatch("entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                    ") lies outside the block tridiagonal band");
        }
    }
    out.diag.reserve(blocks);
    for (auto& d : diag) out.diag.emplace_back(d);
    return out;
}

LogDetReport logdet_block_tridiagonal(const std::vector<SymMatrix>& diag_blocks,
                                      const std::vector<Eigen::MatrixXd>& upper_blocks) {
    const auto start = Clock::now();
    const std::size_t blocks = diag_blocks.size();
    if (blocks == 0 ? !upper_blocks.empty() : upper_blocks.size() + 1 != blocks) {
        throw DimensionMismatch("expected " + std::to_string(blocks > 0 ? blocks - 1 : 0) +
                                " off-diagonal blocks, got " + std::to_string(upper_blocks.size()));
    }

    LogDetReport report;
    report.method = LogDetMethod::BlockTridiag;
    double logdet = 0.0;
    std::size_t offset = 0;
    SymMatrix schur = blocks > 0 ? diag_blocks[0] : SymMatrix();
    for (std::size_t b = 0; b < blocks; ++b) {
        SpdFactor f;
        try {
            f = spd_factorize(schur);
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite(offset + e.pivot_index(), 0.0);
        }
        logdet += f.logdet;
        offset += schur.size();
        if (b + 1 == blocks) break;

        const Eigen::MatrixXd& c = upper_blocks[b];
        const SymMatrix& next = diag_blocks[b + 1];
        if (c.rows() != static_cast<Eigen::Index>(schur.size()) ||
            c.cols() != static_cast<Eigen::Index>(next.size())) {
            throw DimensionMismatch("off-diagonal block " + std::to_string(b) + " has shape " +
                                    std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
        }
        // C^T U^{-1} C = W^T W with W = L^{-1} C.
        const Eigen::MatrixXd w = f.lower.triangularView<Eigen::Lower>().solve(c);
        Eigen::MatrixXd s = next.dense();
        s.noalias() -= w.transpose() * w;
        schur = SymMatrix(Eigen::MatrixXd(0.5 * (s + s.transpose())));
    }

    report.logdet = logdet;
    report.n = offset;
    report.stats.pivots = offset;
    report.stats.depth = blocks;
    report.stats.wall_ms = elapsed_ms(start);
    return report;
}

LogDetReport logdet_block_tridiagonal(const BlockTridiagonal& m) {
    return logdet_block_tridiagonal(m.diag, m.upper);
}

LogDetReport logdet_dense(const SparseSymMatrix& m) {
    const auto start = Clock::now();
    LogDetReport report;
    report.method = LogDetMethod::Dense;
    report.n = m.size();
    report.logdet = spd_logdet(m.to_sym());
    report.stats.pivots = m.size();
    report.stats.depth = m.size();
    report.stats.wall_ms = elapsed_ms(start);
    return report;
}

}  // namespace gaussdual
