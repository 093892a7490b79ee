#include "gaussdual/ladder_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gaussdual {

namespace {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// False if a and b were already connected.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

LadderModel::LadderModel(std::size_t k, std::vector<SymMatrix> covariance_blocks)
    : k_(k), blocks_(std::move(covariance_blocks)) {
    if (k_ == 0) throw DimensionMismatch("ladder half-width k must be at least 1");
    if (blocks_.empty()) throw DimensionMismatch("ladder needs at least one rung");
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        if (blocks_[l].size() != 2 * k_) {
            throw DimensionMismatch("block " + std::to_string(l) + " is " +
                                    std::to_string(blocks_[l].size()) + "x" +
                                    std::to_string(blocks_[l].size()) + ", expected " +
                                    std::to_string(2 * k_) + "x" + std::to_string(2 * k_));
        }
    }
}

LadderModel LadderModel::from_precision(std::size_t k,
                                        const std::vector<SymMatrix>& precision_blocks) {
    std::vector<SymMatrix> cov;
    cov.reserve(precision_blocks.size());
    for (const auto& p : precision_blocks) cov.push_back(spd_inverse(p));
    return LadderModel(k, std::move(cov));
}

LadderModel LadderModel::scaled(double c) const {
    std::vector<SymMatrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.scaled(c));
    LadderModel m(k_, std::move(out));
    m.name = name;
    m.seed = seed;
    return m;
}

SparseSymMatrix sparsity_graph(const SymMatrix& m, double zero_tol) {
    const std::size_t n = m.size();
    std::vector<double> diag(n);
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = m(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j)) > zero_tol) edges.push_back({i, j, m(i, j)});
        }
    }
    return SparseSymMatrix(std::move(diag), std::move(edges));
}

bool is_forest(const SparseSymMatrix& g) {
    UnionFind uf(g.size());
    for (const auto& e : g.edges()) {
        if (!uf.unite(e.i, e.j)) return false;
    }
    return true;
}

ValidationReport validate(const LadderModel& model, double zero_tol) {
    const std::size_t k = model.k();
    ValidationReport report;
    report.assumption1_ok = true;
    report.assumption2_cycles_present = true;
    report.assumption3_blocks_acyclic = true;

    // Union graph over global variables; an edge shared by consecutive rungs
    // is one edge, not a parallel pair.
    BandAccumulator union_edges(model.num_variables(), 2 * k);

    for (std::size_t l = 0; l < model.rungs(); ++l) {
        const SymMatrix& block = model.block(l);
        const std::string tag = "block " + std::to_string(l + 1);
        if (block.size() != 2 * k) {
            throw DimensionMismatch(tag + " is not " + std::to_string(2 * k) + "x" +
                                    std::to_string(2 * k));
        }

        if (!is_spd(block)) {
            report.assumption1_ok = false;
            report.assumption2_cycles_present = false;
            report.messages.push_back(tag + ": covariance is not symmetric positive definite");
        } else {
            const bool precision_cyclic = !is_forest(sparsity_graph(spd_inverse(block), zero_tol));
            if (!precision_cyclic) {
                report.assumption2_cycles_present = false;
                report.messages.push_back(tag + ": local precision graph is acyclic (advisory)");
            }
        }

        const SparseSymMatrix cov_graph = sparsity_graph(block, zero_tol);
        if (!is_forest(cov_graph)) {
            report.assumption3_blocks_acyclic = false;
            report.messages.push_back(tag + ": local covariance graph has a cycle");
        }
        for (const auto& e : cov_graph.edges()) {
            union_edges.add(model.global_index(l, e.i), model.global_index(l, e.j), 1.0);
        }
    }

    report.assumption3_union_acyclic =
        report.assumption3_blocks_acyclic && is_forest(union_edges.finish());
    if (report.assumption3_blocks_acyclic && !report.assumption3_union_acyclic) {
        report.messages.push_back("glued covariance graph across rungs has a cycle");
    }
    return report;
}

SparseSymMatrix assemble_global_precision(const LadderModel& model) {
    const std::size_t k = model.k();
    BandAccumulator acc(model.num_variables(), 2 * k);
    for (std::size_t l = 0; l < model.rungs(); ++l) {
        const SymMatrix precision = spd_inverse(model.block(l));
        for (std::size_t p = 0; p < 2 * k; ++p) {
            for (std::size_t q = p; q < 2 * k; ++q) {
                acc.add(model.global_index(l, p), model.global_index(l, q), precision(p, q));
            }
        }
    }
    return acc.finish();
}

std::vector<double> local_logdets(const LadderModel& model) {
    std::vector<double> out;
    out.reserve(model.rungs());
    for (const auto& b : model.blocks()) out.push_back(spd_logdet(b));
    return out;
}

}  // namespace gaussdual
