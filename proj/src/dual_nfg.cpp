#include "gaussdual/dual_nfg.hpp"

#include <cmath>
#include <string>

namespace gaussdual {

SymMatrix sign_congruence(const SymMatrix& block, std::size_t k) {
    if (block.size() != 2 * k) {
        throw DimensionMismatch("sign congruence needs a " + std::to_string(2 * k) + "x" +
                                std::to_string(2 * k) + " block, got " +
                                std::to_string(block.size()));
    }
    SymMatrix out = block;
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = k; q < 2 * k; ++q) out.set(p, q, -block(p, q));
    }
    return out;
}

DualModel build_dual(const LadderModel& model, DualBuildOptions options) {
    const std::size_t k = model.k();
    const std::size_t rungs = model.rungs();
    const std::size_t n_primal = model.num_variables();
    const std::size_t n_dual = n_primal - 2 * k;

    DualModel dual;
    dual.k = k;
    dual.rungs = rungs;
    dual.variable_map.resize(n_dual);
    for (std::size_t p = 0; p < n_dual; ++p) dual.variable_map[p] = k + p;
    for (std::size_t i = 0; i < k; ++i) dual.pinned.push_back(i);
    for (std::size_t i = n_primal - k; i < n_primal; ++i) dual.pinned.push_back(i);

    // Primal index g maps to dual index g - k when k <= g < N - k.
    const auto unpinned = [&](std::size_t g) { return g >= k && g < n_primal - k; };

    BandAccumulator acc(n_dual, 2 * k);
    for (std::size_t l = 0; l < rungs; ++l) {
        const SymMatrix& cov = model.block(l);
        for (std::size_t p = 0; p < 2 * k; ++p) {
            const std::size_t gp = model.global_index(l, p);
            if (!unpinned(gp)) continue;
            for (std::size_t q = p; q < 2 * k; ++q) {
                const std::size_t gq = model.global_index(l, q);
                if (!unpinned(gq)) continue;
                const bool cross = p < k && q >= k;
                const double v = (cross && options.sign_inverters) ? -cov(p, q) : cov(p, q);
                acc.add(gp - k, gq - k, v);
            }
        }
    }
    dual.precision = acc.finish();
    return dual;
}

bool dual_is_tree(const DualModel& dual, double zero_tol) {
    if (zero_tol <= 0.0) return is_forest(dual.precision);
    std::vector<WeightedEdge> kept;
    for (const auto& e : dual.precision.edges()) {
        if (std::abs(e.weight) > zero_tol) kept.push_back(e);
    }
    return is_forest(SparseSymMatrix(dual.precision.diag(), std::move(kept)));
}

}  // namespace gaussdual
