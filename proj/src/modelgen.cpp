#include "gaussdual/modelgen.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gaussdual {

namespace {

// mt19937_64's output sequence is fixed by the standard; the distributions in
// <random> are not, so draws are mapped by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

EdgeList group_tree(const GenSpec& spec, Rng& rng) {
    const std::size_t k = spec.k;
    EdgeList edges;
    switch (spec.structure) {
        case Structure::Diagonal:
            break;
        case Structure::StarPattern:
            for (std::size_t a = 0; a + 1 < k; ++a) edges.emplace_back(a, a + 1);
            break;
        case Structure::RandomTree: {
            // Random recursive tree over a random labelling.
            std::vector<std::size_t> perm(k);
            for (std::size_t i = 0; i < k; ++i) perm[i] = i;
            for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            for (std::size_t i = 1; i < k; ++i) edges.emplace_back(perm[rng.below(i)], perm[i]);
            break;
        }
    }
    return edges;
}

}  // namespace

std::string_view to_string(Structure s) {
    switch (s) {
        case Structure::StarPattern: return "star_pattern";
        case Structure::RandomTree: return "random_tree";
        case Structure::Diagonal: return "diagonal";
    }
    return "unknown";
}

std::optional<Structure> parse_structure(std::string_view s) {
    if (s == "star_pattern" || s == "star") return Structure::StarPattern;
    if (s == "random_tree" || s == "tree") return Structure::RandomTree;
    if (s == "diagonal") return Structure::Diagonal;
    return std::nullopt;
}

LadderModel generate(const GenSpec& spec) {
    if (spec.k == 0) throw InfeasibleStructure("k must be at least 1");
    if (spec.rungs == 0) throw InfeasibleStructure("L must be at least 1");
    if (!(spec.weight_min > 0.0) || !(spec.weight_max >= spec.weight_min) ||
        !std::isfinite(spec.weight_max)) {
        throw InfeasibleStructure("weight range must satisfy 0 < min <= max");
    }

    const std::size_t k = spec.k;
    Rng rng(spec.seed);

    // Consecutive rungs share a k-variable group, so both must induce the
    // same edge set on it; otherwise the glued graph picks up cycles.
    std::vector<EdgeList> groups;
    groups.reserve(spec.rungs + 1);
    for (std::size_t g = 0; g <= spec.rungs; ++g) groups.push_back(group_tree(spec, rng));

    std::vector<SymMatrix> blocks;
    blocks.reserve(spec.rungs);
    for (std::size_t l = 0; l < spec.rungs; ++l) {
        EdgeList edges;
        for (auto [a, b] : groups[l]) edges.emplace_back(a, b);
        for (auto [a, b] : groups[l + 1]) edges.emplace_back(k + a, k + b);
        if (spec.structure != Structure::Diagonal) edges.emplace_back(0, k);

        SymMatrix block(2 * k);
        std::vector<double> incident(2 * k, 0.0);
        for (auto [a, b] : edges) {
            const double magnitude = rng.uniform(spec.weight_min, spec.weight_max);
            const double w = rng.coin() ? -magnitude : magnitude;
            block.set(a, b, w);
            incident[a] += magnitude;
            incident[b] += magnitude;
        }
        for (std::size_t p = 0; p < 2 * k; ++p) {
            block.set(p, p, incident[p] + rng.uniform(0.5, 1.5));
        }
        blocks.push_back(std::move(block));
    }

    LadderModel model(k, std::move(blocks));
    model.seed = spec.seed;
    model.name = std::string(to_string(spec.structure)) + "_k" + std::to_string(k) + "_L" +
                 std::to_string(spec.rungs);
    return model;
}

}  // namespace gaussdual
