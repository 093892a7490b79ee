#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "gaussdual/ladder_model.hpp"

namespace gaussdual {

enum class Structure {
    /// Path inside each half of a rung plus the cross edge (0, k).
    StarPattern,
    /// A random tree per k-variable group, shared by the two rungs that
    /// contain the group, plus the cross edge (0, k).
    RandomTree,
    Diagonal,
};

std::string_view to_string(Structure s);
std::optional<Structure> parse_structure(std::string_view s);

struct GenSpec {
    std::size_t k = 2;
    std::size_t rungs = 3;
    std::uint64_t seed = 0;
    Structure structure = Structure::StarPattern;
    /// Off-diagonal magnitudes are uniform in [weight_min, weight_max]; signs
    /// are uniform. Requires 0 < weight_min <= weight_max.
    double weight_min = 0.2;
    double weight_max = 1.0;
};

/// Random ladder model whose rung covariances follow `spec.structure`. Each
/// diagonal entry is the sum of absolute incident off-diagonal weights plus
/// a uniform draw from [0.5, 1.5], so every block is strictly diagonally
/// dominant and SPD. Deterministic in `spec` on every platform.
///
/// Throws InfeasibleStructure for k = 0, L = 0 or a bad weight range.
LadderModel generate(const GenSpec& spec);

}  // namespace gaussdual
