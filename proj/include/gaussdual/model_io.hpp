#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gaussdual/dual_nfg.hpp"
#include "gaussdual/ladder_model.hpp"

namespace gaussdual {

inline constexpr const char* kModelFormatVersion = "1.0";

/// Model file layout:
///
///   {
///     "format_version": "1.0",
///     "k": 2, "L": 3,
///     "blocks": [ {"covariance": [[...], ...]}, {"precision": [[...], ...]}, ... ],
///     "metadata": {"name": "...", "seed": 7}          (optional)
///   }
///
/// Each block gives exactly one of "covariance" or "precision", as a 2k x 2k
/// row-major nested array (a flat array of 4k^2 numbers is also accepted).
/// Precision blocks are inverted on load. Throws ParseError for malformed
/// JSON or schema violations and DimensionMismatch for wrongly sized blocks.
LadderModel model_from_json(const nlohmann::json& j);
LadderModel load_model(const std::filesystem::path& path);

/// Writes covariance blocks with shortest round-trip decimal encoding.
nlohmann::json model_to_json(const LadderModel& model);
void save_model(const LadderModel& model, const std::filesystem::path& path);

/// {"k", "L", "n_dual", "pinned", "variable_map",
///  "precision": {"n", "diag": [...], "edges": [[i, j, w], ...]}}
/// All indices are 0-based; dual index p corresponds to primal index variable_map[p].
nlohmann::json dual_to_json(const DualModel& dual);
DualModel dual_from_json(const nlohmann::json& j);

}  // namespace gaussdual
