#include "gaussdual/model_io.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace gaussdual {

using nlohmann::json;

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, std::size_t dim, const std::string& where) {
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd m(n, n);
    if (!j.is_array()) throw ParseError(where + ": expected an array");

    if (!j.empty() && j.front().is_array()) {
        if (j.size() != dim) {
            throw DimensionMismatch(where + ": has " + std::to_string(j.size()) + " rows, expected " +
                                    std::to_string(dim));
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            const json& row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != dim) {
                throw DimensionMismatch(where + ": row " + std::to_string(r) + " does not have " +
                                        std::to_string(dim) + " entries");
            }
            for (Eigen::Index c = 0; c < n; ++c) {
                const json& v = row[static_cast<std::size_t>(c)];
                if (!v.is_number()) throw ParseError(where + ": non-numeric entry");
                m(r, c) = v.get<double>();
            }
        }
        return m;
    }

    if (j.size() != dim * dim) {
        throw DimensionMismatch(where + ": flat array has " + std::to_string(j.size()) +
                                " entries, expected " + std::to_string(dim * dim));
    }
    for (std::size_t t = 0; t < dim * dim; ++t) {
        if (!j[t].is_number()) throw ParseError(where + ": non-numeric entry");
        m(static_cast<Eigen::Index>(t / dim), static_cast<Eigen::Index>(t % dim)) = j[t].get<double>();
    }
    return m;
}

json matrix_to_json(const SymMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t require_count(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
        throw ParseError(std::string("field '") + key + "' must be a positive integer");
    }
    return j[key].get<std::size_t>();
}

std::size_t require_index(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(where + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

LadderModel model_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("model file must be a JSON object");
    if (j.contains("format_version") && !j["format_version"].is_string()) {
        throw ParseError("field 'format_version' must be a string");
    }
    const std::size_t k = require_count(j, "k");
    const std::size_t rungs = require_count(j, "L");
    if (!j.contains("blocks") || !j["blocks"].is_array()) {
        throw ParseError("field 'blocks' must be an array");
    }
    const json& blocks = j["blocks"];
    if (blocks.size() != rungs) {
        throw DimensionMismatch("'blocks' has " + std::to_string(blocks.size()) +
                                " entries but L = " + std::to_string(rungs));
    }

    std::vector<SymMatrix> cov;
    cov.reserve(rungs);
    for (std::size_t l = 0; l < rungs; ++l) {
        const json& b = blocks[l];
        const std::string where = "block " + std::to_string(l + 1);
        if (!b.is_object()) throw ParseError(where + ": expected an object");
        const bool has_cov = b.contains("covariance");
        const bool has_prec = b.contains("precision");
        if (has_cov == has_prec) {
            throw ParseError(where + ": give exactly one of 'covariance' or 'precision'");
        }
        const SymMatrix m(matrix_from_json(has_cov ? b["covariance"] : b["precision"], 2 * k, where));
        cov.push_back(has_cov ? m : spd_inverse(m));
    }

    LadderModel model(k, std::move(cov));
    if (j.contains("metadata")) {
        const json& meta = j["metadata"];
        if (!meta.is_object()) throw ParseError("field 'metadata' must be an object");
        if (meta.contains("name") && meta["name"].is_string()) model.name = meta["name"].get<std::string>();
        if (meta.contains("seed")) {
            if (!meta["seed"].is_number_unsigned()) throw ParseError("metadata.seed must be a non-negative integer");
            model.seed = meta["seed"].get<std::uint64_t>();
        }
    }
    return model;
}

LadderModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

json model_to_json(const LadderModel& model) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["k"] = model.k();
    j["L"] = model.rungs();
    json blocks = json::array();
    for (const auto& b : model.blocks()) blocks.push_back({{"covariance", matrix_to_json(b)}});
    j["blocks"] = std::move(blocks);
    if (model.name || model.seed) {
        json meta = json::object();
        if (model.name) meta["name"] = *model.name;
        if (model.seed) meta["seed"] = *model.seed;
        j["metadata"] = std::move(meta);
    }
    return j;
}

void save_model(const LadderModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write model file " + path.string());
    out << model_to_json(model).dump(2) << '\n';
}

json dual_to_json(const DualModel& dual) {
    json edges = json::array();
    for (const auto& e : dual.precision.edges()) edges.push_back({e.i, e.j, e.weight});
    return {
        {"k", dual.k},
        {"L", dual.rungs},
        {"n_dual", dual.size()},
        {"pinned", dual.pinned},
        {"variable_map", dual.variable_map},
        {"precision", {{"n", dual.size()}, {"diag", dual.precision.diag()}, {"edges", std::move(edges)}}},
    };
}

DualModel dual_from_json(const json& j) {
    try {
        DualModel dual;
        dual.k = j.at("k").get<std::size_t>();
        dual.rungs = j.at("L").get<std::size_t>();
        dual.pinned = j.at("pinned").get<std::vector<std::size_t>>();
        dual.variable_map = j.at("variable_map").get<std::vector<std::size_t>>();
        const json& p = j.at("precision");
        auto diag = p.at("diag").get<std::vector<double>>();
        std::vector<WeightedEdge> edges;
        for (const json& e : p.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw ParseError("dual edge must be [i, j, weight]");
            edges.push_back({require_index(e[0], "edge"), require_index(e[1], "edge"), e[2].get<double>()});
        }
        dual.precision = SparseSymMatrix(std::move(diag), std::move(edges));
        if (dual.precision.size() != j.at("n_dual").get<std::size_t>() ||
            dual.variable_map.size() != dual.precision.size()) {
            throw DimensionMismatch("dual dimension fields disagree");
        }
        return dual;
    } catch (const json::exception& e) {
        throw ParseError(std::string("dual file: ") + e.what());
    }
}

}  // namespace gaussdual
