#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace gaussdual;
using namespace gaussdual::testing;
using nlohmann::json;

namespace {

const std::filesystem::path kModels = GAUSSDUAL_MODELS_DIR;

}  // namespace

TEST_CASE("shipped worked-example files") {
    const auto one = load_model(kModels / "example1.json");
    CHECK(one.k() == 2);
    CHECK(one.rungs() == 3);
    for (const auto& b : one.blocks()) CHECK(b == example1_block());
    CHECK(one.name == std::optional<std::string>("example1"));

    const auto two = load_model(kModels / "example2.json");
    CHECK(two.block(0) == example2_block1());
    CHECK(two.block(1) == example2_block2());
}

TEST_CASE("precision-encoded blocks agree with covariance-encoded ones") {
    const auto cov = load_model(kModels / "example1.json");
    const auto prec = load_model(kModels / "example1_precision.json");
    CHECK(std::abs(logdet_sigma_via_duality(cov) - logdet_sigma_via_duality(prec)) <= 1e-9);
    for (std::size_t l = 0; l < 3; ++l) {
        CHECK((cov.block(l).dense() - prec.block(l).dense()).cwiseAbs().maxCoeff() < 1e-12);
    }

    // Same check on generated models, encoded both ways.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto model = generate({.k = 3, .rungs = 5, .seed = seed, .structure = Structure::RandomTree});
        json j = model_to_json(model);
        for (std::size_t l = 0; l < model.rungs(); ++l) {
            const SymMatrix p = spd_inverse(model.block(l));
            json rows = json::array();
            for (std::size_t r = 0; r < p.size(); ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < p.size(); ++c) row.push_back(p(r, c));
                rows.push_back(row);
            }
            j["blocks"][l] = {{"precision", rows}};
        }
        const auto back = model_from_json(j);
        CHECK(std::abs(logdet_sigma_via_duality(back) - logdet_sigma_via_duality(model)) <= 1e-9);
    }
}

TEST_CASE("save/load round trip is value-identical") {
    const auto dir = std::filesystem::temp_directory_path() / "gaussdual_io_test";
    std::filesystem::create_directories(dir);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto model = generate({.k = 1 + seed % 4, .rungs = 1 + seed % 7, .seed = seed,
                                     .structure = seed % 2 ? Structure::RandomTree : Structure::StarPattern});
        const auto path = dir / ("m" + std::to_string(seed) + ".json");
        save_model(model, path);
        const auto back = load_model(path);
        REQUIRE(back.rungs() == model.rungs());
        for (std::size_t l = 0; l < model.rungs(); ++l) CHECK(back.block(l) == model.block(l));
        CHECK(back.seed == model.seed);
        CHECK(back.name == model.name);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("flat row-major arrays are accepted") {
    const json j = {{"k", 1}, {"L", 1}, {"blocks", {{{"covariance", {2, 1, 1, 2}}}}}};
    CHECK(model_from_json(j).block(0) == SymMatrix{{2, 1}, {1, 2}});
}

TEST_CASE("schema violations") {
    CHECK_THROWS_AS(load_model(kModels / "bad_dimension.json"), DimensionMismatch);
    CHECK_THROWS_AS(load_model(kModels / "does_not_exist.json"), ParseError);
    CHECK_THROWS_AS(model_from_json(json::array()), ParseError);
    CHECK_THROWS_AS(model_from_json({{"k", 1}, {"blocks", json::array()}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"k", 1}, {"L", 2}, {"blocks", {{{"covariance", {1, 0, 0, 1}}}}}}),
                    DimensionMismatch);
    CHECK_THROWS_AS(model_from_json({{"k", 1}, {"L", 1}, {"blocks", {json::object()}}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"k", 1},
                                     {"L", 1},
                                     {"blocks", {{{"covariance", {1, 0, 0, 1}}, {"precision", {1, 0, 0, 1}}}}}}),
                    ParseError);
    CHECK_THROWS_AS(model_from_json({{"k", 1}, {"L", 1}, {"blocks", {{{"covariance", {2, 1, 0, 2}}}}}}),
                    AsymmetricMatrix);
    CHECK_THROWS_AS(model_from_json({{"k", 1}, {"L", 1}, {"blocks", {{{"covariance", {2, "x", 0, 2}}}}}}),
                    ParseError);

    const auto bad = std::filesystem::temp_directory_path() / "gaussdual_bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(load_model(bad), ParseError);
    std::filesystem::remove(bad);
}

TEST_CASE("dual JSON") {
    SUBCASE("first worked example") {
        const json j = dual_to_json(build_dual(example1_model()));
        CHECK(j["n_dual"] == 4);
        CHECK(j["precision"]["diag"] == json({4.0, 4.0, 4.0, 4.0}));
        CHECK(j["precision"]["edges"] == json({{0, 1, 2.0}, {0, 2, -1.0}, {2, 3, 2.0}}));
        CHECK(j["variable_map"] == json({2, 3, 4, 5}));
        CHECK(j["pinned"] == json({0, 1, 6, 7}));
    }
    SUBCASE("single rung") {
        const json j = dual_to_json(build_dual(LadderModel(1, {SymMatrix{{2, 1}, {1, 2}}})));
        CHECK(j["n_dual"] == 0);
        CHECK(j["precision"]["diag"].empty());
        CHECK(j["precision"]["edges"].empty());
    }
    SUBCASE("round trip through text") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const DualModel d = build_dual(generate({.k = 3, .rungs = 2 + seed, .seed = seed}));
            const DualModel back = dual_from_json(json::parse(dual_to_json(d).dump()));
            CHECK(back.precision == d.precision);
            CHECK(back.pinned == d.pinned);
            CHECK(back.variable_map == d.variable_map);
        }
    }
    SUBCASE("malformed") {
        CHECK_THROWS_AS(dual_from_json(json::object()), ParseError);
    }
}
