#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gaussdual/modelgen.hpp"
#include "gaussdual/tree_inference.hpp"

namespace gaussdual {

/// Backends selectable from the command line.
enum class SolveMethod { DualityBp, DualityDense, DirectDense, DirectBlockTri };

std::string_view to_string(SolveMethod m);
std::optional<SolveMethod> parse_method(std::string_view s);

inline constexpr std::size_t kDefaultDenseCap = 4000;

/// GAUSSDUAL_DENSE_CAP if set to a positive integer, else kDefaultDenseCap.
std::size_t dense_cap_from_env();

struct LogDetResult {
    double logdet_sigma = 0.0;
    double wall_ms = 0.0;
    std::size_t n = 0;  ///< dimension of the matrix actually eliminated
    std::string backend;
    LogDetStats stats;  ///< from the elimination backend
    std::optional<std::string> warning;
};

/// log det(Sigma) for `model` through the chosen backend, timed.
LogDetResult compute_logdet(const LadderModel& model, SolveMethod method);

/// Dimension the dense backends would factor: N for direct, N - 2k for duality.
std::size_t dense_size(const LadderModel& model, SolveMethod method);

struct BenchConfig {
    std::size_t k = 4;
    std::vector<std::size_t> rung_schedule;
    Structure structure = Structure::StarPattern;
    std::vector<SolveMethod> methods{SolveMethod::DualityBp};
    std::uint64_t seed = 1;
    std::size_t repeats = 1;  ///< wall_ms is the median over this many runs
    std::size_t dense_cap = kDefaultDenseCap;
};

struct BenchRow {
    std::size_t k = 0;
    std::size_t rungs = 0;
    std::size_t n = 0;
    SolveMethod method = SolveMethod::DualityBp;
    std::optional<double> logdet;  ///< empty when skipped or failed
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
    std::string error;             ///< skip reason or failure message
};

/// Rows ordered by (L, method) in schedule and method-list order.
std::vector<BenchRow> run_bench(const BenchConfig& config);

inline constexpr std::string_view kBenchCsvHeader = "k,L,N,method,logdet,wall_ms,seed,error";

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace gaussdual
