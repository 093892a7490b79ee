#include "gaussdual/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iomanip>

#include "gaussdual/duality_engine.hpp"

namespace gaussdual {

std::string_view to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::DualityBp: return "duality-bp";
        case SolveMethod::DualityDense: return "duality-dense";
        case SolveMethod::DirectDense: return "direct-dense";
        case SolveMethod::DirectBlockTri: return "direct-blocktri";
    }
    return "unknown";
}

std::optional<SolveMethod> parse_method(std::string_view s) {
    for (SolveMethod m : {SolveMethod::DualityBp, SolveMethod::DualityDense,
                          SolveMethod::DirectDense, SolveMethod::DirectBlockTri}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

std::size_t dense_cap_from_env() {
    const char* raw = std::getenv("GAUSSDUAL_DENSE_CAP");
    if (raw == nullptr) return kDefaultDenseCap;
    std::size_t cap = 0;
    const char* end = raw + std::strlen(raw);
    const auto [ptr, ec] = std::from_chars(raw, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0) return kDefaultDenseCap;
    return cap;
}

std::size_t dense_size(const LadderModel& model, SolveMethod method) {
    const std::size_t n = model.num_variables();
    switch (method) {
        case SolveMethod::DualityBp:
        case SolveMethod::DualityDense: return n - 2 * model.k();
        case SolveMethod::DirectDense:
        case SolveMethod::DirectBlockTri: return n;
    }
    return n;
}

LogDetResult compute_logdet(const LadderModel& model, SolveMethod method) {
    const auto start = std::chrono::steady_clock::now();
    LogDetResult result;
    switch (method) {
        case SolveMethod::DualityBp:
        case SolveMethod::DualityDense: {
            const DualitySolution sol = solve_via_duality(
                model, {.method = method == SolveMethod::DualityBp ? DualMethod::TreeBp
                                                                   : DualMethod::Dense});
            result.logdet_sigma = sol.logdet_sigma;
            result.n = sol.dual.n;
            result.backend = std::string(to_string(sol.dual.method));
            result.stats = sol.dual.stats;
            result.warning = sol.warning;
            break;
        }
        case SolveMethod::DirectDense:
        case SolveMethod::DirectBlockTri: {
            const LogDetReport r = solve_direct(
                model, method == SolveMethod::DirectDense ? DirectMethod::Dense
                                                          : DirectMethod::BlockTridiag);
            result.logdet_sigma = -r.logdet;
            result.n = r.n;
            result.backend = std::string(to_string(r.method));
            result.stats = r.stats;
            break;
        }
    }
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    std::vector<BenchRow> rows;
    const std::size_t repeats = std::max<std::size_t>(config.repeats, 1);
    for (std::size_t rungs : config.rung_schedule) {
        std::optional<LadderModel> model;
        std::string gen_error;
        try {
            model = generate({.k = config.k, .rungs = rungs, .seed = config.seed,
                              .structure = config.structure});
        } catch (const Error& e) {
            gen_error = e.what();
        }

        for (SolveMethod method : config.methods) {
            BenchRow row;
            row.k = config.k;
            row.rungs = rungs;
            row.n = (rungs + 1) * config.k;
            row.method = method;
            row.seed = config.seed;
            if (!model) {
                row.error = gen_error;
                rows.push_back(std::move(row));
                continue;
            }
            const bool dense = method == SolveMethod::DirectDense || method == SolveMethod::DualityDense;
            if (dense && dense_size(*model, method) > config.dense_cap) {
                row.error = "skipped: dense size " + std::to_string(dense_size(*model, method)) +
                            " exceeds cap " + std::to_string(config.dense_cap);
                rows.push_back(std::move(row));
                continue;
            }
            try {
                std::vector<double> times;
                for (std::size_t r = 0; r < repeats; ++r) {
                    const LogDetResult res = compute_logdet(*model, method);
                    row.logdet = res.logdet_sigma;
                    if (res.warning) row.error = *res.warning;
                    times.push_back(res.wall_ms);
                }
                std::sort(times.begin(), times.end());
                row.wall_ms = times[times.size() / 2];
            } catch (const Error& e) {
                row.logdet.reset();
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kBenchCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.k << ',' << r.rungs << ',' << r.n << ',' << to_string(r.method) << ',';
        if (r.logdet) out << std::setprecision(17) << *r.logdet;
        out << ',' << std::fixed << std::setprecision(3) << r.wall_ms << std::defaultfloat << ','
            << r.seed << ',' << csv_field(r.error) << '\n';
    }
}

}  // namespace gaussdual
