// gaussdual: command-line front end for ladder Gaussian models.
//
// Exit codes: 0 success, 1 numerical or assumption failure, 2 usage or parse error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussdual/gaussdual.hpp"

namespace gd = gaussdual;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// exp() of a log-determinant only when it stays comfortably in double range.
std::optional<double> exponentiate(double logv) {
    if (!std::isfinite(logv) || std::abs(logv) > 700.0) return std::nullopt;
    return std::exp(logv);
}

json stats_json(const gd::LogDetStats& s) {
    return {{"pivots", s.pivots}, {"depth", s.depth}, {"wall_ms", s.wall_ms}};
}

std::vector<std::size_t> parse_schedule(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size() || v == 0) throw CLI::ValidationError("--l-schedule", "bad entry '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw CLI::ValidationError("--l-schedule", "empty schedule");
    return out;
}

int cmd_validate(const std::string& path, double zero_tol) {
    const gd::LadderModel model = gd::load_model(path);
    const gd::ValidationReport r = gd::validate(model, zero_tol);
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    std::cout << "k: " << model.k() << "  L: " << model.rungs() << "  N: " << model.num_variables() << '\n'
              << "assumption1_ok: " << flag(r.assumption1_ok) << '\n'
              << "assumption2_cycles_present: " << flag(r.assumption2_cycles_present) << " (advisory)\n"
              << "assumption3_blocks_acyclic: " << flag(r.assumption3_blocks_acyclic) << '\n'
              << "assumption3_union_acyclic: " << flag(r.assumption3_union_acyclic) << '\n';
    for (const auto& m : r.messages) std::cout << "  note: " << m << '\n';
    std::cout << (r.ok() ? "VALID" : "INVALID") << '\n';
    return r.ok() ? kExitOk : kExitFailure;
}

int cmd_logdet(const std::string& path, const std::string& method_name, bool as_json) {
    const auto method = gd::parse_method(method_name);
    if (!method) {
        std::cerr << "unknown method '" << method_name << "'\n";
        return kExitUsage;
    }
    const gd::LadderModel model = gd::load_model(path);
    const gd::LogDetResult r = gd::compute_logdet(model, *method);
    if (r.warning) std::cerr << "warning: " << *r.warning << '\n';
    const auto det = exponentiate(r.logdet_sigma);

    if (as_json) {
        json j = {{"method", gd::to_string(*method)},
                  {"backend", r.backend},
                  {"logdet", r.logdet_sigma},
                  {"det", det ? json(*det) : json(nullptr)},
                  {"n", r.n},
                  {"N", model.num_variables()},
                  {"stats", stats_json(r.stats)},
                  {"wall_ms", r.wall_ms}};
        if (r.warning) j["warning"] = *r.warning;
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }
    std::cout << std::setprecision(17) << "method: " << gd::to_string(*method) << " (" << r.backend
              << ", n = " << r.n << ")\n"
              << "logdet(Sigma): " << r.logdet_sigma << '\n';
    if (det) {
        std::cout << "det(Sigma): " << *det << '\n';
    } else {
        std::cout << "det(Sigma): not representable (log value out of range)\n";
    }
    std::cout << std::setprecision(4) << "wall_ms: " << r.wall_ms << '\n';
    return kExitOk;
}

int cmd_dualize(const std::string& path, const std::string& out_path) {
    const gd::LadderModel model = gd::load_model(path);
    const gd::DualModel dual = gd::build_dual(model);
    const std::string text = gd::dual_to_json(dual).dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw gd::ParseError("cannot write " + out_path);
        out << text << '\n';
    }
    return kExitOk;
}

json zreport_json(const gd::ZReport& z) {
    return {{"log_zf", z.log_zf},
            {"log_zl", z.log_zl},
            {"log_z", z.log_z},
            {"log_zprime", z.log_zprime},
            {"duality_residual", z.duality_residual}};
}

int cmd_verify(const std::string& path, double tol, std::size_t dense_cap) {
    const gd::LadderModel model = gd::load_model(path);
    const auto direct = model.num_variables() > dense_cap ? gd::DirectMethod::BlockTridiag
                                                          : gd::DirectMethod::Dense;
    const gd::DualityCheck check = gd::check_duality(model, tol, direct);
    std::cout << std::setprecision(17)
              << "direct path: " << (direct == gd::DirectMethod::Dense ? "dense" : "block_tridiag") << '\n'
              << "logdet(Sigma) direct:   " << check.logdet_sigma_direct << '\n'
              << "logdet(Sigma) via dual: " << check.logdet_sigma_dual << '\n'
              << "log Z:  " << check.z.log_z << '\n'
              << "log Z': " << check.z.log_zprime << '\n'
              << "duality residual: " << check.z.duality_residual << " (tol " << tol << ")\n";
    if (!check.diagnostics.empty()) std::cout << "diagnostics: " << check.diagnostics << '\n';
    std::cout << (check.passed ? "PASS" : "FAIL") << '\n';
    return check.passed ? kExitOk : kExitFailure;
}

int cmd_z(const std::string& path, bool exp_output) {
    const gd::LadderModel model = gd::load_model(path);
    const gd::ZReport z = gd::z_constants(model);
    json j = zreport_json(z);
    if (exp_output) {
        const auto e = [](double v) { auto x = exponentiate(v); return x ? json(*x) : json(nullptr); };
        json zl = json::array();
        for (double v : z.log_zl) zl.push_back(e(v));
        j["exp"] = {{"zf", e(z.log_zf)}, {"zl", zl}, {"z", e(z.log_z)}, {"zprime", e(z.log_zprime)}};
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_gen(const gd::GenSpec& spec, const std::string& out_path) {
    const gd::LadderModel model = gd::generate(spec);
    if (out_path.empty()) {
        std::cout << gd::model_to_json(model).dump(2) << '\n';
    } else {
        gd::save_model(model, out_path);
    }
    return kExitOk;
}

int cmd_bench(gd::BenchConfig config, const std::string& schedule, const std::string& methods,
              const std::string& csv_path) {
    config.rung_schedule = parse_schedule(schedule);
    config.methods.clear();
    std::stringstream ss(methods);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = gd::parse_method(item);
        if (!m) throw CLI::ValidationError("--methods", "unknown method '" + item + "'");
        config.methods.push_back(*m);
    }
    const auto rows = gd::run_bench(config);
    if (csv_path.empty() || csv_path == "-") {
        gd::write_bench_csv(std::cout, rows);
    } else {
        std::ofstream out(csv_path);
        if (!out) throw gd::ParseError("cannot write " + csv_path);
        gd::write_bench_csv(out, rows);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact log-determinants and normalization constants of ladder Gaussian models"};
    app.require_subcommand(1);

    std::string path;
    double zero_tol = 0.0;
    double tol = 1e-9;
    std::string method = "duality-bp";
    bool as_json = false;
    bool exp_output = false;
    std::string out_path;
    std::size_t dense_cap = gd::dense_cap_from_env();

    auto* validate = app.add_subcommand("validate", "Check positive definiteness and acyclicity assumptions");
    validate->add_option("model", path, "Model JSON file")->required();
    validate->add_option("--zero-tol", zero_tol, "Entries with |x| <= tol are structural zeros");

    auto* logdet = app.add_subcommand("logdet", "Compute log det(Sigma)");
    logdet->add_option("model", path, "Model JSON file")->required();
    logdet->add_option("--method", method, "duality-bp | duality-dense | direct-dense | direct-blocktri")
        ->capture_default_str();
    logdet->add_flag("--json", as_json, "Emit a JSON report");

    auto* dualize = app.add_subcommand("dualize", "Write the pinned dual precision as JSON");
    dualize->add_option("model", path, "Model JSON file")->required();
    dualize->add_option("--out", out_path, "Output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Check Z' = (2 pi)^N Z across primal and dual routes");
    verify->add_option("model", path, "Model JSON file")->required();
    verify->add_option("--tol", tol, "Relative tolerance")->capture_default_str();
    verify->add_option("--dense-cap", dense_cap, "Largest N factored densely on the primal route");

    auto* z = app.add_subcommand("z", "Report normalization constants (natural log)");
    z->add_option("model", path, "Model JSON file")->required();
    z->add_flag("--exp", exp_output, "Also report exponentiated values where representable");

    gd::GenSpec spec;
    std::string structure = "star_pattern";
    auto* gen = app.add_subcommand("gen", "Generate a random valid model");
    gen->add_option("--k", spec.k, "Half-width k")->required();
    gen->add_option("--L", spec.rungs, "Number of rungs")->required();
    gen->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
    gen->add_option("--structure", structure, "star_pattern | random_tree | diagonal")->capture_default_str();
    gen->add_option("--weight-min", spec.weight_min, "Smallest off-diagonal magnitude")->capture_default_str();
    gen->add_option("--weight-max", spec.weight_max, "Largest off-diagonal magnitude")->capture_default_str();
    gen->add_option("--out", out_path, "Output file (default stdout)");

    gd::BenchConfig bench_config;
    std::string schedule;
    std::string bench_methods = "duality-bp";
    std::string bench_structure = "star_pattern";
    std::string csv_path;
    auto* bench = app.add_subcommand("bench", "Time backends over a schedule of ladder lengths");
    bench->add_option("--k", bench_config.k, "Half-width k")->capture_default_str();
    bench->add_option("--l-schedule", schedule, "Comma-separated list of L values")->required();
    bench->add_option("--structure", bench_structure, "star_pattern | random_tree | diagonal")
        ->capture_default_str();
    bench->add_option("--methods", bench_methods, "Comma-separated methods")->capture_default_str();
    bench->add_option("--seed", bench_config.seed, "PRNG seed")->capture_default_str();
    bench->add_option("--repeats", bench_config.repeats, "Runs per cell; wall_ms is the median")
        ->capture_default_str();
    bench->add_option("--dense-cap", dense_cap, "Skip dense methods above this dimension");
    bench->add_option("--csv", csv_path, "Output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(path, zero_tol);
        if (*logdet) return cmd_logdet(path, method, as_json);
        if (*dualize) return cmd_dualize(path, out_path);
        if (*verify) return cmd_verify(path, tol, dense_cap);
        if (*z) return cmd_z(path, exp_output);
        if (*gen) {
            const auto s = gd::parse_structure(structure);
            if (!s) {
                std::cerr << "unknown structure '" << structure << "'\n";
                return kExitUsage;
            }
            spec.structure = *s;
            return cmd_gen(spec, out_path);
        }
        if (*bench) {
            const auto s = gd::parse_structure(bench_structure);
            if (!s) {
                std::cerr << "unknown structure '" << bench_structure << "'\n";
                return kExitUsage;
            }
            bench_config.structure = *s;
            bench_config.dense_cap = dense_cap;
            return cmd_bench(bench_config, schedule, bench_methods, csv_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gd::DimensionMismatch& e) {
        std::cerr << "DimensionMismatch: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gd::AsymmetricMatrix& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gd::InfeasibleStructure& e) {
        std::cerr << "InfeasibleStructure: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
