#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stabland/experiment.hpp"
#include "stabland/opspec.hpp"

using namespace stabland;

namespace {

constexpr int kUsageError = 2;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-landscape experiments on lattice stabilizer codes"};
    app.set_help_all_flag("--help-all");

    std::string subcommand, code, u, op, target, format, out_dir, config_file;
    std::vector<int> sizes, scales;
    double alpha = 0;
    int ltqo = 0, p = 0, rho = 0;
    std::size_t omega_max = 0, max_states = 0, scan_budget = 0;
    std::uint64_t seed = 0;

    app.add_option("subcommand", subcommand, "syndrome | pyramid | barrier | distance | rg | fractal | strings | check")
        ->required()
        ->check(CLI::IsMember({"syndrome", "pyramid", "barrier", "distance", "rg", "fractal", "strings", "check"}));
    auto* code_opt = app.add_option("--code", code, "cubic1 | toric2d | toric3d | rep1d");
    auto* size_opt = app.add_option("--L", sizes, "lattice size(s), comma separated")->delimiter(',');
    auto* alpha_opt = app.add_option("--alpha", alpha, "no-strings constant (default 15)");
    auto* ltqo_opt = app.add_option("--ltqo", ltqo, "neutrality scale (default L/2)");
    auto* p_opt = app.add_option("--p", p, "pyramid level (default log2 L)");
    auto* u_opt = app.add_option("--u", u, "base site x,y,z");
    auto* op_opt = app.add_option("--op", op, "operator or path spec");
    auto* target_opt = app.add_option("--target", target, "barrier target (same as --op)");
    auto* omega_opt = app.add_option("--omega-max", omega_max, "barrier ceiling for the oracle");
    auto* states_opt = app.add_option("--max-states", max_states, "oracle state budget");
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized parts");
    auto* scales_opt = app.add_option("--scales", scales, "box-counting scales, comma separated")->delimiter(',');
    auto* rho_opt = app.add_option("--rho", rho, "anchor size for string scans");
    auto* scan_opt = app.add_option("--scan-budget", scan_budget, "candidate budget for string scans");
    auto* format_opt = app.add_option("--format", format, "json | csv | both")->check(CLI::IsMember({"json", "csv", "both"}));
    app.add_option("--out", out_dir, "output directory (report goes to stdout when omitted)");
    app.add_option("--config", config_file, "JSON config; flags override its keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    ExperimentConfig cfg;
    try {
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw std::invalid_argument("cannot open config " + config_file);
            Json doc;
            try {
                doc = Json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
            }
            cfg.merge_json(doc);
        }
        cfg.subcommand = subcommand;
        if (*code_opt) cfg.code = code;
        if (*size_opt) cfg.sizes = sizes;
        if (*alpha_opt) cfg.alpha = alpha;
        if (*ltqo_opt) cfg.ltqo = ltqo;
        if (*p_opt) cfg.p = p;
        if (*u_opt) cfg.u = parse_coord(u);
        if (*op_opt) cfg.op = op;
        if (*target_opt) cfg.op = target;
        if (*omega_opt) cfg.omega_max = omega_max;
        if (*states_opt) cfg.max_states = max_states;
        if (*seed_opt) cfg.seed = seed;
        if (*scales_opt) cfg.scales = scales;
        if (*rho_opt) cfg.rho = rho;
        if (*scan_opt) cfg.scan_budget = scan_budget;
        if (*format_opt) cfg.format = format;

        const Report report = run_experiment(cfg);
        if (out_dir.empty()) {
            std::cout << report.to_json().dump(2) << '\n';
        } else {
            for (const Check& c : report.checks) std::cout << to_string(c.status) << "  " << c.name << '\n';
            for (const auto& path : emit_report(report, out_dir, utc_timestamp())) std::cout << "wrote " << path.string() << '\n';
        }
        return exit_code(report);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
}
