#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabland/lattice.hpp"

namespace stabland {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
    std::string subcommand;
    std::string code = "cubic1";
    std::vector<int> sizes{8};
    double alpha = 15.0;
    std::optional<int> ltqo;
    std::optional<int> p;
    Coord u{};
    // Operator or path spec (syndrome, barrier, rg, fractal).
    std::string op;
    std::optional<std::size_t> omega_max;
    std::size_t max_states = 10'000'000;
    std::uint64_t seed = 1;
    std::vector<int> scales;
    int rho = 1;
    std::size_t scan_budget = 100'000;
    std::string format = "both";

    Json to_json() const;
    // Keys present in `doc` replace the fields; unknown keys throw.
    void merge_json(const Json& doc);
    void validate() const;
};

enum class CheckStatus { kPass, kFail, kIndeterminate };

const char* to_string(CheckStatus s);

// Where a number in a report comes from.
enum class Provenance { kConstructed, kOracle, kPaperBound, kMeasured };

const char* to_string(Provenance p);

Json tagged(const Json& value, Provenance p);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::kPass;
    // Keyed values, each {"value", "provenance"}.
    Json values = Json::object();
};

struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct Attachment {
    std::string name;
    std::string text;
};

struct Report {
    ExperimentConfig config;
    std::vector<Check> checks;
    std::vector<Series> series;
    std::vector<Attachment> attachments;

    CheckStatus status() const;
    // Hex digest of the config echo; names every emitted file.
    std::string config_hash() const;
    std::string file_prefix() const;
    Json to_json() const;
};

// Throws std::invalid_argument for unknown subcommands, codes or bad specs.
Report run_experiment(const ExperimentConfig& config);

// 0 pass, 1 check failure, 3 budget-indeterminate.
int exit_code(const Report& report);

std::string series_csv(const Series& s);

// Writes <prefix>.json and/or <prefix>-<series>.csv plus attachments into
// `dir`, and appends `timestamp` to <prefix>.meta.json. Returns the files written.
std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& dir,
                                               const std::string& timestamp);

}  // namespace stabland
