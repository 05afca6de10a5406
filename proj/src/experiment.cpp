#include "stabland/experiment.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stabland/barrier.hpp"
#include "stabland/defects.hpp"
#include "stabland/opspec.hpp"
#include "stabland/paths.hpp"
#include "stabland/rg.hpp"

namespace stabland {

namespace {

const std::map<std::string, int>& known_keys() {
    static const std::map<std::string, int> keys{
        {"subcommand", 0}, {"code", 0}, {"L", 0},          {"alpha", 0},       {"ltqo", 0},  {"p", 0},
        {"u", 0},          {"op", 0},   {"target", 0},     {"omega_max", 0},   {"max_states", 0},
        {"seed", 0},       {"scales", 0}, {"rho", 0},      {"scan_budget", 0}, {"format", 0}};
    return keys;
}

std::string coord_text(const Coord& c) {
    return std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]);
}

Json coord_json(const Coord& c, int dim) {
    Json a = Json::array();
    for (int i = 0; i < dim; ++i) a.push_back(c[i]);
    return a;
}

// log2 of L, or nullopt when L is not a power of two.
std::optional<int> log2_exact(int L) {
    if (L < 1 || !std::has_single_bit(static_cast<unsigned>(L))) return std::nullopt;
    return std::countr_zero(static_cast<unsigned>(L));
}

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; }

class Runner {
public:
    explicit Runner(const ExperimentConfig& config) : cfg_(config) {
        report_.config = config;
        params_.alpha = config.alpha;
        params_.ltqo = config.ltqo;
    }

    Report run() {
        static const std::map<std::string, void (Runner::*)(int)> per_size{
            {"syndrome", &Runner::syndrome}, {"pyramid", &Runner::pyramid}, {"barrier", &Runner::barrier},
            {"distance", &Runner::distance}, {"rg", &Runner::rg},           {"fractal", &Runner::fractal},
            {"strings", &Runner::strings},   {"check", &Runner::check}};
        auto it = per_size.find(cfg_.subcommand);
        if (it == per_size.end()) throw std::invalid_argument("unknown subcommand '" + cfg_.subcommand + "'");
        for (int L : cfg_.sizes) (this->*(it->second))(L);
        if (cfg_.subcommand == "check") fixtures();
        if (!sweep_.rows.empty()) report_.series.push_back(std::move(sweep_));
        return std::move(report_);
    }

private:
    CodeInstance code(int L) const { return CodeInstance::build(builtin_code_spec(cfg_.code), L); }

    Check& add(const std::string& name, CheckStatus status) {
        report_.checks.push_back({name, status, Json::object()});
        return report_.checks.back();
    }

    static std::string at(int L, const std::string& name) { return "L=" + std::to_string(L) + "/" + name; }

    const std::string& require_op() const {
        if (cfg_.op.empty()) throw std::invalid_argument(cfg_.subcommand + " needs --op");
        return cfg_.op;
    }

    int pyramid_level(int L) const {
        auto n = log2_exact(L);
        if (!n) throw std::invalid_argument("pyramid constructions need L to be a power of two");
        const int p = cfg_.p.value_or(*n);
        if (p < 0 || p > *n) throw std::invalid_argument("--p must satisfy 0 <= p <= log2 L");
        return p;
    }

    void syndrome(int L) {
        const CodeInstance c = code(L);
        const PauliOperator e = parse_operator(c, require_op(), cfg_.u);
        const Syndrome s = syndrome_of(c, e);
        Json defects = Json::array();
        for (const Defect& d : c.defects(s))
            defects.push_back(Json{{"cube", coord_json(d.cube, c.geometry().dim())}, {"species", d.species}});

        Check& ch = add(at(L, "syndrome"), CheckStatus::kPass);
        ch.values["operator_weight"] = tagged(e.weight(), Provenance::kConstructed);
        ch.values["defect_count"] = tagged(s.size(), Provenance::kConstructed);
        ch.values["defects"] = tagged(defects, Provenance::kConstructed);
        if (c.num_qubits() <= 16384) {
            const bool same = syndrome_of_dense(c, e) == s;
            ch.status = pass_if(same);
            ch.values["matches_dense_map"] = same;
        }
        if (cfg_.code == "cubic1" && cfg_.op.rfind("single-XI", 0) == 0) {
            const Coord u = cfg_.op.find('@') == std::string::npos ? cfg_.u : parse_coord(cfg_.op.substr(cfg_.op.find('@') + 1));
            const bool pattern = s == pyramid_syndrome(c, 0, c.geometry().wrap(u));
            Check& pc = add(at(L, "xi_defect_pattern"), pass_if(pattern));
            pc.values["expected_defects"] = tagged(4, Provenance::kPaperBound);
            pc.values["defect_count"] = tagged(s.size(), Provenance::kConstructed);
        }
    }

    void pyramid(int L) {
        const CodeInstance c = code(L);
        const int n = *log2_exact(L);
        const int p = pyramid_level(L);
        const Coord u = c.geometry().wrap(cfg_.u);
        const GeneratorId apex = c.generator_id(pyramid_apex(c, u), 1);

        SyndromeTracker tracker(c);
        Series profile{"profile-L" + std::to_string(L), {"t", "defect_count"}, {}};
        profile.rows.push_back({0, 0});
        std::size_t barrier = 0, t = 0, apex_missing = 0;
        std::optional<std::size_t> first_missing;
        for_each_pyramid_step(c, p, u, [&](const PathStep& step) {
            const std::size_t count = tracker.apply(step);
            barrier = std::max(barrier, count);
            ++t;
            profile.rows.push_back({t, count});
            if (!tracker.contains(apex)) {
                ++apex_missing;
                if (!first_missing) first_missing = t;
            }
        });

        const std::size_t bound = 4 * static_cast<std::size_t>(p) + 4;
        Check& b = add(at(L, "barrier_bound"), pass_if(barrier <= bound));
        b.values["p"] = p;
        b.values["steps"] = tagged(t, Provenance::kConstructed);
        b.values["barrier"] = tagged(barrier, Provenance::kConstructed);
        b.values["bound_4p_plus_4"] = tagged(bound, Provenance::kPaperBound);

        Check& a = add(at(L, "apex_invariant"), pass_if(apex_missing == 0));
        a.values["apex"] = coord_json(pyramid_apex(c, u), 3);
        a.values["steps_without_apex"] = tagged(apex_missing, Provenance::kConstructed);
        a.values["first_step_without_apex"] =
            first_missing ? tagged(*first_missing, Provenance::kConstructed) : Json(nullptr);

        const Syndrome final_syndrome = tracker.syndrome();
        const Syndrome expected = p < n ? pyramid_syndrome(c, p, u) : Syndrome{};
        Check& f = add(at(L, "final_syndrome"), pass_if(final_syndrome == expected));
        f.values["defect_count"] = tagged(final_syndrome.size(), Provenance::kConstructed);
        f.values["expected_defect_count"] = tagged(expected.size(), Provenance::kPaperBound);

        if (p == n) {
            const PauliOperator e = pyramid_operator(c, p, u);
            const PauliOperator zbar = logical_zbar(c, u);
            std::vector<PauliOperator> witness{zbar};
            const LogicalVerdict verdict = verify_logical(c, e, witness);
            const bool anticommutes = !commutes(e, zbar);
            Check& l = add(at(L, "logical"), pass_if(verdict == LogicalVerdict::kLogical && anticommutes));
            l.values["verdict"] = to_string(verdict);
            l.values["anticommutes_with_zbar"] = anticommutes;
            l.values["weight"] = tagged(e.weight(), Provenance::kConstructed);
            sweep_.name = "barrier_vs_L";
            sweep_.columns = {"L", "constructed_barrier", "bound_4log2L_plus_4"};
            sweep_.rows.push_back({L, barrier, 4 * n + 4});
        }
        report_.series.push_back(std::move(profile));
    }

    void barrier(int L) {
        const CodeInstance c = code(L);
        const PauliOperator target = parse_operator(c, require_op(), cfg_.u);
        const Syndrome s = syndrome_of(c, target);
        SearchBudget budget;
        budget.omega_max = cfg_.omega_max;
        budget.max_states = cfg_.max_states;
        const BarrierResult r = s.empty() ? min_barrier_logical(c, target, budget) : min_barrier_cluster(c, s, budget);

        CheckStatus status = CheckStatus::kPass;
        if (r.outcome == SearchOutcome::kBudgetExhausted) status = CheckStatus::kIndeterminate;
        if (r.outcome == SearchOutcome::kNoPath)
            status = r.ruled_out == budget.omega_max ? CheckStatus::kIndeterminate : CheckStatus::kFail;
        Check& ch = add(at(L, "barrier"), status);
        ch.values["code"] = cfg_.code;
        ch.values["L"] = L;
        ch.values["target"] = cfg_.op;
        ch.values["mode"] = s.empty() ? "logical" : "cluster";
        ch.values["outcome"] = to_string(r.outcome);
        ch.values["omega"] = r.omega ? tagged(*r.omega, Provenance::kOracle) : Json(nullptr);
        ch.values["largest_ceiling_ruled_out"] = r.ruled_out ? tagged(*r.ruled_out, Provenance::kOracle) : Json(nullptr);
        ch.values["states_visited"] = tagged(r.states_visited, Provenance::kOracle);
        if (r.omega) {
            const std::string file = report_.file_prefix() + "-witness-L" + std::to_string(L) + ".path";
            std::ostringstream text;
            write_path(text, c, r.witness);
            report_.attachments.push_back({file, text.str()});
            ch.values["witness_steps"] = tagged(r.witness.size(), Provenance::kOracle);
            ch.values["witness_barrier"] = tagged(energy_profile(c, r.witness).barrier, Provenance::kConstructed);
            ch.values["witness_path_file"] = file;
        }
    }

    void distance(int L) {
        const CodeInstance c = code(L);
        DistanceBudget budget;
        budget.max_states = cfg_.max_states;
        const DistanceResult r = code_distance(c, budget);
        Check& ch = add(at(L, "distance"), r.budget_exhausted ? CheckStatus::kIndeterminate : CheckStatus::kPass);
        ch.values["method"] = r.method;
        ch.values["distance"] = r.distance ? tagged(*r.distance, Provenance::kOracle) : Json(nullptr);
        ch.values["lower_bound"] = tagged(r.lower_bound, Provenance::kOracle);
        ch.values["upper_bound"] = r.upper_bound ? tagged(*r.upper_bound, Provenance::kOracle) : Json(nullptr);
        ch.values["states_visited"] = tagged(r.states_visited, Provenance::kOracle);
        if (r.witness) ch.values["witness"] = r.witness->to_string();
    }

    void rg(int L) {
        const CodeInstance c = code(L);
        const std::string spec = cfg_.op.empty() ? "pyramid-" + std::to_string(pyramid_level(L)) : cfg_.op;
        const SyndromeHistory h = syndrome_history(c, parse_path(c, spec, cfg_.u));
        const LevelAnalysis a = level_histories(c, h, params_);

        Check& summary = add(at(L, "levels"), CheckStatus::kPass);
        summary.values["path"] = spec;
        summary.values["steps"] = tagged(h.steps(), Provenance::kConstructed);
        summary.values["max_defects"] = tagged(h.max_defects, Provenance::kConstructed);
        summary.values["p_max"] = tagged(a.p_max, Provenance::kMeasured);
        summary.values["empty_path"] = a.empty_path;
        Json retained = Json::array();
        for (const LevelHistory& level : a.levels) retained.push_back(level.retained.size());
        summary.values["retained_per_level"] = tagged(retained, Provenance::kMeasured);

        bool nested = true, counts = true, products = true;
        for (std::size_t p = 0; p < a.levels.size(); ++p) {
            const LevelHistory& level = a.levels[p];
            for (std::size_t i = 1; i + 1 < level.retained.size(); ++i)
                if (p > 0 && h.syndromes[level.retained[i]].size() < p + 1) counts = false;
            if (p + 1 == a.levels.size()) break;
            const LevelHistory& upper = a.levels[p + 1];
            nested = nested && std::includes(level.retained.begin(), level.retained.end(), upper.retained.begin(),
                                             upper.retained.end());
            if (!nested) break;
            std::size_t j = 0;
            for (std::size_t i = 0; i + 1 < upper.retained.size(); ++i) {
                while (level.retained[j] != upper.retained[i]) ++j;
                PauliOperator product = c.identity();
                for (; level.retained[j] != upper.retained[i + 1]; ++j) product *= level_error(c, h, level, j);
                products = products && product == level_error(c, h, upper, i);
            }
        }
        add(at(L, "level_nesting"), pass_if(nested));
        add(at(L, "retained_defect_count"), pass_if(counts));
        add(at(L, "level_error_products"), pass_if(products));
        world_lines(L, c, h, a);
    }

    // Tracks charged clusters over every maximal run of history indices that
    // is sparse at level p, for p below p_max.
    void world_lines(int L, const CodeInstance& c, const SyndromeHistory& h, const LevelAnalysis& a) {
        Check& ch = add(at(L, "world_lines"), CheckStatus::kPass);
        std::size_t segments = 0, lines = 0, locking = 0, breaks = 0, ambiguous = 0;
        int drift = 0;
        for (int p = 0; p < a.p_max; ++p) {
            std::size_t t = 0;
            while (t < h.syndromes.size()) {
                if (a.dense_run[t] >= p) {
                    ++t;
                    continue;
                }
                std::size_t end = t;
                while (end + 1 < h.syndromes.size() && a.dense_run[end + 1] < p) ++end;
                const WorldLineReport r = track_charged_clusters(c, h, t, end, p, params_);
                ++segments;
                lines += r.lines.size();
                locking += r.locking_violations.size();
                breaks += r.continuity_breaks.size();
                ambiguous += r.ambiguous.size();
                for (const WorldLine& w : r.lines) drift = std::max(drift, w.max_drift);
                t = end + 1;
            }
        }
        ch.values["segments"] = tagged(segments, Provenance::kMeasured);
        ch.values["charged_world_lines"] = tagged(lines, Provenance::kMeasured);
        ch.values["locking_violations"] = tagged(locking, Provenance::kMeasured);
        ch.values["continuity_breaks"] = tagged(breaks, Provenance::kMeasured);
        ch.values["ambiguous_matches"] = tagged(ambiguous, Provenance::kMeasured);
        ch.values["max_drift"] = tagged(drift, Provenance::kMeasured);
    }

    void fractal(int L) {
        const CodeInstance c = code(L);
        int p = 0;
        PauliOperator e;
        if (cfg_.op.empty()) {
            p = pyramid_level(L);
            e = pyramid_operator(c, p, c.geometry().wrap(cfg_.u));
        } else {
            e = parse_operator(c, cfg_.op, cfg_.u);
        }
        std::vector<int> scales = cfg_.scales;
        if (scales.empty())
            for (int s = 1; s < (cfg_.op.empty() ? (1 << p) : L); s *= 2) scales.push_back(s);
        const std::vector<Coord> sites = support_sites(c, e);
        const BoxCount r = box_counting_dimension(sites, c.geometry().dim(), scales, cfg_.seed);

        const bool check_pyramid = cfg_.op.empty();
        Check& ch = add(at(L, "box_counting"),
                        check_pyramid ? pass_if(std::abs(r.dimension - 2.0) <= 0.1) : CheckStatus::kPass);
        if (check_pyramid) {
            ch.values["p"] = p;
            ch.values["expected_dimension"] = tagged(2, Provenance::kPaperBound);
            ch.values["tolerance"] = 0.1;
        }
        ch.values["support_sites"] = tagged(sites.size(), Provenance::kConstructed);
        ch.values["dimension"] = tagged(r.dimension, Provenance::kMeasured);
        ch.values["degenerate"] = r.degenerate;
        ch.values["anchor_spread"] = tagged(r.anchor_spread, Provenance::kMeasured);
        Series s{"boxcounts-L" + std::to_string(L), {"scale", "count"}, {}};
        for (std::size_t i = 0; i < r.scales.size(); ++i) s.rows.push_back({r.scales[i], r.counts[i]});
        report_.series.push_back(std::move(s));
    }

    void strings(int L) {
        const CodeInstance c = code(L);
        StringScanOptions options;
        options.rho = cfg_.rho;
        options.alpha = cfg_.alpha;
        options.budget = cfg_.scan_budget;
        const StringScanReport r = scan_for_strings(c, options, params_);
        CheckStatus status = CheckStatus::kPass;
        if (!r.nontrivial.empty())
            status = CheckStatus::kFail;
        else if (r.budget_exhausted)
            status = CheckStatus::kIndeterminate;
        Check& ch = add(at(L, "no_strings"), status);
        ch.values["rho"] = cfg_.rho;
        ch.values["alpha"] = cfg_.alpha;
        ch.values["placements"] = tagged(r.placements, Provenance::kMeasured);
        ch.values["candidates_examined"] = tagged(r.candidates_examined, Provenance::kMeasured);
        ch.values["nontrivial_segments"] = tagged(r.nontrivial.size(), Provenance::kMeasured);
        double ratio = 0;
        for (const StringCandidate& s : r.nontrivial) ratio = std::max(ratio, s.aspect_ratio);
        ch.values["max_nontrivial_aspect_ratio"] = tagged(ratio, Provenance::kMeasured);
        ch.values["max_anchor_distance"] = tagged(r.max_anchor_distance, Provenance::kMeasured);
        ch.values["budget_exhausted"] = r.budget_exhausted;
    }

    void check(int L) {
        const CodeInstance c = CodeInstance::build(builtin_code_spec(cfg_.code), L, Verification::kSkip);
        const FrustrationReport r = check_frustration_free(c);
        Check& ch = add(at(L, "frustration_free"), pass_if(r.commuting));
        ch.values["method"] = r.method;
        ch.values["pairs_checked"] = tagged(r.pairs_checked, Provenance::kConstructed);
        if (r.logical_qubits) ch.values["logical_qubits"] = tagged(*r.logical_qubits, Provenance::kConstructed);
        if (r.witness) ch.values["witness"] = Json::array({r.witness->first, r.witness->second});
    }

    // Frozen oracle values on small instances.
    void fixtures() {
        auto make = [](const char* name, int L) { return CodeInstance::build(builtin_code_spec(name), L); };
        auto fixture = [&](const std::string& name, std::optional<std::size_t> got, std::size_t expected) {
            Check& ch = add("fixture/" + name, pass_if(got == expected));
            ch.values["value"] = got ? tagged(*got, Provenance::kOracle) : Json(nullptr);
            ch.values["expected"] = tagged(expected, Provenance::kOracle);
        };
        const CodeInstance rep4 = make("rep1d", 4);
        fixture("rep1d_L4_all_x_barrier", min_barrier_logical(rep4, parse_operator(rep4, "all-X")).omega, 2);
        const CodeInstance toric3 = make("toric2d", 3);
        fixture("toric2d_L3_string_barrier", min_barrier_logical(toric3, parse_operator(toric3, "line-X1@0")).omega, 2);
        fixture("rep1d_L5_distance", code_distance(make("rep1d", 5)).distance, 5);
        fixture("toric2d_L3_distance", code_distance(toric3).distance, 3);
        const CodeInstance cubic2 = make("cubic1", 2);
        fixture("cubic1_L2_distance", code_distance(cubic2).distance, 2);
        fixture("cubic1_L2_pyramid_barrier", min_barrier_logical(cubic2, pyramid_operator(cubic2, 1, {0, 0, 0})).omega, 4);
    }

    ExperimentConfig cfg_;
    ScaleParams params_;
    Report report_;
    Series sweep_;
};

}  // namespace

Json ExperimentConfig::to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    j["code"] = code;
    j["L"] = sizes;
    j["alpha"] = alpha;
    j["ltqo"] = ltqo ? Json(*ltqo) : Json(nullptr);
    j["p"] = p ? Json(*p) : Json(nullptr);
    j["u"] = coord_text(u);
    j["op"] = op;
    j["omega_max"] = omega_max ? Json(*omega_max) : Json(nullptr);
    j["max_states"] = max_states;
    j["seed"] = seed;
    j["scales"] = scales;
    j["rho"] = rho;
    j["scan_budget"] = scan_budget;
    j["format"] = format;
    return j;
}

void ExperimentConfig::merge_json(const Json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config must be an object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (!known_keys().count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
            if (key == "subcommand") subcommand = value.get<std::string>();
            if (key == "code") code = value.get<std::string>();
            if (key == "L") sizes = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
            if (key == "alpha") alpha = value.get<double>();
            if (key == "ltqo") ltqo = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
            if (key == "p") p = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
            if (key == "u") {
                if (value.is_string()) {
                    u = parse_coord(value.get<std::string>());
                } else {
                    const auto v = value.get<std::vector<int>>();
                    if (v.size() > 3) throw std::invalid_argument("u has more than three coordinates");
                    u = Coord{};
                    for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i];
                }
            }
            if (key == "op" || key == "target") op = value.get<std::string>();
            if (key == "omega_max")
                omega_max = value.is_null() ? std::nullopt : std::optional<std::size_t>(value.get<std::size_t>());
            if (key == "max_states") max_states = value.get<std::size_t>();
            if (key == "seed") seed = value.get<std::uint64_t>();
            if (key == "scales") scales = value.get<std::vector<int>>();
            if (key == "rho") rho = value.get<int>();
            if (key == "scan_budget") scan_budget = value.get<std::size_t>();
            if (key == "format") format = value.get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config value: ") + e.what());
    }
}

void ExperimentConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("at least one L is required");
    for (int L : sizes)
        if (L < 1) throw std::invalid_argument("L must be positive");
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
    if (ltqo && *ltqo < 1) throw std::invalid_argument("ltqo must be positive");
    if (rho < 1) throw std::invalid_argument("rho must be positive");
    if (format != "json" && format != "csv" && format != "both")
        throw std::invalid_argument("format must be json, csv or both");
    builtin_code_spec(code);
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::kPass: return "pass";
        case CheckStatus::kFail: return "fail";
        case CheckStatus::kIndeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::kConstructed: return "constructed";
        case Provenance::kOracle: return "oracle";
        case Provenance::kPaperBound: return "paper-bound";
        case Provenance::kMeasured: return "measured";
    }
    return "?";
}

Json tagged(const Json& value, Provenance p) { return Json{{"value", value}, {"provenance", to_string(p)}}; }

CheckStatus Report::status() const {
    CheckStatus s = CheckStatus::kPass;
    for (const Check& c : checks) {
        if (c.status == CheckStatus::kFail) return CheckStatus::kFail;
        if (c.status == CheckStatus::kIndeterminate) s = CheckStatus::kIndeterminate;
    }
    return s;
}

std::string Report::config_hash() const {
    // FNV-1a over the canonical config text.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config.to_json().dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::string Report::file_prefix() const { return config.subcommand + "-" + config_hash().substr(0, 12); }

Json Report::to_json() const {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["subcommand"] = config.subcommand;
    j["config"] = config.to_json();
    j["config_hash"] = config_hash();
    j["status"] = to_string(status());
    Json checks_json = Json::array();
    for (const Check& c : checks)
        checks_json.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"values", c.values}});
    j["checks"] = std::move(checks_json);
    Json series_json = Json::array();
    for (const Series& s : series) {
        Json rows = Json::array();
        for (const auto& row : s.rows) rows.push_back(row);
        series_json.push_back(Json{{"name", s.name},
                                   {"file", file_prefix() + "-" + s.name + ".csv"},
                                   {"columns", s.columns},
                                   {"provenance", "constructed"},
                                   {"rows", std::move(rows)}});
    }
    j["series"] = std::move(series_json);
    Json files = Json::array();
    for (const Attachment& a : attachments) files.push_back(a.name);
    j["attachments"] = std::move(files);
    return j;
}

Report run_experiment(const ExperimentConfig& config) {
    config.validate();
    return Runner(config).run();
}

int exit_code(const Report& report) {
    switch (report.status()) {
        case CheckStatus::kPass: return 0;
        case CheckStatus::kFail: return 1;
        case CheckStatus::kIndeterminate: return 3;
    }
    return 1;
}

std::string series_csv(const Series& s) {
    std::ostringstream out;
    for (std::size_t i = 0; i < s.columns.size(); ++i) out << (i ? "," : "") << s.columns[i];
    out << '\n';
    for (const auto& row : s.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].dump();
        out << '\n';
    }
    return out.str();
}

std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& dir,
                                               const std::string& timestamp) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::string& name, const std::string& text) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
        if (!out) throw std::runtime_error("failed writing " + path.string());
        written.push_back(path);
    };
    const std::string prefix = report.file_prefix();
    const std::string& format = report.config.format;
    if (format == "json" || format == "both") write(prefix + ".json", report.to_json().dump(2) + "\n");
    if (format == "csv" || format == "both")
        for (const Series& s : report.series) write(prefix + "-" + s.name + ".csv", series_csv(s));
    for (const Attachment& a : report.attachments) write(a.name, a.text);

    const auto meta_path = dir / (prefix + ".meta.json");
    Json meta = Json{{"report", prefix}, {"runs", Json::array()}};
    if (std::ifstream in(meta_path); in) {
        try {
            meta = Json::parse(in);
        } catch (const nlohmann::json::exception&) {
            throw std::runtime_error("corrupt metadata file " + meta_path.string());
        }
    }
    meta["runs"].push_back(Json{{"timestamp", timestamp}});
    write(prefix + ".meta.json", meta.dump(2) + "\n");
    return written;
}

}  // namespace stabland
