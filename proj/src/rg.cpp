#include "stabland/rg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace stabland {

SyndromeHistory syndrome_history(const CodeInstance& code, std::span<const PathStep> path, const Syndrome& initial) {
    SyndromeHistory h;
    h.path.assign(path.begin(), path.end());
    h.syndromes.reserve(path.size() + 1);
    h.syndromes.push_back(initial);
    h.max_defects = initial.size();
    SyndromeTracker tracker(code, initial);
    for (const PathStep& step : path) {
        h.max_defects = std::max(h.max_defects, tracker.apply(step));
        h.syndromes.push_back(tracker.syndrome());
    }
    return h;
}

LevelAnalysis level_histories(const CodeInstance& code, const SyndromeHistory& history, const ScaleParams& params) {
    params.validate();
    const std::size_t T = history.steps();
    if (history.syndromes.size() != T + 1) throw std::invalid_argument("level_histories: malformed history");
    LevelAnalysis out;
    out.empty_path = T == 0;
    out.dense_run.reserve(T + 1);
    for (const Syndrome& s : history.syndromes)
        out.dense_run.push_back(s.empty() ? -1 : min_dense_run(code, s, params));

    int p_max = 0;
    for (std::size_t t = 1; t < T; ++t) p_max = std::max(p_max, out.dense_run[t] + 2);
    out.p_max = p_max;

    for (int p = 0; p <= p_max; ++p) {
        LevelHistory level;
        level.level = p;
        level.retained.push_back(0);
        for (std::size_t t = 1; t < T; ++t) {
            if (p > 0 && out.dense_run[t] < p - 1) continue;
            if (p > 0 && history.syndromes[t].size() < static_cast<std::size_t>(p) + 1)
                throw std::logic_error("level_histories: retained syndrome has too few defects");
            level.retained.push_back(t);
        }
        if (T > 0) level.retained.push_back(T);
        out.levels.push_back(std::move(level));
    }
    return out;
}

PauliOperator level_error(const CodeInstance& code, const SyndromeHistory& history, const LevelHistory& level,
                          std::size_t i) {
    if (i + 1 >= level.retained.size()) throw std::out_of_range("level_error: index out of range");
    const std::size_t a = level.retained[i], b = level.retained[i + 1];
    return path_product(code, std::span(history.path).subspan(a, b - a));
}

WorldLineReport track_charged_clusters(const CodeInstance& code, const SyndromeHistory& history, std::size_t first,
                                       std::size_t last, int p, const ScaleParams& params) {
    if (first > last || last >= history.syndromes.size())
        throw std::invalid_argument("track_charged_clusters: bad segment");
    const LatticeGeometry& g = code.geometry();
    const double radius = params.xi(p);
    NeutralityChecker checker(code, params.ltqo_for(g.size()));
    std::map<std::vector<GeneratorId>, bool> neutral_memo;
    auto charged = [&](const Cluster& c) {
        auto [it, fresh] = neutral_memo.try_emplace(c.defects.ids(), false);
        if (fresh) it->second = checker.check(c.defects).neutral;
        return !it->second;
    };

    WorldLineReport report;
    report.level = p;
    report.locking_radius = params.alpha * radius;
    std::vector<std::size_t> active;  // line index per tracked cluster
    for (std::size_t t = first; t <= last; ++t) {
        const Syndrome& s = history.syndromes[t];
        std::vector<std::vector<Coord>> now;
        if (!s.empty()) {
            SparsityVerdict v = cluster_partition(code, s, p, params);
            if (!v.sparse) throw std::invalid_argument("track_charged_clusters: syndrome is dense at this level");
            for (const Cluster& c : v.clusters)
                if (charged(c)) now.push_back(c.cubes);
        }
        report.charged_count.push_back(now.size());

        // Candidate links within the continuity radius, nearest first.
        struct Link {
            int distance;
            std::size_t line;
            std::size_t cluster;
        };
        std::vector<Link> links;
        for (std::size_t line : active) {
            std::size_t within = 0;
            for (std::size_t j = 0; j < now.size(); ++j) {
                const int d = g.set_distance(report.lines[line].positions.back(), now[j]);
                if (d <= radius) {
                    links.push_back({d, line, j});
                    ++within;
                }
            }
            if (within > 1 && (report.ambiguous.empty() || report.ambiguous.back() != t)) report.ambiguous.push_back(t);
        }
        std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
            return std::tie(a.distance, a.line, a.cluster) < std::tie(b.distance, b.line, b.cluster);
        });
        std::vector<char> line_done(report.lines.size(), 0), cluster_done(now.size(), 0);
        std::vector<std::size_t> next_active;
        for (const Link& l : links) {
            if (line_done[l.line] || cluster_done[l.cluster]) continue;
            line_done[l.line] = cluster_done[l.cluster] = 1;
            report.lines[l.line].positions.push_back(now[l.cluster]);
            next_active.push_back(l.line);
        }
        bool broken = next_active.size() != active.size();
        for (std::size_t j = 0; j < now.size(); ++j) {
            if (cluster_done[j]) continue;
            if (t != first) broken = true;
            next_active.push_back(report.lines.size());
            report.lines.push_back(WorldLine{t, {now[j]}, 0, t});
        }
        if (broken) report.continuity_breaks.push_back(t);
        std::sort(next_active.begin(), next_active.end());
        active = std::move(next_active);

        for (std::size_t line : active) {
            WorldLine& w = report.lines[line];
            const int d = g.set_distance(w.positions.front(), w.positions.back());
            if (d > w.max_drift) {
                w.max_drift = d;
                w.max_drift_at = t;
            }
            if (d > report.locking_radius) report.locking_violations.push_back({line, t, d});
        }
    }
    report.charge_count_constant =
        std::adjacent_find(report.charged_count.begin(), report.charged_count.end(), std::not_equal_to<>()) ==
        report.charged_count.end();
    return report;
}

namespace {

double slope(std::span<const int> scales, std::span<const std::size_t> counts) {
    const std::size_t k = scales.size();
    double mx = 0, my = 0;
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = -std::log(static_cast<double>(scales[i]));
        ys[i] = std::log(static_cast<double>(counts[i]));
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::size_t count_boxes(std::span<const Coord> points, int dim, int scale, const Coord& offset) {
    std::unordered_set<std::uint64_t> boxes;
    for (const Coord& c : points) {
        std::uint64_t key = 0;
        for (int a = 0; a < dim; ++a) key = (key << 21) | static_cast<std::uint64_t>((c[a] + offset[a]) / scale);
        boxes.insert(key);
    }
    return boxes.size();
}

}  // namespace

BoxCount box_counting_dimension(std::span<const Coord> points, int dim, std::span<const int> scales,
                                std::uint64_t seed) {
    if (scales.size() < 3) throw std::invalid_argument("box counting needs at least three scales");
    if (points.empty()) throw std::invalid_argument("box counting needs a nonempty support");
    if (dim < 1 || dim > 3) throw std::invalid_argument("box counting: dimension must be 1, 2 or 3");
    std::vector<int> sorted(scales.begin(), scales.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("box counting: scales must be distinct and positive");
    for (const Coord& c : points)
        for (int a = 0; a < dim; ++a)
            if (c[a] < 0 || c[a] >= (1 << 20)) throw std::invalid_argument("box counting: coordinate out of range");

    std::vector<Coord> distinct(points.begin(), points.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    BoxCount out;
    out.scales.assign(scales.begin(), scales.end());
    for (int s : out.scales) out.counts.push_back(count_boxes(distinct, dim, s, Coord{}));
    if (distinct.size() == 1) {
        out.degenerate = true;
        return out;
    }
    out.dimension = slope(out.scales, out.counts);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> shift(0, sorted.back() - 1);
    double lo = out.dimension, hi = out.dimension;
    std::vector<std::size_t> shifted(out.scales.size());
    for (int k = 0; k < kAnchorShifts; ++k) {
        Coord offset{};
        for (int a = 0; a < dim; ++a) offset[a] = shift(rng);
        for (std::size_t i = 0; i < out.scales.size(); ++i)
            shifted[i] = count_boxes(distinct, dim, out.scales[i], offset);
        const double d = slope(out.scales, shifted);
        out.anchor_estimates.push_back(d);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    out.anchor_spread = hi - lo;
    return out;
}

std::vector<Coord> support_sites(const CodeInstance& code, const PauliOperator& e) {
    const LatticeGeometry& g = code.geometry();
    const auto q = static_cast<std::size_t>(g.qubits_per_site());
    std::vector<std::size_t> sites;
    for (std::size_t qubit : e.support()) sites.push_back(qubit / q);
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    std::vector<Coord> out;
    out.reserve(sites.size());
    for (std::size_t s : sites) out.push_back(g.site_coord(s));
    return out;
}

BoxCount box_counting_dimension(const LatticeGeometry& g, std::span<const std::size_t> qubits,
                                std::span<const int> scales, std::uint64_t seed) {
    std::vector<Coord> points;
    for (std::size_t q : qubits) points.push_back(g.qubit(q).site);
    return box_counting_dimension(points, g.dim(), scales, seed);
}

void write_box_counts_csv(std::ostream& out, const BoxCount& counts) {
    out << "scale,count\n";
    for (std::size_t i = 0; i < counts.scales.size(); ++i) out << counts.scales[i] << ',' << counts.counts[i] << '\n';
}

std::optional<std::vector<Coord>> support_connectivity(const LatticeGeometry& g, std::span<const Coord> support,
                                                       std::span<const Coord> a, std::span<const Coord> b) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<char> inside(g.num_sites(), 0), target(g.num_sites(), 0);
    for (const Coord& c : support) inside[g.site_index(g.wrap(c))] = 1;
    for (const Coord& c : b) {
        const std::size_t s = g.site_index(g.wrap(c));
        if (!inside[s]) throw std::invalid_argument("support_connectivity: B leaves the support");
        target[s] = 1;
    }
    std::vector<std::size_t> parent(g.num_sites(), kNone);
    std::vector<std::size_t> queue;
    for (const Coord& c : a) {
        const std::size_t s = g.site_index(g.wrap(c));
        if (!inside[s]) throw std::invalid_argument("support_connectivity: A leaves the support");
        if (parent[s] != kNone) continue;
        parent[s] = s;
        queue.push_back(s);
    }

    std::vector<Coord> offsets;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dz = -1; dz <= 1; ++dz) {
                Coord o{dx, g.dim() > 1 ? dy : 0, g.dim() > 2 ? dz : 0};
                if (o != Coord{} && std::find(offsets.begin(), offsets.end(), o) == offsets.end()) offsets.push_back(o);
            }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t s = queue[head];
        if (target[s]) {
            std::vector<Coord> path;
            for (std::size_t v = s;; v = parent[v]) {
                path.push_back(g.site_coord(v));
                if (parent[v] == v) break;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        const Coord c = g.site_coord(s);
        for (const Coord& o : offsets) {
            const std::size_t n = g.site_index(g.add(c, o));
            if (!inside[n] || parent[n] != kNone) continue;
            parent[n] = s;
            queue.push_back(n);
        }
    }
    return std::nullopt;
}

}  // namespace stabland
