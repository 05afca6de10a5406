#include "stabland/defects.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace stabland {
namespace {

constexpr int kLightTrials = 200;

// Origins o along one axis for which a box of `extent` sites starting at o
// touches every listed cube coordinate (touched cubes: o-1 .. o+extent-1).
std::vector<int> box_origins(const LatticeGeometry& g, std::span<const Coord> cubes, int axis, int extent) {
    if (extent >= g.size()) return {0};
    std::vector<int> out;
    for (int o = 0; o < g.size(); ++o) {
        bool ok = true;
        for (const Coord& c : cubes) {
            if (g.wrap(c[axis] - (o - 1)) > extent) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(o);
    }
    return out;
}

// Cartesian product of per-axis origin lists, lexicographic.
template <typename Fn>
bool for_each_origin(const std::array<std::vector<int>, kMaxDim>& axes, Fn&& fn) {
    for (const auto& a : axes)
        if (a.empty()) return false;
    for (int x : axes[0])
        for (int y : axes[1])
            for (int z : axes[2])
                if (fn(Coord{x, y, z})) return true;
    return false;
}

std::array<std::vector<int>, kMaxDim> placement_axes(const LatticeGeometry& g, std::span<const Coord> cubes,
                                                     const Coord& extent) {
    std::array<std::vector<int>, kMaxDim> axes{std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}};
    for (int a = 0; a < g.dim(); ++a) axes[a] = box_origins(g, cubes, a, extent[a]);
    return axes;
}

Coord box_extent(const LatticeGeometry& g, int sites_per_axis) {
    Coord e{1, 1, 1};
    for (int a = 0; a < g.dim(); ++a) e[a] = std::min(sites_per_axis, g.size());
    return e;
}

Coord negate(const Coord& c) { return {-c[0], -c[1], -c[2]}; }

// Generators lying entirely in the region and expressible in the alphabet.
std::vector<PauliOperator> inner_generators(const RegionSystem& sys) {
    std::vector<PauliOperator> out;
    for (GeneratorId id : sys.rows()) {
        PauliOperator g = sys.code().generator(id);
        if (sys.to_assignment(g)) out.push_back(std::move(g));
    }
    return out;
}

std::vector<PauliOperator> weight_moves(const RegionSystem& sys) {
    std::vector<PauliOperator> moves = inner_generators(sys);
    for (PauliOperator& k : sys.kernel()) moves.push_back(std::move(k));
    return moves;
}

Syndrome restrict_to(const CodeInstance& code, const Syndrome& s, const Anchor& a) {
    std::vector<GeneratorId> ids;
    for (GeneratorId id : s)
        if (a.contains(code.geometry(), code.defect(id).cube)) ids.push_back(id);
    return Syndrome::from_sorted(std::move(ids));
}

bool support_fits(const CodeInstance& code, const PauliOperator& e, int ltqo) {
    const LatticeGeometry& g = code.geometry();
    auto support = e.support();
    if (support.empty()) return true;
    std::vector<Coord> sites;
    for (std::size_t q : support) sites.push_back(g.qubit(q).site);
    for (int a = 0; a < g.dim(); ++a)
        if (g.covering_span(sites, a).length > std::min(ltqo + 1, g.size())) return false;
    return true;
}

class MemoNeutrality {
public:
    explicit MemoNeutrality(const NeutralityChecker& checker) : checker_(checker) {}

    bool neutral(const CodeInstance& code, const Syndrome& s, const Anchor& anchor) {
        if (s.empty()) return true;
        Syndrome key = translate_syndrome(code, s, negate(anchor.origin));
        auto it = cache_.find(key.ids());
        if (it != cache_.end()) return it->second;
        bool result = checker_.check(s).neutral;
        cache_.emplace(key.ids(), result);
        return result;
    }

private:
    const NeutralityChecker& checker_;
    std::map<std::vector<GeneratorId>, bool> cache_;
};

SegmentVerdict classify_with(const CodeInstance& code, const Syndrome& s, const Anchor& a1, const Anchor& a2,
                             MemoNeutrality& memo) {
    SegmentVerdict v;
    v.aspect_ratio = static_cast<double>(anchor_distance(code.geometry(), a1, a2)) / a1.size;
    Syndrome s1 = restrict_to(code, s, a1), s2 = restrict_to(code, s, a2);
    if (s1.size() + s2.size() != s.size()) return v;
    v.first_charged = !memo.neutral(code, s1, a1);
    v.second_charged = !memo.neutral(code, s2, a2);
    v.kind = v.first_charged || v.second_charged ? SegmentClass::kNonTrivial : SegmentClass::kTrivial;
    return v;
}

void check_anchors(const LatticeGeometry& g, const Anchor& a1, const Anchor& a2) {
    if (a1.size != a2.size) throw std::invalid_argument("anchor regions must have equal linear size");
    if (a1.size < 1 || a1.size > g.size()) throw std::invalid_argument("anchor size out of range");
    for (const Coord& c : a1.cubes(g))
        if (a2.contains(g, c)) throw std::invalid_argument("anchor regions overlap");
}

int checked_scale(const CodeInstance& code, int size) {
    if (size < 0 || size > code.geometry().size()) throw std::invalid_argument("neutrality scale out of range");
    return size;
}

}  // namespace

double ScaleParams::xi(int p) const { return std::pow(10.0 * alpha, p); }

int ScaleParams::ltqo_for(int lattice_size) const { return std::max(1, ltqo.value_or(lattice_size / 2)); }

void ScaleParams::validate() const {
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
    if (ltqo && *ltqo < 1) throw std::invalid_argument("ltqo must be positive");
}

SparsityVerdict cluster_partition(const CodeInstance& code, const Syndrome& s, int p, const ScaleParams& params) {
    if (s.empty()) throw std::invalid_argument("sparsity is undefined for the empty syndrome");
    if (p < 0) throw std::invalid_argument("level must be non-negative");
    params.validate();
    const LatticeGeometry& g = code.geometry();
    const std::vector<Coord> cubes = code.occupied_cubes(s);
    const std::size_t k = cubes.size();
    const double merge_limit = params.xi(p + 1);

    // Complete linkage: link[i][j] is the diameter of the union of clusters i and j
    // ignoring their own diameters.
    std::vector<std::vector<int>> link(k, std::vector<int>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) link[i][j] = link[j][i] = 1 + g.distance(cubes[i], cubes[j]);
    std::vector<std::vector<std::size_t>> members(k);
    std::vector<int> diameter(k, 1);
    std::vector<bool> alive(k, true);
    for (std::size_t i = 0; i < k; ++i) members[i] = {i};

    while (true) {
        std::size_t bi = k, bj = k;
        int best = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < k; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < k; ++j) {
                if (!alive[j]) continue;
                int u = std::max({diameter[i], diameter[j], link[i][j]});
                if (u <= merge_limit && u < best) {
                    best = u;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == k) break;
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        diameter[bi] = best;
        alive[bj] = false;
        for (std::size_t m = 0; m < k; ++m) link[bi][m] = link[m][bi] = std::max(link[bi][m], link[bj][m]);
    }

    SparsityVerdict verdict;
    verdict.level = p;
    verdict.sparse = true;
    verdict.scale_exceeds_lattice = merge_limit >= g.size() / 2 + 1;
    std::vector<std::size_t> cube_owner(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!alive[i]) continue;
        std::sort(members[i].begin(), members[i].end());
        Cluster c;
        for (std::size_t m : members[i]) {
            c.cubes.push_back(cubes[m]);
            cube_owner[m] = verdict.clusters.size();
        }
        c.diameter = diameter[i];
        if (c.diameter > params.xi(p)) verdict.sparse = false;
        verdict.clusters.push_back(std::move(c));
    }
    std::vector<std::vector<GeneratorId>> ids(verdict.clusters.size());
    for (GeneratorId id : s) {
        const Coord cube = code.defect(id).cube;
        auto pos = std::find(cubes.begin(), cubes.end(), cube) - cubes.begin();
        ids[cube_owner[static_cast<std::size_t>(pos)]].push_back(id);
    }
    for (std::size_t c = 0; c < ids.size(); ++c) verdict.clusters[c].defects = Syndrome::from_sorted(std::move(ids[c]));
    return verdict;
}

bool is_valid_partition(const LatticeGeometry& g, const std::vector<std::vector<Coord>>& clusters, int p,
                        const ScaleParams& params) {
    for (const auto& c : clusters)
        if (c.empty() || g.cube_diameter(c) > params.xi(p)) return false;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < clusters.size(); ++j) {
            std::vector<Coord> both = clusters[i];
            both.insert(both.end(), clusters[j].begin(), clusters[j].end());
            if (g.cube_diameter(both) <= params.xi(p + 1)) return false;
        }
    }
    return true;
}

int min_dense_run(const CodeInstance& code, const Syndrome& s, const ScaleParams& params) {
    int p = 0;
    while (!cluster_partition(code, s, p, params).sparse) ++p;
    const int run = p - 1;
    if (static_cast<int>(s.size()) < run + 2)
        throw std::logic_error("dense run exceeds what the defect count allows");
    return run;
}

NeutralityChecker::NeutralityChecker(const CodeInstance& code, int size)
    : code_(code),
      size_(checked_scale(code, size)),
      extent_(box_extent(code.geometry(), size_ + 1)),
      system_(code, Box{Coord{}, extent_}.points(code.geometry())),
      moves_(weight_moves(system_)) {}

NeutralityResult NeutralityChecker::check(const Syndrome& s) const {
    NeutralityResult result;
    if (s.empty()) {
        result.neutral = true;
        result.witness = code_.identity();
        result.region = Box{Coord{}, extent_};
        return result;
    }
    const LatticeGeometry& g = code_.geometry();
    const std::vector<Coord> cubes = code_.occupied_cubes(s);
    const auto axes = placement_axes(g, cubes, extent_);
    for (const auto& a : axes) {
        if (a.empty()) {
            result.reason = "defects do not fit in a cube of size " + std::to_string(size_);
            return result;
        }
    }

    // A single qubit creating the whole cluster is the lightest possible witness.
    const auto q = static_cast<std::size_t>(g.qubits_per_site());
    for (const Coord& cube : cubes) {
        for (const Coord& corner : Box{cube, box_extent(g, 2)}.points(g)) {
            for (std::size_t sub = 0; sub < q; ++sub) {
                const std::size_t qubit = g.site_index(corner) * q + sub;
                for (char label : code_.error_alphabet()) {
                    if (Syndrome::from_flips(code_.flips(qubit, label)) != s) continue;
                    bool placed = for_each_origin(axes, [&](const Coord& o) {
                        Box box{o, extent_};
                        if (!box.contains(g, corner)) return false;
                        result.region = box;
                        return true;
                    });
                    if (!placed) continue;
                    result.neutral = true;
                    result.witness = PauliOperator::single(code_.num_qubits(), qubit, label);
                    return result;
                }
            }
        }
    }

    for_each_origin(axes, [&](const Coord& o) {
        auto local = system_.solve(translate_syndrome(code_, s, negate(o)));
        if (!local) return false;
        result.neutral = true;
        result.witness = translate_operator(code_, reduce_weight(*local, moves_), o);
        result.region = Box{o, extent_};
        return true;
    });
    if (!result.neutral) result.reason = "no creation operator inside any cube of size " + std::to_string(size_);
    return result;
}

NeutralityResult is_neutral(const CodeInstance& code, const Syndrome& s, int size) {
    return NeutralityChecker(code, size).check(s);
}

CreationResult creation_operator(const CodeInstance& code, const Syndrome& s, const ScaleParams& params) {
    CreationResult result;
    if (s.empty()) {
        result.witness = code.identity();
        return result;
    }
    const LatticeGeometry& g = code.geometry();
    const std::vector<Coord> cubes = code.occupied_cubes(s);
    // Minimal covering arcs per axis; on a torus there can be several.
    std::array<std::vector<int>, kMaxDim> starts{std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}};
    Coord len{1, 1, 1};
    int side = 1;
    for (int a = 0; a < g.dim(); ++a) {
        len[a] = g.covering_span(cubes, a).length;
        side = std::max(side, len[a]);
        starts[a].clear();
        for (int st = 0; st < g.size(); ++st) {
            int reach = 0;
            for (const Coord& c : cubes) reach = std::max(reach, g.wrap(c[a] - st) + 1);
            if (reach == len[a]) starts[a].push_back(st);
        }
    }

    // Sites of the cubes widened by `margin`; -1 keeps only sites whose every
    // incident cube lies in the box.
    auto attempt = [&](const Coord& cube_origin, const Coord& cube_len, int margin) {
        Box region{};
        for (int a = 0; a < g.dim(); ++a) {
            const int sites = cube_len[a] + 1 + 2 * margin;
            if (sites < 1) return false;
            region.origin[a] = sites >= g.size() ? 0 : g.wrap(cube_origin[a] - margin);
            region.extent[a] = std::min(sites, g.size());
        }
        RegionSystem sys(code, region.points(g));
        auto e = light_solution(sys, s, weight_moves(sys), kLightTrials);
        if (!e) return false;
        result.witness = std::move(e);
        result.region = region;
        return true;
    };

    // Tighter regions first: they leave less room for heavy solutions.
    for (int margin : {-1, 0, 1})
        if (for_each_origin(starts, [&](const Coord& o) { return attempt(o, len, margin); })) return result;

    Coord cube_len{1, 1, 1};
    std::array<std::vector<int>, kMaxDim> shifted{std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}};
    for (int a = 0; a < g.dim(); ++a) {
        cube_len[a] = side;
        shifted[a].clear();
        for (int st : starts[a])
            for (int d = 0; d <= side - len[a]; ++d) shifted[a].push_back(g.wrap(st - d));
        std::sort(shifted[a].begin(), shifted[a].end());
        shifted[a].erase(std::unique(shifted[a].begin(), shifted[a].end()), shifted[a].end());
    }
    if (for_each_origin(shifted, [&](const Coord& o) { return attempt(o, cube_len, 1); })) return result;

    const int ltqo = params.ltqo_for(g.size());
    if (!is_neutral(code, s, ltqo).neutral)
        throw std::invalid_argument("syndrome is charged at scale " + std::to_string(ltqo));
    result.tqo_violation = true;
    return result;
}

std::vector<Coord> cube_neighbourhood(const LatticeGeometry& g, std::span<const Coord> cubes, int r) {
    std::vector<Coord> corners;
    for (const Coord& c : cubes)
        for (const Coord& p : Box{c, box_extent(g, 2)}.points(g)) corners.push_back(p);
    return g.neighbourhood(corners, r);
}

LocalizeResult localize(const CodeInstance& code, const PauliOperator& e, std::span<const Coord> region) {
    LocalizeResult result;
    const LatticeGeometry& g = code.geometry();
    std::unordered_set<std::size_t> sites;
    for (const Coord& c : region) sites.insert(g.site_index(g.wrap(c)));
    const auto q = static_cast<std::size_t>(g.qubits_per_site());
    bool inside = true;
    for (std::size_t qubit : e.support()) {
        if (!sites.count(qubit / q)) {
            inside = false;
            break;
        }
    }
    if (inside) {
        result.localized = e;
        return result;
    }

    RegionSystem sys(code, region);
    auto first = sys.solve(syndrome_of(code, e));
    std::vector<PauliOperator> kernel = sys.kernel();
    result.kernel_dimension = kernel.size();
    if (!first) return result;

    const RowReducer& stabilizers = code.stabilizer_reducer();
    const BitVector target = stabilizers.reduce((e * *first).symplectic());
    if (target.none()) {
        result.localized = std::move(first);
        return result;
    }
    // Which combination of syndrome-free region operators carries the logical
    // class of E * first? Solve in the quotient by the stabilizer span.
    BitMatrix columns(target.size(), kernel.size());
    for (std::size_t j = 0; j < kernel.size(); ++j)
        stabilizers.reduce(kernel[j].symplectic()).for_each_set_bit([&](std::size_t i) { columns.set(i, j, true); });
    auto combo = Gf2Solver(columns).solve(target);
    if (!combo) return result;
    PauliOperator out = *first;
    combo->for_each_set_bit([&](std::size_t j) { out *= kernel[j]; });
    result.localized = std::move(out);
    return result;
}

bool Anchor::contains(const LatticeGeometry& g, const Coord& cube) const {
    for (int a = 0; a < g.dim(); ++a)
        if (g.wrap(cube[a] - origin[a]) >= size) return false;
    return true;
}

std::vector<Coord> Anchor::cubes(const LatticeGeometry& g) const {
    return Box{origin, box_extent(g, size)}.points(g);
}

int anchor_distance(const LatticeGeometry& g, const Anchor& a, const Anchor& b) {
    auto ca = a.cubes(g), cb = b.cubes(g);
    return g.set_distance(ca, cb);
}

SegmentVerdict classify_string_segment(const CodeInstance& code, const PauliOperator& e, const Anchor& a1,
                                       const Anchor& a2, const ScaleParams& params) {
    const LatticeGeometry& g = code.geometry();
    check_anchors(g, a1, a2);
    const int ltqo = params.ltqo_for(g.size());
    if (!support_fits(code, e, ltqo))
        throw std::invalid_argument("operator support does not fit in a cube of size " + std::to_string(ltqo));
    NeutralityChecker checker(code, ltqo);
    MemoNeutrality memo(checker);
    return classify_with(code, syndrome_of(code, e), a1, a2, memo);
}

StringScanReport scan_for_strings(const CodeInstance& code, const StringScanOptions& options,
                                  const ScaleParams& params) {
    const LatticeGeometry& g = code.geometry();
    if (options.rho < 1 || options.rho > g.size()) throw std::invalid_argument("anchor size out of range");
    StringScanReport report;
    const int ltqo = params.ltqo_for(g.size());
    NeutralityChecker checker(code, ltqo);
    MemoNeutrality memo(checker);
    const Coord extent = box_extent(g, ltqo + 1);
    const Anchor first{Coord{}, options.rho};

    std::array<std::vector<int>, kMaxDim> grid{std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}};
    for (int a = 0; a < g.dim(); ++a) {
        grid[a].clear();
        for (int v = 0; v < g.size(); v += options.rho) grid[a].push_back(v);
    }

    for_each_origin(grid, [&](const Coord& origin) {
        const Anchor second{origin, options.rho};
        bool overlap = false;
        for (const Coord& c : first.cubes(g)) overlap = overlap || second.contains(g, c);
        if (overlap) return false;
        const int distance = anchor_distance(g, first, second);
        report.max_anchor_distance = std::max(report.max_anchor_distance, distance);
        const double aspect = static_cast<double>(distance) / options.rho;
        if (aspect <= options.alpha) return false;
        ++report.placements;

        std::vector<Coord> anchor_cubes = first.cubes(g);
        for (const Coord& c : second.cubes(g)) anchor_cubes.push_back(c);
        std::vector<Defect> anchor_defects;
        for (const Coord& c : anchor_cubes)
            for (int sp = 0; sp < static_cast<int>(code.num_species()); ++sp) anchor_defects.push_back({c, sp});
        const Syndrome exempt = code.syndrome_from_defects(anchor_defects);

        bool found = false;
        bool stop = for_each_origin(placement_axes(g, anchor_cubes, extent), [&](const Coord& o) {
            RegionSystem sys(code, Box{o, extent}.points(g), exempt);
            for (const PauliOperator& candidate : sys.kernel()) {
                if (report.candidates_examined == options.budget) {
                    report.budget_exhausted = true;
                    return true;
                }
                ++report.candidates_examined;
                SegmentVerdict v = classify_with(code, syndrome_of(code, candidate), first, second, memo);
                if (v.kind == SegmentClass::kNonTrivial) {
                    report.nontrivial.push_back({first, second, aspect, candidate, v});
                    found = true;
                    return true;
                }
            }
            return false;
        });
        return stop && !found;
    });
    return report;
}

}  // namespace stabland
