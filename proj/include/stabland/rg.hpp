#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabland/defects.hpp"
#include "stabland/paths.hpp"

namespace stabland {

/// Syndromes S(0..T) along a path, S(0) = initial.
struct SyndromeHistory {
    ErrorPath path;
    std::vector<Syndrome> syndromes;
    std::size_t max_defects = 0;

    std::size_t steps() const { return path.size(); }
};

SyndromeHistory syndrome_history(const CodeInstance& code, std::span<const PathStep> path, const Syndrome& initial = {});

/// Level-p subsequence of a history. The endpoints are always kept; an
/// intermediate syndrome is kept iff it is dense at every level below p.
struct LevelHistory {
    int level = 0;
    std::vector<std::size_t> retained;

    // Number of level-p errors (gaps between consecutive retained indices).
    std::size_t num_errors() const { return retained.empty() ? 0 : retained.size() - 1; }
};

struct LevelAnalysis {
    std::vector<LevelHistory> levels;  // p = 0 .. p_max
    int p_max = 0;
    // The path had no steps; p_max is then 0 by convention.
    bool empty_path = false;
    // min_dense_run of each S(t); -1 for the vacuum or a sparse-at-0 syndrome.
    std::vector<int> dense_run;
};

// Throws std::logic_error if a retained level-p syndrome has fewer than p + 1
// defects.
LevelAnalysis level_histories(const CodeInstance& code, const SyndromeHistory& history, const ScaleParams& params);

// Product of the steps between retained[i] and retained[i + 1].
PauliOperator level_error(const CodeInstance& code, const SyndromeHistory& history, const LevelHistory& level,
                          std::size_t i);

struct WorldLine {
    std::size_t start = 0;  // history index of positions[0]
    std::vector<std::vector<Coord>> positions;
    // Largest distance from the first position, and its history index.
    int max_drift = 0;
    std::size_t max_drift_at = 0;
};

struct LockingViolation {
    std::size_t line = 0;
    std::size_t t = 0;
    int distance = 0;
};

struct WorldLineReport {
    int level = 0;
    std::vector<WorldLine> lines;
    // Charged clusters at each history index of the segment.
    std::vector<std::size_t> charged_count;
    bool charge_count_constant = true;
    // Steps where a charged cluster had no predecessor (or successor) within xi(p).
    std::vector<std::size_t> continuity_breaks;
    // Steps where a predecessor had two charged clusters within xi(p).
    std::vector<std::size_t> ambiguous;
    std::vector<LockingViolation> locking_violations;
    double locking_radius = 0;
};

// Tracks charged clusters across history indices [first, last]. Every
// syndrome there must be sparse at level p (std::invalid_argument otherwise).
// Vacuum syndromes count as sparse with no clusters.
WorldLineReport track_charged_clusters(const CodeInstance& code, const SyndromeHistory& history, std::size_t first,
                                       std::size_t last, int p, const ScaleParams& params);

struct BoxCount {
    std::vector<int> scales;
    std::vector<std::size_t> counts;
    double dimension = 0;
    // Single occupied point: dimension reported as 0.
    bool degenerate = false;
    // Estimates at the shifted anchors and their max - min.
    std::vector<double> anchor_estimates;
    double anchor_spread = 0;
};

inline constexpr int kAnchorShifts = 4;

// Boxes are the axis-aligned s-cubes of the grid anchored at the origin;
// coordinates are taken in [0, L) without wrapping. The spread is measured
// over kAnchorShifts grids shifted by seeded random offsets.
BoxCount box_counting_dimension(std::span<const Coord> points, int dim, std::span<const int> scales,
                                std::uint64_t seed = 0);
// Distinct sites of the qubits.
BoxCount box_counting_dimension(const LatticeGeometry& g, std::span<const std::size_t> qubits,
                                std::span<const int> scales, std::uint64_t seed = 0);

// CSV "scale,count".
void write_box_counts_csv(std::ostream& out, const BoxCount& counts);

// Shortest site path inside `support` from any site of `a` to any site of `b`
// with consecutive sites at distance 1. Throws unless a, b are in support.
std::optional<std::vector<Coord>> support_connectivity(const LatticeGeometry& g, std::span<const Coord> support,
                                                       std::span<const Coord> a, std::span<const Coord> b);

// Distinct sites touched by an operator.
std::vector<Coord> support_sites(const CodeInstance& code, const PauliOperator& e);

}  // namespace stabland
