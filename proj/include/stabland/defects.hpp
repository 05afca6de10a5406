#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stabland/code.hpp"
#include "stabland/region.hpp"

namespace stabland {

/// Length scales of the renormalization argument.
struct ScaleParams {
    double alpha = 15.0;
    // Neutrality scale; ltqo_for() substitutes floor(L/2) when unset.
    std::optional<int> ltqo;
    // Exponent with L_tqo >= L^beta. Metadata only.
    double beta = 1.0;

    // (10 alpha)^p
    double xi(int p) const;
    int ltqo_for(int lattice_size) const;
    void validate() const;
};

struct Cluster {
    std::vector<Coord> cubes;  // sorted by site index
    Syndrome defects;
    int diameter = 0;
};

struct SparsityVerdict {
    int level = 0;
    bool sparse = false;
    // The final merged clusters; when sparse, this is the partition.
    std::vector<Cluster> clusters;
    // xi(level + 1) reaches the largest diameter the torus can express, so
    // every merge succeeds and distances wrap.
    bool scale_exceeds_lattice = false;
};

// Rejects an empty syndrome.
SparsityVerdict cluster_partition(const CodeInstance& code, const Syndrome& s, int p, const ScaleParams& params);

// Largest p with s dense at every level 0..p, or -1 when sparse at level 0.
int min_dense_run(const CodeInstance& code, const Syndrome& s, const ScaleParams& params);

// Both sparse-partition conditions checked directly on a given partition.
bool is_valid_partition(const LatticeGeometry& g, const std::vector<std::vector<Coord>>& clusters, int p,
                        const ScaleParams& params);

struct NeutralityResult {
    bool neutral = false;
    std::optional<PauliOperator> witness;
    // Sites box holding the witness.
    std::optional<Box> region;
    std::string reason;
};

/// Neutrality at one length scale. A cube of linear size `size` spans
/// size + 1 sites per axis; the system for that box shape is factored once and
/// reused for every placement.
class NeutralityChecker {
public:
    NeutralityChecker(const CodeInstance& code, int size);

    int size() const { return size_; }
    NeutralityResult check(const Syndrome& s) const;

private:
    CodeInstance code_;
    int size_;
    Coord extent_{1, 1, 1};
    RegionSystem system_;
    std::vector<PauliOperator> moves_;
};

NeutralityResult is_neutral(const CodeInstance& code, const Syndrome& s, int size);

struct CreationResult {
    std::optional<PauliOperator> witness;
    Box region;
    // Neutral at scale L_tqo, yet nothing inside B_1 of the enclosing cube creates it.
    bool tqo_violation = false;
};

// Operator supported on B_1 of the minimal enclosing cube of `s`.
// Throws std::invalid_argument when `s` is charged at scale L_tqo.
CreationResult creation_operator(const CodeInstance& code, const Syndrome& s, const ScaleParams& params);

// Sites within distance r of the given cubes' corner sites.
std::vector<Coord> cube_neighbourhood(const LatticeGeometry& g, std::span<const Coord> cubes, int r);

struct LocalizeResult {
    std::optional<PauliOperator> localized;
    std::size_t kernel_dimension = 0;
};

// Some E' supported on `region` with the syndrome of E and E E' a stabilizer.
LocalizeResult localize(const CodeInstance& code, const PauliOperator& e, std::span<const Coord> region);

/// Cube-shaped anchor region: cubes origin + [0, size) per axis.
struct Anchor {
    Coord origin{};
    int size = 1;

    bool contains(const LatticeGeometry& g, const Coord& cube) const;
    std::vector<Coord> cubes(const LatticeGeometry& g) const;
};

// Minimum torus distance between the cubes of two anchors.
int anchor_distance(const LatticeGeometry& g, const Anchor& a, const Anchor& b);

enum class SegmentClass { kNotSegment, kTrivial, kNonTrivial };

struct SegmentVerdict {
    SegmentClass kind = SegmentClass::kNotSegment;
    double aspect_ratio = 0.0;
    bool first_charged = false;
    bool second_charged = false;
};

// Throws for overlapping anchors, unequal sizes, or support too wide for L_tqo.
SegmentVerdict classify_string_segment(const CodeInstance& code, const PauliOperator& e, const Anchor& a1,
                                       const Anchor& a2, const ScaleParams& params);

struct StringScanOptions {
    int rho = 1;
    double alpha = 15.0;
    // Upper bound on candidate operators examined.
    std::size_t budget = 100000;
};

struct StringCandidate {
    Anchor first;
    Anchor second;
    double aspect_ratio = 0.0;
    PauliOperator op;
    SegmentVerdict verdict;
};

struct StringScanReport {
    std::vector<StringCandidate> nontrivial;
    std::size_t placements = 0;
    std::size_t candidates_examined = 0;
    bool budget_exhausted = false;
    // Largest anchor distance available on this torus.
    int max_anchor_distance = 0;
};

// The first anchor sits at the origin; the second ranges over a grid of
// stride rho. Candidates are a basis of the operators inside an L_tqo box
// that commute with every generator outside the anchors.
StringScanReport scan_for_strings(const CodeInstance& code, const StringScanOptions& options,
                                  const ScaleParams& params);

}  // namespace stabland
