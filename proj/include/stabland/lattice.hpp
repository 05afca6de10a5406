#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stabland {

inline constexpr int kMaxDim = 3;

// Site or cube coordinates. Axes beyond the lattice dimension stay 0.
using Coord = std::array<int, kMaxDim>;

struct QubitIndex {
    Coord site{};
    int sub = 0;

    friend auto operator<=>(const QubitIndex&, const QubitIndex&) = default;
};

/// Minimal arc of Z_L covering a set of residues: {start, ..., start + length - 1}.
struct AxisSpan {
    int start = 0;
    int length = 0;
};

/// Periodic Z_L^D with q qubits per site and the l-infinity torus metric.
/// Elementary cubes are named by their minimal corner, so sites and cubes
/// share one index space.
class LatticeGeometry {
public:
    LatticeGeometry(int dim, int size, int qubits_per_site);

    int dim() const { return dim_; }
    int size() const { return size_; }
    int qubits_per_site() const { return q_; }

    std::size_t num_sites() const { return num_sites_; }
    std::size_t num_qubits() const { return num_sites_ * static_cast<std::size_t>(q_); }

    int wrap(int value) const {
        int r = value % size_;
        return r < 0 ? r + size_ : r;
    }
    Coord wrap(Coord c) const;
    Coord add(const Coord& a, const Coord& b) const;
    Coord sub(const Coord& a, const Coord& b) const;

    std::size_t site_index(const Coord& c) const;
    Coord site_coord(std::size_t index) const;

    std::size_t qubit_index(const QubitIndex& q) const;
    QubitIndex qubit(std::size_t index) const;

    // min(|d|, L - |d|) along one axis.
    int axis_distance(int a, int b) const;
    int distance(const Coord& a, const Coord& b) const;
    // Minimum pairwise distance between two point sets.
    int set_distance(std::span<const Coord> a, std::span<const Coord> b) const;
    // 1 + max pairwise distance between cube coordinates; 0 for an empty set.
    int cube_diameter(std::span<const Coord> cubes) const;

    // Minimal covering arc of the given coordinates along `axis`.
    AxisSpan covering_span(std::span<const Coord> points, int axis) const;

    // All sites within distance r of `points` (the r-neighbourhood B_r).
    std::vector<Coord> neighbourhood(std::span<const Coord> points, int r) const;

    // Every coordinate of the torus in index order.
    std::vector<Coord> all_coords() const;

private:
    int dim_;
    int size_;
    int q_;
    std::size_t num_sites_;
};

/// Axis-aligned torus box: origin + [0, extent) per active axis.
struct Box {
    Coord origin{};
    Coord extent{1, 1, 1};

    bool contains(const LatticeGeometry& g, const Coord& c) const;
    std::vector<Coord> points(const LatticeGeometry& g) const;
};

std::string format_coord(const Coord& c, int dim);

}  // namespace stabland
