#include "stabland/lattice.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace stabland {

LatticeGeometry::LatticeGeometry(int dim, int size, int qubits_per_site)
    : dim_(dim), size_(size), q_(qubits_per_site), num_sites_(1) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("lattice dimension must be 1, 2 or 3");
    if (size < 2) throw std::invalid_argument("lattice size L must be at least 2");
    if (qubits_per_site < 1) throw std::invalid_argument("need at least one qubit per site");
    for (int a = 0; a < dim; ++a) num_sites_ *= static_cast<std::size_t>(size);
}

Coord LatticeGeometry::wrap(Coord c) const {
    for (int a = 0; a < kMaxDim; ++a) c[a] = a < dim_ ? wrap(c[a]) : 0;
    return c;
}

Coord LatticeGeometry::add(const Coord& a, const Coord& b) const {
    Coord out{};
    for (int i = 0; i < dim_; ++i) out[i] = wrap(a[i] + b[i]);
    return out;
}

Coord LatticeGeometry::sub(const Coord& a, const Coord& b) const {
    Coord out{};
    for (int i = 0; i < dim_; ++i) out[i] = wrap(a[i] - b[i]);
    return out;
}

std::size_t LatticeGeometry::site_index(const Coord& c) const {
    std::size_t index = 0;
    for (int a = dim_ - 1; a >= 0; --a) index = index * static_cast<std::size_t>(size_) + static_cast<std::size_t>(wrap(c[a]));
    return index;
}

Coord LatticeGeometry::site_coord(std::size_t index) const {
    Coord out{};
    for (int a = 0; a < dim_; ++a) {
        out[a] = static_cast<int>(index % static_cast<std::size_t>(size_));
        index /= static_cast<std::size_t>(size_);
    }
    return out;
}

std::size_t LatticeGeometry::qubit_index(const QubitIndex& q) const {
    if (q.sub < 0 || q.sub >= q_) throw std::out_of_range("qubit sub-index out of range");
    return site_index(q.site) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(q.sub);
}

QubitIndex LatticeGeometry::qubit(std::size_t index) const {
    return {site_coord(index / static_cast<std::size_t>(q_)), static_cast<int>(index % static_cast<std::size_t>(q_))};
}

int LatticeGeometry::axis_distance(int a, int b) const {
    int d = wrap(a - b);
    return std::min(d, size_ - d);
}

int LatticeGeometry::distance(const Coord& a, const Coord& b) const {
    int d = 0;
    for (int i = 0; i < dim_; ++i) d = std::max(d, axis_distance(a[i], b[i]));
    return d;
}

int LatticeGeometry::set_distance(std::span<const Coord> a, std::span<const Coord> b) const {
    if (a.empty() || b.empty()) throw std::invalid_argument("set_distance of an empty set");
    int best = size_;
    for (const Coord& x : a)
        for (const Coord& y : b) best = std::min(best, distance(x, y));
    return best;
}

int LatticeGeometry::cube_diameter(std::span<const Coord> cubes) const {
    if (cubes.empty()) return 0;
    int d = 0;
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t j = i + 1; j < cubes.size(); ++j) d = std::max(d, distance(cubes[i], cubes[j]));
    return 1 + d;
}

AxisSpan LatticeGeometry::covering_span(std::span<const Coord> points, int axis) const {
    if (points.empty()) throw std::invalid_argument("covering_span of an empty set");
    std::vector<int> values;
    values.reserve(points.size());
    for (const Coord& p : points) values.push_back(wrap(p[axis]));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // The arc starts right after the largest circular gap.
    int best_gap = -1;
    std::size_t best_after = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        int next = i + 1 < values.size() ? values[i + 1] : values[0] + size_;
        int gap = next - values[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_after = (i + 1) % values.size();
        }
    }
    return {values[best_after], size_ - best_gap + 1};
}

std::vector<Coord> LatticeGeometry::neighbourhood(std::span<const Coord> points, int r) const {
    std::unordered_set<std::size_t> seen;
    std::vector<Coord> out;
    const int reach = std::min(r, size_ / 2);
    Coord lo{}, hi{};
    for (int a = 0; a < dim_; ++a) {
        lo[a] = -reach;
        hi[a] = reach;
    }
    for (const Coord& p : points) {
        for (int dx = lo[0]; dx <= hi[0]; ++dx)
            for (int dy = lo[1]; dy <= hi[1]; ++dy)
                for (int dz = lo[2]; dz <= hi[2]; ++dz) {
                    Coord c = wrap(Coord{p[0] + dx, p[1] + dy, p[2] + dz});
                    if (seen.insert(site_index(c)).second) out.push_back(c);
                }
    }
    std::sort(out.begin(), out.end(), [&](const Coord& a, const Coord& b) { return site_index(a) < site_index(b); });
    return out;
}

std::vector<Coord> LatticeGeometry::all_coords() const {
    std::vector<Coord> out;
    out.reserve(num_sites_);
    for (std::size_t i = 0; i < num_sites_; ++i) out.push_back(site_coord(i));
    return out;
}

bool Box::contains(const LatticeGeometry& g, const Coord& c) const {
    for (int a = 0; a < g.dim(); ++a)
        if (g.wrap(c[a] - origin[a]) >= extent[a]) return false;
    return true;
}

std::vector<Coord> Box::points(const LatticeGeometry& g) const {
    std::vector<Coord> out;
    Coord ext{1, 1, 1};
    for (int a = 0; a < g.dim(); ++a) ext[a] = std::min(extent[a], g.size());
    for (int dz = 0; dz < ext[2]; ++dz)
        for (int dy = 0; dy < ext[1]; ++dy)
            for (int dx = 0; dx < ext[0]; ++dx) out.push_back(g.wrap(Coord{origin[0] + dx, origin[1] + dy, origin[2] + dz}));
    return out;
}

std::string format_coord(const Coord& c, int dim) {
    std::string out = "(";
    for (int a = 0; a < dim; ++a) {
        if (a) out += ',';
        out += std::to_string(c[a]);
    }
    return out + ")";
}

}  // namespace stabland
