#include "stabland/paths.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace stabland {

PauliOperator path_product(const CodeInstance& code, std::span<const PathStep> path) {
    PauliOperator e = code.identity();
    for (const PathStep& s : path) e.apply(s.qubit, s.label);
    return e;
}

SyndromeTracker::SyndromeTracker(const CodeInstance& code, const Syndrome& initial)
    : code_(code), state_(initial.to_bits(code.num_generators())), count_(initial.size()) {}

std::size_t SyndromeTracker::apply(const PathStep& step) {
    if (step.qubit >= code_.num_qubits()) throw std::out_of_range("path step qubit out of range");
    code_.for_each_flip(step.qubit, step.label, [&](GeneratorId id) {
        state_.flip(id);
        if (state_.get(id))
            ++count_;
        else
            --count_;
    });
    return count_;
}

EnergyProfile energy_profile(const CodeInstance& code, std::span<const PathStep> path, const Syndrome& initial) {
    EnergyProfile profile;
    SyndromeTracker tracker(code, initial);
    profile.counts.reserve(path.size() + 1);
    profile.counts.push_back(tracker.count());
    for (const PathStep& s : path) profile.counts.push_back(tracker.apply(s));
    for (std::size_t m : profile.counts) profile.barrier = std::max(profile.barrier, m);
    profile.final_syndrome = tracker.syndrome();
    return profile;
}

void require_cubic_code(const CodeInstance& code) {
    const LatticeGeometry& g = code.geometry();
    if (g.dim() != 3 || g.qubits_per_site() != 2 || code.num_species() != 2 || g.size() < 2)
        throw std::invalid_argument("pyramids need the cubic code");
    const Coord u{1, 1, 1};
    Syndrome seen = syndrome_of(code, code.on_site(u, "XI"));
    if (seen != pyramid_syndrome(code, 0, u)) throw std::invalid_argument("pyramids need the cubic code");
}

Coord pyramid_apex(const CodeInstance& code, const Coord& u) { return code.geometry().sub(u, {1, 1, 1}); }

Syndrome pyramid_syndrome(const CodeInstance& code, int p, const Coord& u) {
    const LatticeGeometry& g = code.geometry();
    const Coord c = pyramid_apex(code, u);
    const int s = 1 << p;
    std::vector<Defect> d;
    for (const Coord& shift : {Coord{0, 0, 0}, Coord{s, 0, 0}, Coord{0, s, 0}, Coord{0, 0, s}}) d.push_back({g.add(c, shift), 1});
    return code.syndrome_from_defects(d);
}

void check_pyramid_level(const CodeInstance& code, int p) {
    if (p < 0 || p >= 30 || (1 << p) > code.geometry().size())
        throw std::invalid_argument("pyramid level " + std::to_string(p) + " does not fit on L=" +
                                    std::to_string(code.geometry().size()));
    require_cubic_code(code);
}

ErrorPath pyramid_path(const CodeInstance& code, int p, const Coord& u) {
    ErrorPath path;
    for_each_pyramid_step(code, p, u, [&](const PathStep& s) { path.push_back(s); });
    return path;
}

PauliOperator pyramid_operator(const CodeInstance& code, int p, const Coord& u) {
    PauliOperator e = code.identity();
    for_each_pyramid_step(code, p, u, [&](const PathStep& s) { e.apply(s.qubit, s.label); });
    return e;
}

PauliOperator logical_zbar(const CodeInstance& code, const Coord& u) {
    require_cubic_code(code);
    const LatticeGeometry& g = code.geometry();
    PauliOperator z = code.identity();
    const int x = g.wrap(u[0] - 1);
    for (int y = 0; y < g.size(); ++y)
        for (int w = 0; w < g.size(); ++w) z.apply(g.qubit_index({{x, y, w}, 0}), 'Z');
    return z;
}

const char* to_string(LogicalVerdict v) {
    switch (v) {
        case LogicalVerdict::kNotCentralizing: return "not_centralizing";
        case LogicalVerdict::kStabilizer: return "stabilizer";
        case LogicalVerdict::kLogical: return "logical";
        case LogicalVerdict::kUndetermined: return "undetermined";
    }
    return "?";
}

LogicalVerdict verify_logical(const CodeInstance& code, const PauliOperator& e, std::span<const PauliOperator> witnesses) {
    if (!syndrome_of(code, e).empty()) return LogicalVerdict::kNotCentralizing;
    for (const PauliOperator& w : witnesses)
        if (!commutes(e, w)) return LogicalVerdict::kLogical;
    if (code.num_qubits() > kDenseSpanQubitLimit) return LogicalVerdict::kUndetermined;
    return code.stabilizer_reducer().contains(e.symplectic()) ? LogicalVerdict::kStabilizer : LogicalVerdict::kLogical;
}

void write_path(std::ostream& out, const CodeInstance& code, std::span<const PathStep> path) {
    const LatticeGeometry& g = code.geometry();
    for (const PathStep& s : path) {
        QubitIndex q = g.qubit(s.qubit);
        out << q.site[0] << ' ' << q.site[1] << ' ' << q.site[2] << ' ' << q.sub << ' ' << s.label << '\n';
    }
}

ErrorPath read_path(std::istream& in, const CodeInstance& code) {
    const LatticeGeometry& g = code.geometry();
    ErrorPath path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        QubitIndex q;
        char label = 0;
        if (!(fields >> q.site[0])) continue;
        if (!(fields >> q.site[1] >> q.site[2] >> q.sub >> label))
            throw std::invalid_argument("path line " + std::to_string(line_no) + ": expected \"x y z sub P\"");
        std::string rest;
        if (fields >> rest) throw std::invalid_argument("path line " + std::to_string(line_no) + ": trailing text");
        if (label != 'X' && label != 'Y' && label != 'Z')
            throw std::invalid_argument("path line " + std::to_string(line_no) + ": label must be X, Y or Z");
        if (q.sub < 0 || q.sub >= g.qubits_per_site())
            throw std::invalid_argument("path line " + std::to_string(line_no) + ": sub-qubit out of range");
        for (int a = g.dim(); a < kMaxDim; ++a)
            if (q.site[a] != 0)
                throw std::invalid_argument("path line " + std::to_string(line_no) + ": coordinate beyond the lattice dimension");
        q.site = g.wrap(q.site);
        path.push_back({g.qubit_index(q), label});
    }
    return path;
}

void write_profile_csv(std::ostream& out, const EnergyProfile& profile) {
    out << "t,defect_count\n";
    for (std::size_t t = 0; t < profile.counts.size(); ++t) out << t << ',' << profile.counts[t] << '\n';
}

}  // namespace stabland
