#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "stabland/code.hpp"

namespace stabland {

struct PathStep {
    std::size_t qubit = 0;
    char label = 'X';

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

using ErrorPath = std::vector<PathStep>;

PauliOperator path_product(const CodeInstance& code, std::span<const PathStep> path);

/// Running syndrome of a partial product, updated one single-qubit step at a time.
class SyndromeTracker {
public:
    explicit SyndromeTracker(const CodeInstance& code, const Syndrome& initial = {});

    // Returns the defect count after the step.
    std::size_t apply(const PathStep& step);
    std::size_t count() const { return count_; }
    bool contains(GeneratorId id) const { return state_.get(id); }
    Syndrome syndrome() const { return Syndrome::from_bits(state_); }

private:
    CodeInstance code_;
    BitVector state_;
    std::size_t count_ = 0;
};

struct EnergyProfile {
    // counts[t] = defects after t steps, t = 0..T.
    std::vector<std::size_t> counts;
    std::size_t barrier = 0;
    Syndrome final_syndrome;
};

EnergyProfile energy_profile(const CodeInstance& code, std::span<const PathStep> path, const Syndrome& initial = {});

// Throws unless `code` is the cubic code with XI creating the four-cube pattern.
void require_cubic_code(const CodeInstance& code);

// Apex cube of the pyramids grown from base site u.
Coord pyramid_apex(const CodeInstance& code, const Coord& u);
// {c, c + 2^p x, c + 2^p y, c + 2^p z} with c the apex.
Syndrome pyramid_syndrome(const CodeInstance& code, int p, const Coord& u);

// Calls fn(PathStep) for the 4^p steps of the level-p pyramid at u, in
// recursion order: sub-pyramid at u, then u + 2^(p-1) x, y, z.
template <typename Fn>
void for_each_pyramid_step(const CodeInstance& code, int p, const Coord& u, Fn&& fn);

ErrorPath pyramid_path(const CodeInstance& code, int p, const Coord& u);
PauliOperator pyramid_operator(const CodeInstance& code, int p, const Coord& u);

// Z-bar: ZI on every site of the plane x = u_x - 1.
PauliOperator logical_zbar(const CodeInstance& code, const Coord& u);

enum class LogicalVerdict { kNotCentralizing, kStabilizer, kLogical, kUndetermined };

const char* to_string(LogicalVerdict v);

// Instances up to this many qubits get the dense stabilizer-span test.
inline constexpr std::size_t kDenseSpanQubitLimit = 4096;

// `witnesses` are known centralizer elements; anticommuting with one proves a
// logical without rank computations.
LogicalVerdict verify_logical(const CodeInstance& code, const PauliOperator& e,
                              std::span<const PauliOperator> witnesses = {});

// Line format: "x y z sub P", one step per line; '#' starts a comment.
void write_path(std::ostream& out, const CodeInstance& code, std::span<const PathStep> path);
ErrorPath read_path(std::istream& in, const CodeInstance& code);
// CSV with header "t,defect_count".
void write_profile_csv(std::ostream& out, const EnergyProfile& profile);

// Throws unless the code is the cubic code and 0 <= p, 2^p <= L.
void check_pyramid_level(const CodeInstance& code, int p);

namespace detail {

template <typename Fn>
void pyramid_steps(const LatticeGeometry& g, int p, const Coord& u, Fn& fn) {
    if (p == 0) {
        fn(PathStep{g.qubit_index({g.wrap(u), 0}), 'X'});
        return;
    }
    const int h = 1 << (p - 1);
    for (const Coord& shift : {Coord{0, 0, 0}, Coord{h, 0, 0}, Coord{0, h, 0}, Coord{0, 0, h}})
        pyramid_steps(g, p - 1, g.add(u, shift), fn);
}

}  // namespace detail

template <typename Fn>
void for_each_pyramid_step(const CodeInstance& code, int p, const Coord& u, Fn&& fn) {
    check_pyramid_level(code, p);
    detail::pyramid_steps(code.geometry(), p, u, fn);
}

}  // namespace stabland
