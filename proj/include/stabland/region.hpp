#pragma once

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stabland/code.hpp"

namespace stabland {

// Single-qubit labels spanning the error alphabet over GF(2): {X, Z} when the
// alphabet generates all Paulis, otherwise the alphabet itself.
std::vector<char> label_basis(const std::string& alphabet);

/// Operators supported on a fixed set of sites, written as GF(2) combinations
/// of (qubit, label) variables, together with the syndrome they leave on a
/// chosen set of generators.
class RegionSystem {
public:
    // Constrained generators: every generator touching the region.
    RegionSystem(const CodeInstance& code, std::span<const Coord> sites);
    // Constrained generators: those touching the region that are not in `exempt`.
    RegionSystem(const CodeInstance& code, std::span<const Coord> sites, const Syndrome& exempt);

    const CodeInstance& code() const { return code_; }
    std::size_t num_variables() const { return variables_.size(); }
    const std::vector<std::pair<std::size_t, char>>& variables() const { return variables_; }
    // Constrained generator ids, ascending.
    const std::vector<GeneratorId>& rows() const { return rows_; }

    // Constrained generators by variables.
    const BitMatrix& matrix() const { return matrix_; }

    bool covers(const Syndrome& s) const;
    // `s` as a right-hand side over rows(); nullopt when `s` leaves them.
    std::optional<BitVector> rhs(const Syndrome& s) const;
    // Operator in the region whose syndrome restricted to rows() equals `s`.
    // nullopt when inconsistent or when `s` leaves the constrained rows.
    std::optional<PauliOperator> solve(const Syndrome& s) const;
    // Basis of region operators invisible to every constrained generator.
    std::vector<PauliOperator> kernel() const;

    PauliOperator to_operator(const BitVector& assignment) const;
    // Variables indexed by qubit, or nullopt when `e` leaves the region or uses
    // a label outside the alphabet's span.
    std::optional<BitVector> to_assignment(const PauliOperator& e) const;

private:
    void build(std::span<const Coord> sites, const Syndrome* exempt);

    CodeInstance code_;
    std::unordered_map<std::size_t, std::size_t> first_variable_;
    std::vector<std::pair<std::size_t, char>> variables_;
    std::vector<GeneratorId> rows_;
    BitMatrix matrix_;
    std::shared_ptr<const Gf2Solver> solver_;
};

// Lightest of the canonical solution and the solutions obtained by
// eliminating in `trials` shuffled variable orders (fixed seed, so the result is
// reproducible), followed by reduce_weight over `moves`.
std::optional<PauliOperator> light_solution(const RegionSystem& sys, const Syndrome& s,
                                            std::span<const PauliOperator> moves, int trials);

// Greedy weight descent: apply any move that lowers the weight until none does.
PauliOperator reduce_weight(PauliOperator e, std::span<const PauliOperator> moves);

}  // namespace stabland
