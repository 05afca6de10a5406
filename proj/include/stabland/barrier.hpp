#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabland/code.hpp"
#include "stabland/paths.hpp"

namespace stabland {

/// Canonical representative of a Pauli modulo the stabilizer group: the
/// symplectic vector reduced against the stabilizer echelon basis.
struct CosetKey {
    BitVector bits;

    bool is_identity() const { return bits.none(); }
    friend bool operator==(const CosetKey&, const CosetKey&) = default;
};

CosetKey canonicalize(const CodeInstance& code, const PauliOperator& e);

struct SearchBudget {
    // Highest ceiling tried; defaults to the number of generators.
    std::optional<std::size_t> omega_max;
    // Cap on states visited by a single pass.
    std::size_t max_states = 10'000'000;
    std::optional<double> max_seconds;
};

enum class SearchOutcome { kFound, kNoPath, kBudgetExhausted };

const char* to_string(SearchOutcome o);

struct BarrierResult {
    SearchOutcome outcome = SearchOutcome::kNoPath;
    std::optional<std::size_t> omega;
    // Largest ceiling proven insufficient.
    std::optional<std::size_t> ruled_out;
    ErrorPath witness;
    std::size_t states_visited = 0;
    // States reachable under each completed ceiling 0, 1, ...
    std::vector<std::size_t> reachable;
};

/// Coset graph of a small instance: states are cosets, edges multiply by one
/// single-qubit Pauli from the error alphabet. Cosets and syndromes are packed
/// into 64-bit words, so the instance needs at most 64 coset dimensions and
/// 64 generators.
class CosetGraph {
public:
    explicit CosetGraph(const CodeInstance& code);

    const CodeInstance& code() const { return code_; }
    // Coset bits: the non-pivot columns of the stabilizer echelon form.
    std::size_t dimension() const { return free_columns_.size(); }
    std::size_t num_moves() const { return moves_.size(); }
    const PathStep& move(std::size_t i) const { return moves_[i]; }
    std::uint64_t key_delta(std::size_t i) const { return key_delta_[i]; }
    std::uint64_t syndrome_delta(std::size_t i) const { return syndrome_delta_[i]; }

    std::uint64_t pack_key(const PauliOperator& e) const;
    std::uint64_t pack_syndrome(const Syndrome& s) const;

    struct Goal {
        enum Kind { kCoset, kSyndrome } kind = kCoset;
        std::uint64_t value = 0;
    };

    // Iterative deepening on the ceiling: breadth-first search from the identity
    // over cosets whose syndrome weight stays within it. Moves are tried in
    // (qubit, alphabet) order, so witnesses are reproducible.
    BarrierResult search(const Goal& goal, const SearchBudget& budget) const;

private:
    CodeInstance code_;
    std::vector<std::size_t> free_columns_;
    std::vector<PathStep> moves_;
    std::vector<std::uint64_t> key_delta_;
    std::vector<std::uint64_t> syndrome_delta_;
};

// `target` must commute with every generator.
BarrierResult min_barrier_logical(const CodeInstance& code, const PauliOperator& target,
                                  const SearchBudget& budget = {});
// Goal: any coset whose syndrome is `s`.
BarrierResult min_barrier_cluster(const CodeInstance& code, const Syndrome& s, const SearchBudget& budget = {});

struct DistanceBudget {
    // Cap on centralizer elements enumerated, or on candidates tried by the
    // weight-ordered fallback.
    std::size_t max_states = 10'000'000;
    std::optional<std::size_t> max_weight;
};

struct DistanceResult {
    std::optional<std::size_t> distance;
    // Bounds hold even when the budget runs out.
    std::size_t lower_bound = 1;
    std::optional<std::size_t> upper_bound;
    std::optional<PauliOperator> witness;
    // "enumeration", "weight-search" or "no-logicals".
    std::string method;
    std::size_t states_visited = 0;
    bool budget_exhausted = false;
};

/// Centralizer elements and logical representatives within the error
/// alphabet's span. Stabilizer rows come first.
struct CentralizerBasis {
    std::vector<PauliOperator> stabilizers;
    std::vector<PauliOperator> logicals;
};

CentralizerBasis centralizer_basis(const CodeInstance& code);

DistanceResult code_distance(const CodeInstance& code, const DistanceBudget& budget = {});

}  // namespace stabland
