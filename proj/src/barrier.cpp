#include "stabland/barrier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "stabland/region.hpp"

namespace stabland {

namespace {

constexpr std::uint16_t kUnvisited = 0xFFFF;
constexpr std::uint16_t kRoot = 0xFFFE;
// Coset spaces up to this many bits get a flat parent table.
constexpr std::size_t kDenseDimension = 24;

/// Parent move per visited coset.
class VisitedSet {
public:
    explicit VisitedSet(std::size_t dimension) : dense_(dimension <= kDenseDimension) {
        if (dense_) table_.assign(std::size_t{1} << dimension, kUnvisited);
    }

    bool contains(std::uint64_t key) const {
        return dense_ ? table_[key] != kUnvisited : sparse_.count(key) != 0;
    }
    void insert(std::uint64_t key, std::uint16_t parent) {
        if (dense_)
            table_[key] = parent;
        else
            sparse_.emplace(key, parent);
    }
    std::uint16_t parent(std::uint64_t key) const { return dense_ ? table_[key] : sparse_.at(key); }

private:
    bool dense_;
    std::vector<std::uint16_t> table_;
    std::unordered_map<std::uint64_t, std::uint16_t> sparse_;
};

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

}  // namespace

const char* to_string(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::kFound: return "found";
        case SearchOutcome::kNoPath: return "no-path";
        case SearchOutcome::kBudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

CosetKey canonicalize(const CodeInstance& code, const PauliOperator& e) {
    if (e.num_qubits() != code.num_qubits()) throw std::invalid_argument("canonicalize: qubit count mismatch");
    return CosetKey{code.stabilizer_reducer().reduce(e.symplectic())};
}

CosetGraph::CosetGraph(const CodeInstance& code) : code_(code) {
    free_columns_ = code_.stabilizer_reducer().free_columns();
    if (free_columns_.size() > 64) throw std::invalid_argument("CosetGraph: more than 64 coset dimensions");
    if (code_.num_generators() > 64) throw std::invalid_argument("CosetGraph: more than 64 generators");
    const std::string& alphabet = code_.error_alphabet();
    if (code_.num_qubits() * alphabet.size() >= kRoot) throw std::invalid_argument("CosetGraph: too many moves");
    for (std::size_t q = 0; q < code_.num_qubits(); ++q) {
        for (char label : alphabet) {
            moves_.push_back({q, label});
            key_delta_.push_back(pack_key(PauliOperator::single(code_.num_qubits(), q, label)));
            std::uint64_t flips = 0;
            code_.for_each_flip(q, label, [&](GeneratorId id) { flips ^= bit(id); });
            syndrome_delta_.push_back(flips);
        }
    }
}

std::uint64_t CosetGraph::pack_key(const PauliOperator& e) const {
    const BitVector reduced = canonicalize(code_, e).bits;
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < free_columns_.size(); ++i)
        if (reduced.get(free_columns_[i])) key |= bit(i);
    return key;
}

std::uint64_t CosetGraph::pack_syndrome(const Syndrome& s) const {
    std::uint64_t packed = 0;
    for (GeneratorId id : s) {
        if (id >= code_.num_generators()) throw std::invalid_argument("pack_syndrome: generator out of range");
        packed |= bit(id);
    }
    return packed;
}

BarrierResult CosetGraph::search(const Goal& goal, const SearchBudget& budget) const {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const std::size_t omega_max = budget.omega_max.value_or(code_.num_generators());
    auto reached = [&](std::uint64_t key, std::uint64_t syndrome) {
        return goal.kind == Goal::kCoset ? key == goal.value : syndrome == goal.value;
    };

    BarrierResult result;
    if (reached(0, 0)) {
        result.outcome = SearchOutcome::kFound;
        result.omega = 0;
        result.states_visited = 1;
        return result;
    }

    struct State {
        std::uint64_t key;
        std::uint64_t syndrome;
    };
    std::vector<State> frontier, next;
    for (std::size_t omega = 0; omega <= omega_max; ++omega) {
        VisitedSet visited(dimension());
        visited.insert(0, kRoot);
        std::size_t count = 1;
        bool blocked = false;
        frontier.assign(1, State{0, 0});
        std::optional<std::uint64_t> hit;
        while (!frontier.empty() && !hit) {
            next.clear();
            for (const State& s : frontier) {
                for (std::size_t m = 0; m < moves_.size(); ++m) {
                    const std::uint64_t key = s.key ^ key_delta_[m];
                    if (visited.contains(key)) continue;
                    const std::uint64_t syndrome = s.syndrome ^ syndrome_delta_[m];
                    if (static_cast<std::size_t>(std::popcount(syndrome)) > omega) {
                        blocked = true;
                        continue;
                    }
                    visited.insert(key, static_cast<std::uint16_t>(m));
                    if (++count > budget.max_states) {
                        result.outcome = SearchOutcome::kBudgetExhausted;
                        result.states_visited += count;
                        return result;
                    }
                    if (reached(key, syndrome)) {
                        hit = key;
                        break;
                    }
                    next.push_back({key, syndrome});
                }
                if (hit) break;
                if (budget.max_seconds && (count & 0xFFF) == 0 &&
                    std::chrono::duration<double>(Clock::now() - start).count() > *budget.max_seconds) {
                    result.outcome = SearchOutcome::kBudgetExhausted;
                    result.states_visited += count;
                    return result;
                }
            }
            std::swap(frontier, next);
        }
        result.states_visited += count;

        if (hit) {
            for (std::uint64_t key = *hit; key != 0;) {
                const std::uint16_t m = visited.parent(key);
                result.witness.push_back(moves_[m]);
                key ^= key_delta_[m];
            }
            std::reverse(result.witness.begin(), result.witness.end());
            const EnergyProfile profile = energy_profile(code_, result.witness);
            const PauliOperator product = path_product(code_, result.witness);
            const bool at_goal = goal.kind == Goal::kCoset ? pack_key(product) == goal.value
                                                           : pack_syndrome(profile.final_syndrome) == goal.value;
            if (profile.barrier != omega || !at_goal) throw std::logic_error("CosetGraph::search: witness check failed");
            result.outcome = SearchOutcome::kFound;
            result.omega = omega;
            return result;
        }

        if (!result.reachable.empty() && count < result.reachable.back())
            throw std::logic_error("CosetGraph::search: reachable set shrank as the ceiling rose");
        result.reachable.push_back(count);
        result.ruled_out = omega;
        // Nothing was cut off, so a higher ceiling reaches the same states.
        if (!blocked) break;
    }
    result.outcome = SearchOutcome::kNoPath;
    return result;
}

BarrierResult min_barrier_logical(const CodeInstance& code, const PauliOperator& target, const SearchBudget& budget) {
    if (!syndrome_of(code, target).empty())
        throw std::invalid_argument("min_barrier_logical: target does not commute with the stabilizers");
    CosetGraph graph(code);
    return graph.search({CosetGraph::Goal::kCoset, graph.pack_key(target)}, budget);
}

BarrierResult min_barrier_cluster(const CodeInstance& code, const Syndrome& s, const SearchBudget& budget) {
    CosetGraph graph(code);
    return graph.search({CosetGraph::Goal::kSyndrome, graph.pack_syndrome(s)}, budget);
}

CentralizerBasis centralizer_basis(const CodeInstance& code) {
    const LatticeGeometry& g = code.geometry();
    std::vector<Coord> sites;
    for (std::size_t s = 0; s < g.num_sites(); ++s) sites.push_back(g.site_coord(s));
    const RegionSystem system(code, sites);
    const std::vector<PauliOperator> kernel = system.kernel();

    // Rows (class under the stabilizer quotient | operator); elimination puts
    // the operators with a trivial class at the bottom.
    const std::size_t n2 = 2 * code.num_qubits();
    BitMatrix rows(0, 2 * n2);
    for (const PauliOperator& e : kernel) {
        const BitVector v = e.symplectic();
        rows.append_row(BitVector::concat(code.stabilizer_reducer().reduce(v), v));
    }
    const RowReducer reducer(std::move(rows));
    CentralizerBasis basis;
    for (std::size_t i = 0; i < reducer.rank(); ++i) {
        const BitVector row = reducer.echelon().row(i);
        PauliOperator e = PauliOperator::from_symplectic(row.slice(n2, n2));
        if (reducer.pivot_columns()[i] < n2)
            basis.logicals.push_back(std::move(e));
        else
            basis.stabilizers.push_back(std::move(e));
    }
    return basis;
}

namespace {

// Minimum weight over the centralizer with a nonzero logical part, walking
// every combination of the basis in Gray-code order.
DistanceResult enumerate_distance(const CodeInstance& code, const CentralizerBasis& basis) {
    std::vector<PauliOperator> all = basis.logicals;
    all.insert(all.end(), basis.stabilizers.begin(), basis.stabilizers.end());
    const std::size_t dim = all.size();
    const std::size_t words = words_for_bits(code.num_qubits());
    std::vector<Word> x(words, 0), z(words, 0);

    DistanceResult result;
    result.method = "enumeration";
    std::uint64_t logical_mask = 0;
    std::size_t best = code.num_qubits() + 1;
    std::uint64_t best_index = 0;
    const std::uint64_t total = std::uint64_t{1} << dim;
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto j = static_cast<std::size_t>(std::countr_zero(i));
        const auto xs = all[j].xbits().words();
        const auto zs = all[j].zbits().words();
        for (std::size_t w = 0; w < words; ++w) {
            x[w] ^= xs[w];
            z[w] ^= zs[w];
        }
        if (j < basis.logicals.size()) logical_mask ^= bit(j);
        if (logical_mask == 0) continue;
        std::size_t weight = 0;
        for (std::size_t w = 0; w < words; ++w) weight += static_cast<std::size_t>(std::popcount(x[w] | z[w]));
        if (weight < best) {
            best = weight;
            best_index = i ^ (i >> 1);
        }
    }
    result.states_visited = total;
    PauliOperator witness = code.identity();
    for (std::size_t j = 0; j < dim; ++j)
        if (best_index & bit(j)) witness *= all[j];
    result.distance = best;
    result.lower_bound = best;
    result.upper_bound = best;
    result.witness = std::move(witness);
    return result;
}

// Weight-ordered search over operators drawn from the error alphabet.
DistanceResult weight_search(const CodeInstance& code, const CentralizerBasis& basis, const DistanceBudget& budget) {
    DistanceResult result;
    result.method = "weight-search";
    for (const PauliOperator& e : basis.logicals)
        result.upper_bound = std::min(result.upper_bound.value_or(e.weight()), e.weight());
    const std::size_t n = code.num_qubits();
    const std::string& alphabet = code.error_alphabet();
    const std::size_t cap = std::min(budget.max_weight.value_or(n), *result.upper_bound);

    for (std::size_t w = 1; w <= cap; ++w) {
        std::vector<std::size_t> qubits(w);
        std::iota(qubits.begin(), qubits.end(), 0);
        std::vector<std::size_t> labels(w, 0);
        while (true) {
            PauliOperator e(n);
            for (std::size_t i = 0; i < w; ++i) e.apply(qubits[i], alphabet[labels[i]]);
            if (++result.states_visited > budget.max_states) {
                result.budget_exhausted = true;
                result.lower_bound = w;
                return result;
            }
            if (syndrome_of(code, e).empty() && !code.stabilizer_reducer().contains(e.symplectic())) {
                result.distance = w;
                result.lower_bound = w;
                result.upper_bound = w;
                result.witness = std::move(e);
                return result;
            }
            // Next label assignment, then next qubit subset.
            std::size_t i = 0;
            while (i < w && ++labels[i] == alphabet.size()) labels[i++] = 0;
            if (i < w) continue;
            std::size_t k = w;
            while (k > 0 && qubits[k - 1] == n - w + (k - 1)) --k;
            if (k == 0) break;
            ++qubits[k - 1];
            for (std::size_t t = k; t < w; ++t) qubits[t] = qubits[t - 1] + 1;
        }
        result.lower_bound = w + 1;
    }
    if (cap == *result.upper_bound) {
        result.distance = cap;
        result.lower_bound = cap;
        for (const PauliOperator& e : basis.logicals)
            if (e.weight() == cap) result.witness = e;
    } else {
        result.budget_exhausted = true;
    }
    return result;
}

}  // namespace

DistanceResult code_distance(const CodeInstance& code, const DistanceBudget& budget) {
    const CentralizerBasis basis = centralizer_basis(code);
    if (basis.logicals.empty()) {
        DistanceResult result;
        result.method = "no-logicals";
        return result;
    }
    const std::size_t dim = basis.logicals.size() + basis.stabilizers.size();
    if (dim < 64 && (std::uint64_t{1} << dim) <= budget.max_states && !budget.max_weight)
        return enumerate_distance(code, basis);
    return weight_search(code, basis, budget);
}

}  // namespace stabland
