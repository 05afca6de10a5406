#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "stabland/barrier.hpp"
#include "test_support.hpp"

using namespace stabland;
using namespace stabland::testing;

namespace {

// Independent oracle: cosets keyed by their commutation pattern with a basis
// of the centralizer, and the minimax barrier found by adding cosets in order
// of syndrome weight to a union-find until the endpoints join.
class MinimaxOracle {
public:
    explicit MinimaxOracle(const CodeInstance& code) : code_(code) {
        const std::size_t n = code.num_qubits();
        centralizer_ = gf2_nullspace(code.syndrome_matrix());
        bits_ = centralizer_.rows();
        EXPECT_LE(bits_, 26u);
        for (std::size_t q = 0; q < n; ++q)
            for (char label : code.error_alphabet()) {
                moves_.push_back(key(PauliOperator::single(n, q, label)));
                std::vector<GeneratorId> flips = code.flips(q, label);
                std::uint64_t mask = 0;
                for (GeneratorId id : flips) mask ^= std::uint64_t{1} << id;
                flip_masks_.push_back(mask);
            }
        // Every coset reachable from the identity, with its syndrome.
        syndrome_.assign(std::size_t{1} << bits_, kUnseen);
        syndrome_[0] = 0;
        std::vector<std::uint32_t> queue{0};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t s = queue[head];
            for (std::size_t m = 0; m < moves_.size(); ++m) {
                const std::uint32_t t = s ^ moves_[m];
                if (syndrome_[t] != kUnseen) continue;
                syndrome_[t] = syndrome_[s] ^ flip_masks_[m];
                queue.push_back(t);
            }
        }
        order_ = std::move(queue);
        std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::popcount(syndrome_[a]) < std::popcount(syndrome_[b]);
        });
    }

    std::uint32_t key(const PauliOperator& e) const {
        // Symplectic product with each centralizer row: the row is laid out as
        // (x | z), so <e, c> = e_x . c_z + e_z . c_x.
        const std::size_t n = code_.num_qubits();
        std::uint32_t k = 0;
        for (std::size_t i = 0; i < centralizer_.rows(); ++i) {
            const BitVector c = centralizer_.row(i);
            const bool p = e.xbits().dot(c.slice(n, n)) ^ e.zbits().dot(c.slice(0, n));
            if (p) k |= std::uint32_t{1} << i;
        }
        return k;
    }

    std::size_t reachable() const { return order_.size(); }

    // Least ceiling at which the identity connects to some goal coset.
    template <typename Goal>
    std::optional<std::size_t> minimax(Goal&& goal) const {
        std::vector<std::uint32_t> parent(std::size_t{1} << bits_);
        std::iota(parent.begin(), parent.end(), 0u);
        std::vector<char> active(parent.size(), 0);
        auto find = [&](std::uint32_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        std::vector<std::uint32_t> goals;
        for (std::uint32_t s : order_)
            if (goal(s, syndrome_[s])) goals.push_back(s);
        std::size_t i = 0;
        while (i < order_.size()) {
            const int level = std::popcount(syndrome_[order_[i]]);
            for (; i < order_.size() && std::popcount(syndrome_[order_[i]]) == level; ++i) {
                const std::uint32_t s = order_[i];
                active[s] = 1;
                for (std::uint32_t m : moves_)
                    if (active[s ^ m]) parent[find(s)] = find(s ^ m);
            }
            for (std::uint32_t gs : goals)
                if (active[gs] && find(gs) == find(0)) return static_cast<std::size_t>(level);
        }
        return std::nullopt;
    }

private:
    static constexpr std::uint64_t kUnseen = ~std::uint64_t{0};
    CodeInstance code_;
    BitMatrix centralizer_;
    std::size_t bits_ = 0;
    std::vector<std::uint32_t> moves_;
    std::vector<std::uint64_t> flip_masks_;
    std::vector<std::uint64_t> syndrome_;
    std::vector<std::uint32_t> order_;
};

PauliOperator toric_row_string(const CodeInstance& code, int y) {
    PauliOperator e = code.identity();
    toric_move_x(code, e, y, 0, code.geometry().size());
    return e;
}

void expect_valid_witness(const CodeInstance& code, const BarrierResult& r) {
    ASSERT_EQ(r.outcome, SearchOutcome::kFound);
    auto profile = energy_profile(code, r.witness);
    EXPECT_EQ(profile.barrier, *r.omega);
    for (std::size_t i = 1; i < r.reachable.size(); ++i) EXPECT_GE(r.reachable[i], r.reachable[i - 1]);
}

const std::size_t kCubicL2Distance = 2;
const std::size_t kCubicL2PyramidBarrier = 4;

}  // namespace

TEST(Canonicalize, stabilizers_map_to_zero_and_keys_are_coset_invariant) {
    std::mt19937_64 rng(50);
    for (const std::string name : {"cubic1", "toric2d", "toric3d"}) {
        auto code = make_code(name, 3);
        for (GeneratorId id = 0; id < code.num_generators(); id += 3)
            EXPECT_TRUE(canonicalize(code, code.generator(id)).is_identity());
        for (int trial = 0; trial < 20; ++trial) {
            auto e = random_pauli(rng, code.num_qubits(), 0.2);
            auto g = code.generator(static_cast<GeneratorId>(rng() % code.num_generators()));
            EXPECT_EQ(canonicalize(code, e), canonicalize(code, e * g));
        }
    }
}

TEST(Canonicalize, homologous_toric_strings_share_a_key) {
    auto code = make_code("toric2d", 3);
    auto a = toric_row_string(code, 0);
    auto b = toric_row_string(code, 1);
    ASSERT_TRUE(syndrome_of(code, a).empty());
    EXPECT_TRUE(gf2_in_span(code.stabilizer_matrix(), (a * b).symplectic()));
    EXPECT_EQ(canonicalize(code, a), canonicalize(code, b));
    EXPECT_FALSE(canonicalize(code, a).is_identity());
}

TEST(Canonicalize, homomorphism_and_key_equality_match_span_membership) {
    std::mt19937_64 rng(51);
    for (const std::string name : {"cubic1", "toric2d"}) {
        auto code = make_code(name, 2);
        auto stabilizer_product = [&](std::size_t count) {
            PauliOperator g = code.identity();
            for (std::size_t i = 0; i < count; ++i) g *= code.generator(static_cast<GeneratorId>(rng() % code.num_generators()));
            return g;
        };
        for (int trial = 0; trial < 1000; ++trial) {
            auto e = random_pauli(rng, code.num_qubits(), 0.3);
            // Half the pairs share a coset by construction.
            auto f = trial % 2 ? e * stabilizer_product(1 + rng() % 4) : random_pauli(rng, code.num_qubits(), 0.3);
            const CosetKey ke = canonicalize(code, e), kf = canonicalize(code, f);
            ASSERT_EQ(canonicalize(code, e * f).bits, ke.bits ^ kf.bits);
            ASSERT_EQ(ke == kf, gf2_in_span(code.stabilizer_matrix(), (e * f).symplectic()));
        }
    }
}

TEST(MinBarrierLogical, identity_needs_no_energy) {
    auto code = make_code("toric2d", 3);
    auto r = min_barrier_logical(code, code.identity());
    EXPECT_EQ(r.outcome, SearchOutcome::kFound);
    EXPECT_EQ(r.omega, 0u);
    EXPECT_TRUE(r.witness.empty());
    auto stab = min_barrier_logical(code, code.generator(4));
    EXPECT_EQ(stab.omega, 0u);
}

TEST(MinBarrierLogical, repetition_all_x) {
    auto code = make_code("rep1d", 4);
    PauliOperator all_x = code.identity();
    for (std::size_t q = 0; q < 4; ++q) all_x.apply(q, 'X');
    auto r = min_barrier_logical(code, all_x);
    EXPECT_EQ(r.omega, 2u);
    EXPECT_EQ(r.ruled_out, 1u);
    expect_valid_witness(code, r);
    EXPECT_EQ(canonicalize(code, path_product(code, r.witness)), canonicalize(code, all_x));
}

TEST(MinBarrierLogical, toric_string) {
    auto code = make_code("toric2d", 3);
    auto target = toric_row_string(code, 0);
    auto r = min_barrier_logical(code, target);
    EXPECT_EQ(r.omega, 2u);
    expect_valid_witness(code, r);
    EXPECT_EQ(canonicalize(code, path_product(code, r.witness)), canonicalize(code, target));
    // Same result from the same input.
    EXPECT_EQ(min_barrier_logical(code, target).witness, r.witness);
}

TEST(MinBarrierLogical, rejects_charged_targets_and_oversized_instances) {
    auto code = make_code("cubic1", 4);
    EXPECT_THROW(min_barrier_logical(code, code.on_site({1, 1, 1}, "XI")), std::invalid_argument);
    EXPECT_THROW(min_barrier_logical(code, code.identity()), std::invalid_argument);
}

TEST(MinBarrierLogical, ceiling_and_budget_outcomes) {
    auto code = make_code("toric2d", 3);
    auto target = toric_row_string(code, 0);
    SearchBudget low;
    low.omega_max = 1;
    auto r = min_barrier_logical(code, target, low);
    EXPECT_EQ(r.outcome, SearchOutcome::kNoPath);
    EXPECT_EQ(r.ruled_out, 1u);
    EXPECT_FALSE(r.omega);

    SearchBudget tiny;
    tiny.max_states = 50;
    auto t = min_barrier_logical(code, target, tiny);
    EXPECT_EQ(t.outcome, SearchOutcome::kBudgetExhausted);
    EXPECT_FALSE(t.omega);

    // With bit flips only, a phase logical is out of reach at every ceiling.
    auto rep = make_code("rep1d", 4);
    auto z = rep.identity();
    z.apply(0, 'Z');
    auto none = min_barrier_logical(rep, z);
    EXPECT_EQ(none.outcome, SearchOutcome::kNoPath);
}

TEST(MinBarrierCluster, examples) {
    auto toric = make_code("toric2d", 3);
    auto empty = min_barrier_cluster(toric, Syndrome{});
    EXPECT_EQ(empty.omega, 0u);

    auto pair = min_barrier_cluster(toric, plaquettes(toric, {{0, 0, 0}, {1, 0, 0}}));
    EXPECT_EQ(pair.omega, 2u);
    EXPECT_EQ(pair.witness.size(), 1u);
    expect_valid_witness(toric, pair);

    auto cubic = make_code("cubic1", 2);
    auto s = syndrome_of(cubic, cubic.on_site({1, 0, 1}, "XI"));
    ASSERT_EQ(s.size(), 4u);
    auto r = min_barrier_cluster(cubic, s);
    EXPECT_EQ(r.omega, 4u);
    EXPECT_EQ(r.witness.size(), 1u);
    expect_valid_witness(cubic, r);
    EXPECT_EQ(energy_profile(cubic, r.witness).final_syndrome, s);
}

TEST(MinBarrier, agrees_with_minimax_oracle_on_small_codes) {
    {
        auto code = make_code("toric2d", 3);
        MinimaxOracle oracle(code);
        std::mt19937_64 rng(52);
        for (int trial = 0; trial < 12; ++trial) {
            // Random centralizer element: product of row/column strings and stabilizers.
            PauliOperator e = code.identity();
            for (int i = 0; i < 4; ++i) e *= code.generator(static_cast<GeneratorId>(rng() % code.num_generators()));
            if (rng() & 1) e *= toric_row_string(code, static_cast<int>(rng() % 3));
            if (rng() & 1) {
                PauliOperator col = code.identity();
                toric_move_y(code, col, static_cast<int>(rng() % 3), 0, 3);
                e *= col;
            }
            const std::uint32_t target = oracle.key(e);
            auto expected = oracle.minimax([&](std::uint32_t k, std::uint64_t) { return k == target; });
            auto r = min_barrier_logical(code, e);
            ASSERT_EQ(r.omega, expected);
        }
        for (int trial = 0; trial < 8; ++trial) {
            Syndrome s = syndrome_of(code, random_pauli(rng, code.num_qubits(), 0.15));
            std::uint64_t mask = 0;
            for (GeneratorId id : s) mask |= std::uint64_t{1} << id;
            auto expected = oracle.minimax([&](std::uint32_t, std::uint64_t syn) { return syn == mask; });
            ASSERT_EQ(min_barrier_cluster(code, s).omega, expected);
        }
    }
    {
        auto code = make_code("rep1d", 6);
        MinimaxOracle oracle(code);
        PauliOperator all_x = code.identity();
        for (std::size_t q = 0; q < 6; ++q) all_x.apply(q, 'X');
        const std::uint32_t target = oracle.key(all_x);
        auto expected = oracle.minimax([&](std::uint32_t k, std::uint64_t) { return k == target; });
        EXPECT_EQ(expected, 2u);
        EXPECT_EQ(min_barrier_logical(code, all_x).omega, expected);
    }
}

TEST(MinBarrier, cubic_pyramid_class_at_l2) {
    auto code = make_code("cubic1", 2);
    MinimaxOracle oracle(code);
    EXPECT_EQ(oracle.reachable(), std::size_t{1} << 22);
    for (const Coord& u : {Coord{0, 0, 0}, Coord{1, 0, 1}}) {
        auto e = pyramid_operator(code, 1, u);
        ASSERT_TRUE(syndrome_of(code, e).empty());
        auto constructed = energy_profile(code, pyramid_path(code, 1, u)).barrier;
        EXPECT_LE(constructed, 8u);
        auto r = min_barrier_logical(code, e);
        expect_valid_witness(code, r);
        const std::uint32_t target = oracle.key(e);
        EXPECT_EQ(r.omega, oracle.minimax([&](std::uint32_t k, std::uint64_t) { return k == target; }));
        EXPECT_LE(*r.omega, constructed);
        EXPECT_EQ(r.omega, kCubicL2PyramidBarrier);
    }
}

TEST(CodeDistance, fixtures) {
    auto rep = code_distance(make_code("rep1d", 5));
    EXPECT_EQ(rep.distance, 5u);
    EXPECT_EQ(rep.method, "enumeration");

    auto toric = make_code("toric2d", 3);
    auto d = code_distance(toric);
    EXPECT_EQ(d.distance, 3u);
    EXPECT_EQ(d.states_visited, std::size_t{1} << 20);
    ASSERT_TRUE(d.witness);
    EXPECT_EQ(d.witness->weight(), 3u);
    EXPECT_TRUE(syndrome_of(toric, *d.witness).empty());
    EXPECT_FALSE(is_stabilizer(toric, *d.witness));

    auto cubic = code_distance(make_code("cubic1", 2));
    EXPECT_EQ(cubic.distance, kCubicL2Distance);
}

TEST(CodeDistance, weight_search_matches_enumeration) {
    for (const auto& [name, L] : std::vector<std::pair<std::string, int>>{{"rep1d", 5}, {"toric2d", 3}, {"toric3d", 2}, {"cubic1", 2}}) {
        auto code = make_code(name, L);
        auto full = code_distance(code);
        DistanceBudget budget;
        budget.max_weight = code.num_qubits();
        auto searched = code_distance(code, budget);
        EXPECT_EQ(searched.method, "weight-search");
        EXPECT_EQ(searched.distance, full.distance) << name;
    }
}

TEST(CodeDistance, budget_reports_bounds) {
    auto code = make_code("toric2d", 4);
    DistanceBudget budget;
    budget.max_states = 200;
    auto r = code_distance(code, budget);
    EXPECT_TRUE(r.budget_exhausted);
    EXPECT_FALSE(r.distance);
    EXPECT_GE(r.lower_bound, 2u);
    ASSERT_TRUE(r.upper_bound);
    EXPECT_GE(*r.upper_bound, 4u);
}

TEST(CentralizerBasis, counts_and_membership) {
    for (const auto& [name, L] : std::vector<std::pair<std::string, int>>{{"toric2d", 3}, {"cubic1", 2}, {"cubic1", 3}}) {
        auto code = make_code(name, L);
        auto basis = centralizer_basis(code);
        auto report = check_frustration_free(code);
        ASSERT_TRUE(report.logical_qubits);
        EXPECT_EQ(basis.logicals.size(), 2 * *report.logical_qubits) << name;
        for (const auto& e : basis.logicals) EXPECT_FALSE(is_stabilizer(code, e));
        for (const auto& e : basis.stabilizers) EXPECT_TRUE(is_stabilizer(code, e));
    }
}
