#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>

#include "stabland/code.hpp"

using namespace stabland;

namespace {

CodeInstance cubic(int L) { return CodeInstance::build(builtin_code_spec("cubic1"), L); }

PauliOperator random_pauli(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q)
        if (coin(rng)) p.apply(q, "XYZ"[rng() % 3]);
    return p;
}

Coord random_coord(std::mt19937_64& rng, const LatticeGeometry& g) {
    Coord c{};
    for (int a = 0; a < g.dim(); ++a) c[a] = static_cast<int>(rng() % static_cast<unsigned>(g.size()));
    return c;
}

// {c, c+x, c+y, c+z} with c = u - (1,1,1), all Z-species.
Syndrome pyramid_pattern(const CodeInstance& code, const Coord& u) {
    const auto& g = code.geometry();
    Coord c = g.sub(u, {1, 1, 1});
    std::vector<Defect> defects;
    for (Coord shift : {Coord{0, 0, 0}, Coord{1, 0, 0}, Coord{0, 1, 0}, Coord{0, 0, 1}})
        defects.push_back({g.add(c, shift), 1});
    return code.syndrome_from_defects(defects);
}

}  // namespace

TEST(CodeSpec, shipped_files_match_the_registry) {
    for (const std::string& name : builtin_code_names()) {
        auto path = std::filesystem::path(STABLAND_SPEC_DIR) / (name + ".json");
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        EXPECT_EQ(load_code_spec(path), builtin_code_spec(name));
        EXPECT_EQ(parse_code_spec(to_json_text(builtin_code_spec(name))), builtin_code_spec(name));
    }
    EXPECT_EQ(builtin_code_names(), (std::vector<std::string>{"cubic1", "rep1d", "toric2d", "toric3d"}));
}

TEST(CodeSpec, malformed_specs_are_rejected) {
    EXPECT_THROW(builtin_code_spec("nope"), std::invalid_argument);
    EXPECT_THROW(parse_code_spec("{"), std::invalid_argument);
    EXPECT_THROW(parse_code_spec(R"({"name":"a","D":1,"q":1,"species":[{"offsets":[[2]],"labels":["Z"]}]})"),
                 std::invalid_argument);
    EXPECT_THROW(parse_code_spec(R"({"name":"a","D":1,"q":1,"species":[{"offsets":[[0]],"labels":["ZZ"]}]})"),
                 std::invalid_argument);
    EXPECT_THROW(parse_code_spec(R"({"name":"a","D":1,"q":1,"species":[{"offsets":[[0]],"labels":["Q"]}]})"),
                 std::invalid_argument);
    EXPECT_THROW(
        parse_code_spec(R"({"name":"a","D":1,"q":1,"errors":"W","species":[{"offsets":[[0]],"labels":["Z"]}]})"),
        std::invalid_argument);
}

TEST(BuildCode, sizes_of_shipped_codes) {
    auto c4 = cubic(4);
    EXPECT_EQ(c4.num_qubits(), 128u);
    EXPECT_EQ(c4.num_generators(), 128u);

    auto rep = CodeInstance::build(builtin_code_spec("rep1d"), 5);
    EXPECT_EQ(rep.num_qubits(), 5u);
    ASSERT_EQ(rep.num_generators(), 5u);
    for (GeneratorId g = 0; g < 5; ++g) {
        PauliOperator zz(5);
        zz.apply(g, 'Z');
        zz.apply((g + 1) % 5, 'Z');
        EXPECT_EQ(rep.generator(g), zz);
    }

    auto toric = CodeInstance::build(builtin_code_spec("toric2d"), 3);
    EXPECT_EQ(toric.num_qubits(), 18u);
    EXPECT_EQ(toric.num_generators(), 18u);
    for (GeneratorId g = 0; g < toric.num_generators(); ++g) EXPECT_EQ(toric.generator(g).weight(), 4u);
}

TEST(BuildCode, rejects_small_lattices) {
    EXPECT_THROW(cubic(1), std::invalid_argument);
}

TEST(FrustrationFree, cubic_code_all_small_sizes) {
    for (int L = 2; L <= 8; ++L) {
        auto report = check_frustration_free(cubic(L));
        EXPECT_TRUE(report.commuting) << L;
        EXPECT_EQ(report.method, "exhaustive");
    }
}

TEST(FrustrationFree, overlap_method_on_larger_lattices) {
    auto report = check_frustration_free(cubic(12));
    EXPECT_TRUE(report.commuting);
    EXPECT_EQ(report.method, "overlap");
}

TEST(FrustrationFree, logical_qubit_counts) {
    // Ranks frozen from an independent dense elimination over the same templates.
    const std::pair<int, std::size_t> cubic_k[] = {{2, 6}, {3, 2}, {4, 14}};
    for (auto [L, k] : cubic_k) EXPECT_EQ(check_frustration_free(cubic(L)).logical_qubits, k) << L;
    auto toric = check_frustration_free(CodeInstance::build(builtin_code_spec("toric2d"), 3));
    EXPECT_EQ(toric.logical_qubits, 2u);
    auto toric3 = check_frustration_free(CodeInstance::build(builtin_code_spec("toric3d"), 3));
    EXPECT_EQ(toric3.logical_qubits, 3u);
    auto rep = check_frustration_free(CodeInstance::build(builtin_code_spec("rep1d"), 5));
    EXPECT_EQ(rep.logical_qubits, 1u);
}

TEST(FrustrationFree, corrupted_corner_label_is_caught) {
    CodeSpec bad = builtin_code_spec("cubic1");
    bad.species[1].terms[1].label = "XI";  // one ZI corner flipped
    EXPECT_THROW(CodeInstance::build(bad, 3), NonCommutingSpec);
    auto code = CodeInstance::build(bad, 3, Verification::kSkip);
    auto report = check_frustration_free(code);
    ASSERT_FALSE(report.commuting);
    ASSERT_TRUE(report.witness.has_value());
    auto [a, b] = *report.witness;
    EXPECT_FALSE(commutes(code.generator(a), code.generator(b)));

    auto big = CodeInstance::build(bad, 12, Verification::kSkip);
    auto big_report = check_frustration_free(big);
    ASSERT_FALSE(big_report.commuting);
    EXPECT_FALSE(commutes(big.generator(big_report.witness->first), big.generator(big_report.witness->second)));
}

TEST(SyndromeOf, identity_and_generators_are_silent) {
    for (const std::string& name : builtin_code_names()) {
        auto code = CodeInstance::build(builtin_code_spec(name), 3);
        EXPECT_TRUE(syndrome_of(code, code.identity()).empty());
        for (GeneratorId g = 0; g < code.num_generators(); ++g) ASSERT_TRUE(syndrome_of(code, code.generator(g)).empty());
    }
}

TEST(SyndromeOf, xi_creates_the_four_cube_pyramid) {
    std::mt19937_64 rng(20);
    for (int L : {4, 8}) {
        auto code = cubic(L);
        for (int trial = 0; trial < 100; ++trial) {
            Coord u = random_coord(rng, code.geometry());
            Syndrome s = syndrome_of(code, code.on_site(u, "XI"));
            ASSERT_EQ(s.size(), 4u);
            ASSERT_EQ(s, pyramid_pattern(code, u));
        }
    }
}

TEST(SyndromeOf, single_qubit_patterns_are_translation_invariant_and_nonempty) {
    auto code = cubic(5);
    const auto& g = code.geometry();
    for (int sub = 0; sub < 2; ++sub) {
        for (char label : {'X', 'Y', 'Z'}) {
            Syndrome base = syndrome_of(code, code.single({{0, 0, 0}, sub}, label));
            ASSERT_FALSE(base.empty());
            for (const Coord& site : g.all_coords()) {
                Syndrome here = syndrome_of(code, code.single({site, sub}, label));
                ASSERT_EQ(here, translate_syndrome(code, base, site));
            }
        }
    }
}

TEST(SyndromeOf, linear_and_equal_to_dense_route) {
    std::mt19937_64 rng(21);
    for (const std::string& name : builtin_code_names()) {
        auto code = CodeInstance::build(builtin_code_spec(name), name == "rep1d" ? 9 : 3);
        for (int trial = 0; trial < 1000; ++trial) {
            auto e = random_pauli(rng, code.num_qubits(), 0.2), f = random_pauli(rng, code.num_qubits(), 0.2);
            Syndrome se = syndrome_of(code, e);
            ASSERT_EQ(syndrome_of(code, e * f), se ^ syndrome_of(code, f));
            ASSERT_EQ(se, syndrome_of_dense(code, e));
        }
    }
}

TEST(SyndromeOf, defect_means_anticommuting_generator) {
    std::mt19937_64 rng(22);
    auto code = cubic(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto e = random_pauli(rng, code.num_qubits(), 0.1);
        Syndrome s = syndrome_of(code, e);
        for (GeneratorId g = 0; g < code.num_generators(); ++g) ASSERT_EQ(s.contains(g), !commutes(e, code.generator(g)));
    }
}

TEST(TranslateOperator, trivial_shifts) {
    std::mt19937_64 rng(23);
    auto code = cubic(4);
    auto e = random_pauli(rng, code.num_qubits(), 0.1);
    EXPECT_EQ(translate_operator(code, e, {0, 0, 0}), e);
    EXPECT_EQ(translate_operator(code, e, {4, 0, 0}), e);
    EXPECT_EQ(translate_operator(code, e, {-4, 8, 4}), e);
}

TEST(TranslateOperator, syndromes_are_covariant) {
    std::mt19937_64 rng(24);
    for (const std::string& name : builtin_code_names()) {
        auto code = CodeInstance::build(builtin_code_spec(name), 4);
        for (int trial = 0; trial < 100; ++trial) {
            Coord u = random_coord(rng, code.geometry()), v = random_coord(rng, code.geometry());
            auto e = code.single({u, static_cast<int>(rng() % code.geometry().qubits_per_site())},
                                 code.error_alphabet()[rng() % code.error_alphabet().size()]);
            ASSERT_EQ(syndrome_of(code, translate_operator(code, e, v)),
                      translate_syndrome(code, syndrome_of(code, e), v));
        }
    }
}

TEST(Lattice, torus_metric_and_spans) {
    LatticeGeometry g(3, 8, 2);
    EXPECT_EQ(g.distance({0, 0, 0}, {7, 0, 0}), 1);
    EXPECT_EQ(g.distance({0, 0, 0}, {4, 3, 5}), 4);
    Coord a{0, 0, 0}, b{1, 0, 0};
    std::vector<Coord> single{a}, pair{a, b};
    EXPECT_EQ(g.cube_diameter(single), 1);
    EXPECT_EQ(g.cube_diameter(pair), 2);
    std::vector<Coord> wrapped{{7, 0, 0}, {0, 0, 0}, {1, 0, 0}};
    AxisSpan span = g.covering_span(wrapped, 0);
    EXPECT_EQ(span.start, 7);
    EXPECT_EQ(span.length, 3);
    EXPECT_EQ(g.neighbourhood(single, 1).size(), 27u);

    std::set<QubitIndex> seen;
    for (std::size_t q = 0; q < g.num_qubits(); ++q) {
        QubitIndex idx = g.qubit(q);
        ASSERT_EQ(g.qubit_index(idx), q);
        seen.insert(idx);
    }
    EXPECT_EQ(seen.size(), g.num_qubits());
}
