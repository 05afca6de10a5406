#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "stabland/rg.hpp"
#include "test_support.hpp"

using namespace stabland;
using namespace stabland::testing;

namespace {

ScaleParams with_alpha(double alpha) {
    ScaleParams p;
    p.alpha = alpha;
    return p;
}

// Checks nesting, the defect-count bound and the product identity on every level.
void expect_consistent(const CodeInstance& code, const SyndromeHistory& h, const LevelAnalysis& a) {
    ASSERT_EQ(a.levels.size(), static_cast<std::size_t>(a.p_max) + 1);
    EXPECT_EQ(a.levels[0].retained.size(), h.syndromes.size());
    EXPECT_LE(a.levels.back().retained.size(), 2u);
    for (std::size_t p = 0; p < a.levels.size(); ++p) {
        const auto& level = a.levels[p];
        for (std::size_t i = 1; i + 1 < level.retained.size(); ++i) {
            const std::size_t t = level.retained[i];
            if (p > 0) {
                ASSERT_GE(h.syndromes[t].size(), p + 1);
            }
            if (a.dense_run[t] >= 0) {
                ASSERT_GE(h.syndromes[t].size(), static_cast<std::size_t>(a.dense_run[t]) + 2);
            }
        }
        if (p + 1 == a.levels.size()) break;
        const auto& upper = a.levels[p + 1];
        ASSERT_TRUE(std::includes(level.retained.begin(), level.retained.end(), upper.retained.begin(), upper.retained.end()));
        std::size_t j = 0;
        for (std::size_t i = 0; i + 1 < upper.retained.size(); ++i) {
            while (level.retained[j] != upper.retained[i]) ++j;
            PauliOperator product = code.identity();
            for (; level.retained[j] != upper.retained[i + 1]; ++j) product *= level_error(code, h, level, j);
            ASSERT_EQ(product, level_error(code, h, upper, i));
        }
    }
}

}  // namespace

TEST(SyndromeHistory, examples) {
    auto code = make_code("cubic1", 8);
    auto empty = syndrome_history(code, ErrorPath{});
    ASSERT_EQ(empty.syndromes.size(), 1u);
    EXPECT_TRUE(empty.syndromes[0].empty());

    const std::size_t q = code.geometry().qubit_index({{4, 4, 4}, 0});
    auto twice = syndrome_history(code, ErrorPath{{q, 'X'}, {q, 'X'}});
    ASSERT_EQ(twice.syndromes.size(), 3u);
    EXPECT_EQ(twice.syndromes[1], pyramid_defects(code, {3, 3, 3}, 1));
    EXPECT_TRUE(twice.syndromes[2].empty());
    EXPECT_EQ(twice.max_defects, 4u);

    auto pyramid = syndrome_history(code, pyramid_path(code, 2, {1, 1, 1}));
    EXPECT_LE(pyramid.max_defects, 12u);
    EXPECT_EQ(pyramid.syndromes.back(), pyramid_syndrome(code, 2, {1, 1, 1}));
}

TEST(LevelHistories, single_cube_and_adjacent_pair) {
    auto cubic = make_code("cubic1", 8);
    SyndromeHistory single;
    single.path = {{0, 'X'}, {0, 'X'}};
    single.syndromes = {Syndrome{}, Syndrome::from_sorted({cubic.generator_id({2, 2, 2}, 1)}), Syndrome{}};
    auto a = level_histories(cubic, single, ScaleParams{});
    EXPECT_EQ(a.p_max, 1);
    ASSERT_EQ(a.levels.size(), 2u);
    EXPECT_EQ(a.levels[1].retained, (std::vector<std::size_t>{0, 2}));

    auto rep = make_code("rep1d", 8);
    auto pair = syndrome_history(rep, ErrorPath{{3, 'X'}, {3, 'X'}});
    ASSERT_EQ(pair.syndromes[1].size(), 2u);
    auto b = level_histories(rep, pair, ScaleParams{});
    EXPECT_EQ(b.p_max, 2);
    EXPECT_EQ(b.levels[1].retained, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(b.levels[2].retained, (std::vector<std::size_t>{0, 2}));
    expect_consistent(rep, pair, b);
}

TEST(LevelHistories, empty_path_flag) {
    auto code = make_code("cubic1", 4);
    auto a = level_histories(code, syndrome_history(code, ErrorPath{}), ScaleParams{});
    EXPECT_TRUE(a.empty_path);
    EXPECT_EQ(a.p_max, 0);
    ASSERT_EQ(a.levels.size(), 1u);
    EXPECT_EQ(a.levels[0].retained, std::vector<std::size_t>{0});
}

TEST(LevelHistories, pyramid_paths_are_consistent) {
    for (double alpha : {1.0, 15.0}) {
        for (int n = 2; n <= 5; ++n) {
            auto code = make_code("cubic1", 1 << n);
            auto h = syndrome_history(code, pyramid_path(code, n, {0, 0, 0}));
            ASSERT_TRUE(h.syndromes.back().empty());
            auto a = level_histories(code, h, with_alpha(alpha));
            expect_consistent(code, h, a);
            EXPECT_GE(a.p_max, 1);
        }
    }
}

TEST(LevelHistories, random_vacuum_to_vacuum_paths) {
    std::mt19937_64 rng(60);
    for (int trial = 0; trial < 120; ++trial) {
        const std::string name = trial % 3 == 0 ? "toric2d" : (trial % 3 == 1 ? "cubic1" : "rep1d");
        auto code = make_code(name, 8);
        ErrorPath path;
        const int len = 2 + static_cast<int>(rng() % 12);
        const std::string& alphabet = code.error_alphabet();
        // Local walk: errors near a moving site, then undone in reverse.
        Coord c = random_coord(rng, code.geometry());
        for (int i = 0; i < len; ++i) {
            for (int a = 0; a < code.geometry().dim(); ++a) c[a] += static_cast<int>(rng() % 3) - 1;
            const int sub = static_cast<int>(rng() % static_cast<unsigned>(code.geometry().qubits_per_site()));
            path.push_back({code.geometry().qubit_index({code.geometry().wrap(c), sub}), alphabet[rng() % alphabet.size()]});
        }
        for (int i = len - 1; i >= 0; --i) path.push_back(path[static_cast<std::size_t>(i)]);
        auto h = syndrome_history(code, path);
        ASSERT_TRUE(h.syndromes.back().empty());
        const double alpha = std::vector<double>{1.0, 2.0, 15.0}[rng() % 3];
        expect_consistent(code, h, level_histories(code, h, with_alpha(alpha)));
    }
}

TEST(WorldLines, static_syndrome_is_constant) {
    auto code = make_code("toric2d", 24);
    SyndromeHistory h;
    h.syndromes = {plaquettes(code, {{0, 0, 0}, {12, 12, 0}})};
    auto r = track_charged_clusters(code, h, 0, 0, 0, with_alpha(1));
    ASSERT_EQ(r.lines.size(), 2u);
    EXPECT_TRUE(r.charge_count_constant);
    EXPECT_TRUE(r.locking_violations.empty());
    EXPECT_TRUE(r.continuity_breaks.empty());
}

TEST(WorldLines, toric_transport_breaks_locking) {
    auto code = make_code("toric2d", 24);
    PauliOperator e = code.identity();
    // Pair at x = 0 and x = 11, then move the right defect to x = 12 and 8 rows up.
    toric_move_x(code, e, 0, 0, 11);
    ErrorPath path;
    const auto& g = code.geometry();
    path.push_back({g.qubit_index({{12, 0, 0}, 1}), 'X'});
    for (int y = 1; y <= 8; ++y) path.push_back({g.qubit_index({{12, y, 0}, 0}), 'X'});
    auto h = syndrome_history(code, path, syndrome_of(code, e));
    ASSERT_EQ(h.syndromes.front().size(), 2u);
    auto r = track_charged_clusters(code, h, 0, h.steps(), 0, with_alpha(1));
    EXPECT_TRUE(r.charge_count_constant);
    EXPECT_EQ(r.charged_count.front(), 2u);
    ASSERT_EQ(r.lines.size(), 2u);
    EXPECT_TRUE(r.continuity_breaks.empty());
    EXPECT_TRUE(r.ambiguous.empty());
    EXPECT_FALSE(r.locking_violations.empty());
    int drift = std::max(r.lines[0].max_drift, r.lines[1].max_drift);
    EXPECT_EQ(drift, 8);
}

TEST(WorldLines, cubic_low_weight_paths_stay_locked) {
    std::mt19937_64 rng(61);
    auto code = make_code("cubic1", 8);
    const auto params = with_alpha(1);
    for (int trial = 0; trial < 20; ++trial) {
        Coord c = random_coord(rng, code.geometry());
        ErrorPath path;
        for (int i = 0; i < 6; ++i) {
            Coord d = c;
            for (int a = 0; a < 3; ++a) d[a] += static_cast<int>(rng() % 2);
            path.push_back({code.geometry().qubit_index({code.geometry().wrap(d), static_cast<int>(rng() % 2)}), "XYZ"[rng() % 3]});
        }
        auto h = syndrome_history(code, path);
        auto r = track_charged_clusters(code, h, 0, h.steps(), 1, params);
        EXPECT_TRUE(r.locking_violations.empty());
    }
}

TEST(WorldLines, rejects_dense_segments) {
    auto code = make_code("toric2d", 8);
    SyndromeHistory h;
    h.syndromes = {plaquettes(code, {{0, 0, 0}, {1, 0, 0}})};
    EXPECT_THROW(track_charged_clusters(code, h, 0, 0, 0, ScaleParams{}), std::invalid_argument);
    EXPECT_THROW(track_charged_clusters(code, h, 0, 1, 0, ScaleParams{}), std::invalid_argument);
}

TEST(BoxCounting, known_sets) {
    const int L = 32;
    std::vector<Coord> solid, plane, line;
    for (int x = 0; x < L; ++x) {
        line.push_back({x, 5, 7});
        for (int y = 0; y < L; ++y) {
            plane.push_back({x, y, 9});
            for (int z = 0; z < L; ++z) solid.push_back({x, y, z});
        }
    }
    const std::vector<int> scales{1, 2, 4, 8};
    EXPECT_NEAR(box_counting_dimension(solid, 3, scales).dimension, 3.0, 0.05);
    EXPECT_NEAR(box_counting_dimension(plane, 3, scales).dimension, 2.0, 0.05);
    EXPECT_NEAR(box_counting_dimension(line, 3, scales).dimension, 1.0, 0.05);
    auto r = box_counting_dimension(solid, 3, scales, 9);
    EXPECT_EQ(r.anchor_estimates.size(), static_cast<std::size_t>(kAnchorShifts));
    EXPECT_EQ(r.counts, (std::vector<std::size_t>{32768, 4096, 512, 64}));
    // Shifted grids cut boundary boxes, so the estimates drift below 3.
    for (double d : r.anchor_estimates) EXPECT_NEAR(d, 3.0, 0.5);
    EXPECT_GT(r.anchor_spread, 0.0);
}

TEST(BoxCounting, pyramid_supports_are_two_dimensional) {
    for (int p = 4; p <= 6; ++p) {
        auto code = make_code("cubic1", 1 << p);
        auto e = pyramid_operator(code, p, {0, 0, 0});
        std::vector<int> scales;
        for (int s = 1; s < (1 << p); s *= 2) scales.push_back(s);
        auto r = box_counting_dimension(code.geometry(), e.support(), scales, 3);
        EXPECT_NEAR(r.dimension, 2.0, 0.1) << p;
        EXPECT_EQ(r.counts.front(), std::size_t{1} << (2 * p));
    }
}

TEST(BoxCounting, degenerate_and_invalid_inputs) {
    std::vector<Coord> point{{3, 3, 3}};
    auto r = box_counting_dimension(point, 3, std::vector<int>{1, 2, 4});
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.dimension, 0.0);
    EXPECT_THROW(box_counting_dimension(point, 3, std::vector<int>{1, 2}), std::invalid_argument);
    EXPECT_THROW(box_counting_dimension(std::vector<Coord>{}, 3, std::vector<int>{1, 2, 4}), std::invalid_argument);
    EXPECT_THROW(box_counting_dimension(point, 3, std::vector<int>{1, 2, 2}), std::invalid_argument);

    std::stringstream out;
    write_box_counts_csv(out, r);
    EXPECT_EQ(out.str(), "scale,count\n1,1\n2,1\n4,1\n");
    std::stringstream empty;
    write_box_counts_csv(empty, BoxCount{});
    EXPECT_EQ(empty.str(), "scale,count\n");
}

TEST(SupportConnectivity, examples) {
    auto code = make_code("cubic1", 16);
    const auto& g = code.geometry();
    std::vector<Coord> support{{0, 0, 0}, {1, 1, 0}, {2, 2, 1}, {8, 8, 8}};
    auto same = support_connectivity(g, support, std::vector<Coord>{{1, 1, 0}}, std::vector<Coord>{{1, 1, 0}});
    ASSERT_TRUE(same);
    EXPECT_EQ(same->size(), 1u);
    auto linked = support_connectivity(g, support, std::vector<Coord>{{0, 0, 0}}, std::vector<Coord>{{2, 2, 1}});
    ASSERT_TRUE(linked);
    EXPECT_EQ(linked->size(), 3u);
    EXPECT_FALSE(support_connectivity(g, support, std::vector<Coord>{{0, 0, 0}}, std::vector<Coord>{{8, 8, 8}}));
    EXPECT_THROW(support_connectivity(g, support, std::vector<Coord>{{5, 0, 0}}, std::vector<Coord>{{8, 8, 8}}),
                 std::invalid_argument);
    // Wraps around the torus.
    std::vector<Coord> wrap{{15, 0, 0}, {0, 0, 0}};
    auto w = support_connectivity(g, wrap, std::vector<Coord>{{15, 0, 0}}, std::vector<Coord>{{0, 0, 0}});
    ASSERT_TRUE(w);
    EXPECT_EQ(w->size(), 2u);
}

TEST(SupportConnectivity, pyramid_base_reaches_far_corner) {
    for (int p = 1; p <= 4; ++p) {
        auto code = make_code("cubic1", 2 << p);
        const Coord u{3, 3, 3};
        auto sites = support_sites(code, pyramid_operator(code, p, u));
        ASSERT_EQ(sites.size(), std::size_t{1} << (2 * p));
        const int far = (1 << p) - 1;
        auto path = support_connectivity(code.geometry(), sites, std::vector<Coord>{u},
                                         std::vector<Coord>{{u[0] + far, u[1], u[2]}});
        ASSERT_TRUE(path) << p;
        EXPECT_GE(path->size() - 1, static_cast<std::size_t>(far));
        for (std::size_t i = 1; i < path->size(); ++i) EXPECT_EQ(code.geometry().distance((*path)[i - 1], (*path)[i]), 1);
    }
}
