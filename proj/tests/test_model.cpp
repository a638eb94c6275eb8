#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"
#include "test_util.hpp"

using namespace ccc;

TEST_CASE("color label sentinels and order") {
    CHECK(ColorLabel::gamma() != ColorLabel::zero());
    CHECK(ColorLabel::positive(0) != ColorLabel::gamma());
    CHECK(ColorLabel::positive(0) != ColorLabel::zero());
    CHECK(ColorLabel::positive(3).index() == 3);
    CHECK_THROWS_AS(ColorLabel::gamma().index(), InputError);

    // zero <= c <= gamma, positive labels incomparable
    CHECK(leq(ColorLabel::zero(), ColorLabel::positive(1)));
    CHECK(leq(ColorLabel::positive(1), ColorLabel::gamma()));
    CHECK(leq(ColorLabel::zero(), ColorLabel::gamma()));
    CHECK(leq(ColorLabel::positive(2), ColorLabel::positive(2)));
    CHECK_FALSE(leq(ColorLabel::positive(0), ColorLabel::positive(1)));
    CHECK_FALSE(leq(ColorLabel::gamma(), ColorLabel::positive(1)));
    CHECK_FALSE(leq(ColorLabel::positive(1), ColorLabel::zero()));
}

TEST_CASE("edge coloring stores only positive pairs") {
    EdgeColoring phi = testing::t1();
    CHECK(phi.color(0, 1) == ColorLabel::positive(0));
    CHECK(phi.color(1, 0) == ColorLabel::positive(0));
    CHECK(phi.color(0, 2).is_gamma());
    CHECK(phi.num_positive_pairs() == 2);
    CHECK_THROWS_AS(phi.color(0, 0), InputError);
    CHECK_THROWS_AS(phi.color(0, 3), InputError);
    EdgeColoring bad(2, 1);
    CHECK_THROWS_AS(bad.set_color(0, 0, 0), InputError);
    CHECK_THROWS_AS(bad.set_color(0, 1, 1), InputError);
}

TEST_CASE("cost examples") {
    EdgeColoring phi = testing::t1();
    ChromaticClustering whole(3, 2, {{0, 1, 2}}, {0});
    CHECK(cost(phi, whole) == 1);  // only the internal gamma pair 0-2

    CHECK(cost(phi, singletons(3, 2)) == 2);  // both positive pairs cut

    EdgeColoring planted = testing::perfect4();
    ChromaticClustering match(4, 2, {{0, 1}, {2, 3}}, {0, 1});
    CHECK(cost(planted, match) == 0);

    ChromaticClustering wrong_color(4, 2, {{0, 1}, {2, 3}}, {1, 1});
    CHECK(cost(planted, wrong_color) == 1);  // pair 0-1 internally mismatched

    ChromaticClustering mismatched_n(3, 2, {{0, 1, 2}}, {0});
    CHECK_THROWS_AS(cost(planted, mismatched_n), InputError);
}

TEST_CASE("binary view") {
    ChromaticClustering cl(4, 3, {{0, 1}, {2}, {3}}, {2, 0, 0});
    CHECK(cl.binary_view(1, 1) == ColorLabel::zero());
    CHECK(cl.binary_view(0, 1) == ColorLabel::positive(2));
    CHECK(cl.binary_view(0, 2).is_gamma());
    CHECK_THROWS_AS(cl.binary_view(0, 4), InputError);
}

TEST_CASE("binary view satisfies the pair-function conditions") {
    RngStream rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform_index(6));
        ChromaticClustering cl = testing::random_clustering(n, 3, rng);
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                ColorLabel uv = cl.binary_view(u, v);
                CHECK((uv == ColorLabel::zero()) == (u == v));
                if (!uv.is_positive()) continue;
                for (int w = 0; w < n; ++w) {
                    if (w == u || w == v) continue;
                    ColorLabel uw = cl.binary_view(u, w);
                    ColorLabel vw = cl.binary_view(v, w);
                    CHECK(uw == vw);
                    CHECK((uw == uv || uw.is_gamma()));
                }
            }
        }
    }
}

TEST_CASE("d0 examples") {
    EdgeColoring phi = testing::t1();
    VertexRow f = row_of(phi, 0);
    CHECK(d0(f, f) == 0);

    // constant-gamma vs constant-0 rows over 5 vertices, same owner
    VertexRow g{2, std::vector<ColorLabel>(5, ColorLabel::gamma())};
    VertexRow h{2, std::vector<ColorLabel>(5, ColorLabel::positive(0))};
    g.values[2] = ColorLabel::zero();
    h.values[2] = ColorLabel::zero();
    CHECK(d0(g, h) == 4);

    VertexRow short_row{0, std::vector<ColorLabel>(3, ColorLabel::gamma())};
    CHECK_THROWS_AS(d0(g, short_row), InputError);
}

TEST_CASE("d0_K weights") {
    VertexRow g{0, std::vector<ColorLabel>(5, ColorLabel::gamma())};
    VertexRow h{0, std::vector<ColorLabel>(5, ColorLabel::positive(0))};
    g.values[0] = h.values[0] = ColorLabel::zero();
    // disagreements at 1,2,3,4
    CHECK(d0_K(g, h, {0, 1, 2, 3, 4}) == d0(g, h));  // K = V
    CHECK(d0_K(g, h, {}) == 2 * d0(g, h));           // K = empty
    // single disagreement outside K counts twice
    VertexRow p = g, q = g;
    q.values[3] = ColorLabel::positive(1);
    CHECK(d0_K(p, q, {0, 1}) == 2);
    CHECK_THROWS_AS(d0_K(p, q, {7}), InputError);
}

TEST_CASE("objective identity: cost equals half the row disagreement sum") {
    // exhaustive over all clusterings at small n, randomized larger
    RngStream rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        EdgeColoring phi = testing::random_coloring(7, 3, 0.5, rng);
        for (int k = 0; k < 40; ++k) {
            ChromaticClustering cl = testing::random_clustering(7, 3, rng);
            CHECK(cost(phi, cl) == cost_via_binary(phi, cl));
        }
    }
    EdgeColoring phi = testing::t1();
    CHECK(cost_via_binary(phi, ChromaticClustering(3, 2, {{0, 1, 2}}, {0})) == 1);
    CHECK(cost_via_binary(phi, singletons(3, 2)) == 2);
    EdgeColoring planted = testing::perfect4();
    CHECK(cost_via_binary(planted, ChromaticClustering(4, 2, {{0, 1}, {2, 3}}, {0, 1})) == 0);
}

TEST_CASE("objective difference localized to K") {
    // differences confined to pairs touching K obey
    // obj(a) - obj(b) = 1/2 sum_{u in K} (d0_K difference)
    RngStream rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + static_cast<int>(rng.uniform_index(4));
        EdgeColoring phi = testing::random_coloring(n, 2, 0.4, rng);
        ChromaticClustering base = testing::random_clustering(n, 2, rng);

        // carve a random K out of base into its own block
        std::vector<int> K;
        for (int v = 0; v < n; ++v) {
            if (rng.next_double() < 0.4) K.push_back(v);
        }
        if (K.empty() || static_cast<int>(K.size()) == n) continue;
        std::vector<char> in_k(n, 0);
        for (int v : K) in_k[v] = 1;
        std::vector<std::vector<int>> blocks;
        std::vector<int> colors;
        for (int b = 0; b < base.num_blocks(); ++b) {
            std::vector<int> rest;
            for (int v : base.blocks()[b]) {
                if (!in_k[v]) rest.push_back(v);
            }
            if (!rest.empty()) {
                blocks.push_back(rest);
                colors.push_back(base.block_colors()[b]);
            }
        }
        blocks.push_back(K);
        colors.push_back(static_cast<int>(rng.uniform_index(2)));
        ChromaticClustering moved(n, 2, std::move(blocks), std::move(colors));

        std::int64_t lhs = 2 * (cost(phi, base) - cost(phi, moved));
        std::int64_t rhs = 0;
        for (int u : K) {
            rhs += d0_K(row_of(phi, u), row_of(base, u), K);
            rhs -= d0_K(row_of(phi, u), row_of(moved, u), K);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("d0 difference identity") {
    // d0(f,g) - d0(f,h) = |{g != f = h}| - |{g = f != h}|
    RngStream rng(41);
    auto random_row = [&](int n) {
        VertexRow row{0, {}};
        for (int v = 0; v < n; ++v) {
            int pick = static_cast<int>(rng.uniform_index(4));
            row.values.push_back(pick == 3 ? ColorLabel::gamma() : ColorLabel::positive(pick));
        }
        return row;
    };
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng.uniform_index(8));
        VertexRow f = random_row(n), g = random_row(n), h = random_row(n);
        int first = 0, second = 0;
        for (int v = 0; v < n; ++v) {
            if (g.values[v] != f.values[v] && f.values[v] == h.values[v]) ++first;
            if (g.values[v] == f.values[v] && f.values[v] != h.values[v]) ++second;
        }
        CHECK(d0(f, g) - d0(f, h) == first - second);
    }
}

TEST_CASE("validate finds partition violations") {
    CHECK(validate(ChromaticClustering(3, 2, {{0, 1}, {2}}, {0, 1}), 3).empty());

    auto overlapping = validate_parts(3, 2, {{0, 1}, {1, 2}}, {0, 0});
    bool found_overlap = false;
    for (const auto& v : overlapping) found_overlap |= v.find("not disjoint") != std::string::npos;
    CHECK(found_overlap);

    auto missing = validate_parts(3, 2, {{0, 1}}, {0});
    bool found_missing = false;
    for (const auto& v : missing) found_missing |= v.find("not covering") != std::string::npos;
    CHECK(found_missing);

    CHECK_FALSE(validate_parts(2, 1, {{0, 1}}, {1}).empty());  // color out of range
    CHECK_THROWS_AS(ChromaticClustering(3, 2, {{0, 1}}, {0}), InputError);
}
