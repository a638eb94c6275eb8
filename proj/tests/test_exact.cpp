#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ccc/exact.hpp"
#include "test_util.hpp"

using namespace ccc;

TEST_CASE("partition iterator enumerates Bell(n) partitions exactly once") {
    const std::int64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
    for (int n = 1; n <= 9; ++n) {
        std::set<std::vector<int>> seen;
        std::int64_t count = 0;
        for (PartitionIterator it(n); it.valid(); it.next()) {
            ++count;
            CHECK(seen.insert(it.rgs()).second);  // no repeats
            // restricted growth: a[0] = 0, a[i] <= max(prefix) + 1
            const auto& rgs = it.rgs();
            CHECK(rgs[0] == 0);
            int prefix = 0;
            for (int i = 1; i < n; ++i) {
                CHECK(rgs[i] <= prefix + 1);
                prefix = std::max(prefix, rgs[i]);
            }
        }
        CHECK(count == bell[n]);
    }
}

TEST_CASE("best coloring per block") {
    EdgeColoring phi(3, 2);
    phi.set_color(0, 1, 0);
    phi.set_color(1, 2, 0);
    // block {0,1,2} internal colors {0, 0, gamma} -> majority 0
    ChromaticClustering cl = best_coloring({{0, 1, 2}}, phi);
    CHECK(cl.block_colors()[0] == 0);

    EdgeColoring tie(2, 2);
    tie.set_color(0, 1, 1);
    // single internal pair of color 1 -> color 1; but a {0},{1} split gives
    // singletons colored 0 by convention
    CHECK(best_coloring({{0, 1}}, tie).block_colors()[0] == 1);
    ChromaticClustering split = best_coloring({{0}, {1}}, tie);
    CHECK(split.block_colors() == std::vector<int>{0, 0});

    // genuine tie: one pair of each color inside the block -> lowest wins
    EdgeColoring mixed(3, 2);
    mixed.set_color(0, 1, 0);
    mixed.set_color(1, 2, 1);
    CHECK(best_coloring({{0, 1, 2}}, mixed).block_colors()[0] == 0);
}

TEST_CASE("optimal cost on the named instances") {
    ExactResult perfect = optimal_cost(testing::perfect4());
    CHECK(perfect.opt == 0);
    CHECK(perfect.witness == ChromaticClustering(4, 2, {{0, 1}, {2, 3}}, {0, 1}));

    ExactResult t1 = optimal_cost(testing::t1());
    CHECK(t1.opt == 1);
    CHECK(cost(testing::t1(), t1.witness) == 1);

    EdgeColoring single(1, 2);
    ExactResult trivial = optimal_cost(single);
    CHECK(trivial.opt == 0);
    CHECK(trivial.witness.num_blocks() == 1);

    // phi total: the only pair of an empty edge set is gamma, so
    // co-clustering costs 1 and the singleton split is the unique optimum
    EdgeColoring empty(2, 1);
    ExactResult split = optimal_cost(empty);
    CHECK(split.opt == 0);
    CHECK(split.witness == singletons(2, 1));
    CHECK(all_optimal(empty).size() == 1);
}

TEST_CASE("size cap") {
    EdgeColoring big(12, 1);
    CHECK_THROWS_AS(optimal_cost(big), SizeError);
    CHECK_THROWS_AS(all_optimal(big), SizeError);
    CHECK_NOTHROW(optimal_cost(big, 12));
}

TEST_CASE("all optimal clusterings of the path triangle") {
    EdgeColoring phi = testing::t1();
    auto optima = all_optimal(phi);
    REQUIRE(optima.size() == 3);
    std::set<std::string> keys;
    for (const auto& cl : optima) {
        CHECK(cost(phi, cl) == 1);
        std::string key;
        for (int b = 0; b < cl.num_blocks(); ++b) {
            key += '[';
            for (int v : cl.blocks()[b]) key += static_cast<char>('0' + v);
            key += ':';
            key += static_cast<char>('0' + cl.block_colors()[b]);
            key += ']';
        }
        keys.insert(key);
    }
    // {0,1,2} colored 0; {0,1} colored 0 + singleton; {1,2} colored 0 + singleton
    CHECK(keys == std::set<std::string>{"[012:0]", "[01:0][2:0]", "[0:0][12:0]"});
}

TEST_CASE("all_optimal members attain OPT and include the witness") {
    RngStream rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        EdgeColoring phi = testing::random_coloring(
            4 + static_cast<int>(rng.uniform_index(4)), 2, 0.5, rng);
        ExactResult exact = optimal_cost(phi);
        auto optima = all_optimal(phi);
        CHECK(!optima.empty());
        bool contains_witness = false;
        for (const auto& cl : optima) {
            CHECK(cost(phi, cl) == exact.opt);
            contains_witness |= cl == exact.witness;
        }
        CHECK(contains_witness);
    }
}

TEST_CASE("oracle lower-bounds every clustering") {
    RngStream rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        EdgeColoring phi = testing::random_coloring(6, 3, 0.5, rng);
        std::int64_t opt = optimal_cost(phi).opt;
        for (int k = 0; k < 25; ++k) {
            CHECK(opt <= cost(phi, testing::random_clustering(6, 3, rng)));
        }
    }
}

TEST_CASE("single edge relabel moves OPT by at most one") {
    RngStream rng(314);
    for (int trial = 0; trial < 25; ++trial) {
        EdgeColoring phi = testing::random_coloring(6, 2, 0.4, rng);
        if (phi.num_positive_pairs() == 0) continue;
        std::int64_t before = optimal_cost(phi).opt;
        // delete one positive edge (turn it gamma)
        auto it = phi.colored_pairs().begin();
        std::advance(it, rng.uniform_index(phi.colored_pairs().size()));
        EdgeColoring deleted(6, 2);
        for (const auto& [pair, c] : phi.colored_pairs()) {
            if (pair != it->first) deleted.set_color(pair.first, pair.second, c);
        }
        std::int64_t after = optimal_cost(deleted).opt;
        CHECK(std::abs(after - before) <= 1);
    }
}
