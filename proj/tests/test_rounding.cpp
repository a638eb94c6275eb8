#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ccc/exact.hpp"
#include "ccc/rounding.hpp"
#include "test_util.hpp"

using namespace ccc;

namespace {

// three binomial standard errors around probability p at `trials` draws
double three_se(double p, int trials) {
    return 3.0 * std::sqrt(std::max(1e-12, p * (1.0 - p) / trials));
}

}  // namespace

TEST_CASE("integral distribution rounds to its own blocks") {
    EdgeColoring phi = testing::perfect4();
    ClusterDistribution dist{4, 2, {{0b0011u, 0, 1.0}, {0b1100u, 1, 1.0}}};
    ChromaticClustering expected(4, 2, {{0, 1}, {2, 3}}, {0, 1});
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RngStream rng(seed);
        CHECK(round_cluster_based(phi, dist, rng) == expected);
    }
}

TEST_CASE("singleton-only distribution rounds to singletons") {
    EdgeColoring phi = testing::t1();
    ClusterDistribution dist{3, 2, {{0b001u, 0, 1.0}, {0b010u, 1, 1.0}, {0b100u, 0, 1.0}}};
    RngStream rng(9);
    ChromaticClustering out = round_cluster_based(phi, dist, rng);
    CHECK(out.num_blocks() == 3);
    CHECK(validate(out, 3).empty());
}

TEST_CASE("cluster rounding rejects infeasible distributions before sampling") {
    EdgeColoring phi = testing::t1();
    ClusterDistribution bad{3, 2, {{0b001u, 0, 0.4}, {0b010u, 0, 1.0}, {0b100u, 0, 1.0}}};
    RngStream rng(1);
    CHECK_THROWS_AS(round_cluster_based(phi, bad, rng), InputError);
}

TEST_CASE("cluster rounding pair statistics match the closed forms") {
    // co-clustering probability s/(2-s) and per-color complement on the
    // path triangle's cluster-LP optimum
    EdgeColoring phi = testing::t1();
    ClusterDistribution dist = solve_cluster(phi).distribution;
    EdgeAggregates agg = aggregate_edges(dist);

    const int trials = 10000;
    const int n = 3, L = 2;
    std::vector<int> co(3, 0);
    std::vector<std::vector<int>> co_color(3, std::vector<int>(L, 0));
    RngStream root(424242);
    for (int t = 0; t < trials; ++t) {
        RngStream stream = root.substream(t);
        ChromaticClustering cl = round_cluster_based(phi, dist, stream);
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                int pi = pair_index(n, u, v);
                if (cl.co_clustered(u, v)) {
                    ++co[pi];
                    ++co_color[pi][cl.block_colors()[cl.block_of(u)]];
                }
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            double s = agg.total_co_mass[pi];
            double p_co = s / (2.0 - s);
            double emp = static_cast<double>(co[pi]) / trials;
            CHECK(std::abs(emp - p_co) <= three_se(p_co, trials));
            for (int c = 0; c < L; ++c) {
                double p_not_c = 1.0 - agg.same_color_mass[pi][c] / (2.0 - s);
                double emp_not_c = 1.0 - static_cast<double>(co_color[pi][c]) / trials;
                CHECK(std::abs(emp_not_c - p_not_c) <= three_se(p_not_c, trials));
            }
        }
    }
}

TEST_CASE("pivot rounding: no strict-majority color means all singletons") {
    EdgeColoring phi = testing::perfect4();
    StandardSolution sol;
    sol.n = 4;
    sol.num_colors = 2;
    sol.x_vertex.assign(4, {0.5, 0.5});
    sol.x_edge.assign(6, {0.5, 0.5});
    RngStream rng(2);
    ChromaticClustering out = round_pivot_based(phi, sol, RoundingFunctions::greedy(), rng);
    CHECK(out.num_blocks() == 4);
    for (int c : out.block_colors()) CHECK(c == 0);
}

TEST_CASE("pivot rounding recovers the planted clustering from the integral optimum") {
    EdgeColoring phi = testing::perfect4();
    StandardSolution sol = induced_standard(solve_cluster(phi).distribution);
    ChromaticClustering expected(4, 2, {{0, 1}, {2, 3}}, {0, 1});
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RngStream rng(seed);
        CHECK(round_pivot_based(phi, sol, RoundingFunctions::greedy(), rng) == expected);
    }
}

TEST_CASE("strict-majority classes are disjoint for feasible solutions") {
    RngStream rng(7777);
    for (int trial = 0; trial < 20; ++trial) {
        PlantedModel model = testing::random_model(rng, 4, 7, 1, 3);
        EdgeColoring phi = generate(model);
        StandardSolution sol = solve_standard(phi, true).solution;
        for (int u = 0; u < phi.n(); ++u) {
            int strict = 0;
            for (int c = 0; c < phi.num_colors(); ++c) {
                if (sol.x_vertex[u][c] < 0.5) ++strict;
            }
            CHECK(strict <= 1);  // the color budget forbids two
        }
    }
}

TEST_CASE("greedy blocks join only same-color neighbors of their pivot") {
    RngStream rng(8888);
    for (int trial = 0; trial < 25; ++trial) {
        EdgeColoring phi = testing::random_coloring(7, 2, 0.5, rng);
        StandardSolution sol = induced_standard(solve_cluster(phi).distribution);
        RngStream run(trial);
        ChromaticClustering out = round_pivot_based(phi, sol, RoundingFunctions::greedy(), run);
        CHECK(validate(out, 7).empty());
        for (int b = 0; b < out.num_blocks(); ++b) {
            const auto& block = out.blocks()[b];
            if (block.size() < 2) continue;
            int c = out.block_colors()[b];
            // some member must see every other member through color c
            bool has_pivot = false;
            for (int p : block) {
                bool ok = true;
                for (int v : block) {
                    if (v != p && phi.color(p, v) != ColorLabel::positive(c)) ok = false;
                }
                has_pivot |= ok;
            }
            CHECK(has_pivot);
        }
    }
}

TEST_CASE("mixed rounding branches with probability alpha/2") {
    EdgeColoring phi(2, 2);
    phi.set_color(0, 1, 0);
    // distinguishable branches: the pivot stage always separates (both
    // x_u^c = 1/2), the cluster stage co-clusters with probability 1/3
    ClusterDistribution dist{2, 2, {{0b01u, 1, 0.5}, {0b10u, 1, 0.5}, {0b11u, 0, 0.5}}};
    CHECK(validate_distribution(dist).empty());

    const double alpha = 18.0 / 11.0;
    CHECK_THROWS_AS(
        [&] {
            RngStream rng(0);
            round_mixed(phi, dist, 1.2, RoundingFunctions::greedy(), rng);
        }(),
        InputError);

    const int trials = 10000;
    int co = 0;
    int branch_draws = 0;
    RngStream root(5555);
    for (int t = 0; t < trials; ++t) {
        RngStream stream = root.substream(t);
        RngStream replica = root.substream(t);
        if (replica.bernoulli(alpha / 2.0)) ++branch_draws;  // replays the branch coin
        ChromaticClustering out =
            round_mixed(phi, dist, alpha, RoundingFunctions::greedy(), stream);
        if (out.co_clustered(0, 1)) ++co;
    }
    double branch_emp = static_cast<double>(branch_draws) / trials;
    CHECK(std::abs(branch_emp - 9.0 / 11.0) <= three_se(9.0 / 11.0, trials));
    // co-clustering happens only on the cluster branch: (alpha/2) * 1/3
    double p_co = (alpha / 2.0) / 3.0;
    double emp_co = static_cast<double>(co) / trials;
    CHECK(std::abs(emp_co - p_co) <= three_se(p_co, trials));
}

TEST_CASE("alpha = 2 always takes the cluster branch") {
    EdgeColoring phi = testing::perfect4();
    // a solution whose pivot branch would differ: make vertex classes empty
    ClusterDistribution dist = solve_cluster(phi).distribution;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RngStream a(seed), b(seed);
        ChromaticClustering mixed = round_mixed(phi, dist, 2.0, RoundingFunctions::greedy(), a);
        b.bernoulli(1.0);  // consume the branch coin the same way
        ChromaticClustering cluster = round_cluster_based(phi, dist, b);
        CHECK(mixed == cluster);
    }
}

TEST_CASE("expected-cost estimation") {
    EdgeColoring planted = testing::perfect4();
    ClusterDistribution dist = solve_cluster(planted).distribution;
    RoundingFunctions greedy = RoundingFunctions::greedy();

    CostEstimate perfect = estimate_expected_cost(planted, dist, 18.0 / 11.0, greedy, 64, 5);
    CHECK(perfect.mean == 0.0);
    CHECK(*perfect.stderr_ == 0.0);
    CHECK(perfect.best_cost == 0);

    CostEstimate single = estimate_expected_cost(planted, dist, 18.0 / 11.0, greedy, 1, 5);
    CHECK_FALSE(single.stderr_.has_value());

    CHECK_THROWS_AS(estimate_expected_cost(planted, dist, 18.0 / 11.0, greedy, 0, 5), InputError);

    EdgeColoring phi = testing::t1();
    ClusterLpResult cluster = solve_cluster(phi);
    CostEstimate t1 = estimate_expected_cost(phi, cluster.distribution, 18.0 / 11.0, greedy, 2000, 5);
    double bound = 18.0 / 11.0 * cluster.value + 3.0 * t1.stderr_.value_or(0.0);
    CHECK(t1.mean <= bound);
    CHECK(validate(t1.best, 3).empty());
}

TEST_CASE("cluster-based rounding alone stays within twice the LP value") {
    RngStream rng(171);
    for (int trial = 0; trial < 10; ++trial) {
        PlantedModel model = testing::random_model(rng, 4, 7, 1, 2);
        EdgeColoring phi = generate(model);
        ClusterLpResult cluster = solve_cluster(phi);
        const int trials = 800;
        double sum = 0.0, sum_sq = 0.0;
        RngStream root(trial);
        for (int t = 0; t < trials; ++t) {
            RngStream stream = root.substream(t);
            double c = static_cast<double>(cost(phi, round_cluster_based(phi, cluster.distribution, stream)));
            sum += c;
            sum_sq += c * c;
        }
        double mean = sum / trials;
        double se = std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1)) / trials);
        CHECK(mean <= 2.0 * cluster.value + 3.0 * se + 1e-9);
    }
}

TEST_CASE("rounding outputs always validate") {
    RngStream rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        EdgeColoring phi = testing::random_coloring(6, 3, 0.5, rng);
        ClusterDistribution dist = solve_cluster(phi).distribution;
        StandardSolution sol = induced_standard(dist);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            RngStream a(seed), b(seed), c(seed);
            CHECK(validate(round_cluster_based(phi, dist, a), 6).empty());
            CHECK(validate(round_pivot_based(phi, sol, RoundingFunctions::greedy(), b), 6).empty());
            CHECK(validate(round_mixed(phi, dist, 1.7, RoundingFunctions::greedy(), c), 6).empty());
        }
    }
}
