#pragma once

#include <functional>
#include <optional>

#include "ccc/clustering.hpp"
#include "ccc/relaxations.hpp"
#include "ccc/rng.hpp"

namespace ccc {

// Per-sign rejection probabilities for the pivot stage, each mapping an LP
// edge value in [0,1] to [0,1]. The greedy default joins every same-color
// neighbor and nobody else.
struct RoundingFunctions {
    std::function<double(double)> f_plus;   // phi(uv) = pivot color
    std::function<double(double)> f_minus;  // phi(uv) = gamma
    std::function<double(double)> f_circ;   // phi(uv) = other color

    static RoundingFunctions greedy();
};

// Cluster-based rounding: repeatedly sample (c, S) proportional to z_S^c and
// carve V' ∩ S off as a block of color c. Validates the distribution first.
ChromaticClustering round_cluster_based(const EdgeColoring& phi, const ClusterDistribution& dist,
                                        RngStream& rng);

// Pivot-based rounding: stage 1 buckets u into V_c iff x_u^c < 1/2 (strict,
// leftovers become singletons of color 0); stage 2 runs the pivot loop per
// color in ascending order with rejection probabilities from `f` applied to
// the color-c edge values.
ChromaticClustering round_pivot_based(const EdgeColoring& phi, const StandardSolution& sol,
                                      const RoundingFunctions& f, RngStream& rng);

// With probability alpha/2 cluster-based, otherwise pivot-based on the
// induced standard solution. alpha must lie in [1.5, 2].
ChromaticClustering round_mixed(const EdgeColoring& phi, const ClusterDistribution& dist,
                                double alpha, const RoundingFunctions& f, RngStream& rng);

struct CostEstimate {
    double mean = 0.0;
    std::optional<double> stderr_;  // absent for a single trial
    std::int64_t best_cost = 0;
    ChromaticClustering best;
};

// Sample mean and standard error of cost over independent round_mixed runs;
// trial i uses substream(seed, i), so results are reproducible per seed.
CostEstimate estimate_expected_cost(const EdgeColoring& phi, const ClusterDistribution& dist,
                                    double alpha, const RoundingFunctions& f, int trials,
                                    std::uint64_t seed);

}  // namespace ccc
