#pragma once

#include <cstdint>
#include <vector>

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"

namespace ccc {

// Planted-instance model. With zero noise the planted clustering has cost 0:
// intra-cluster pairs carry the cluster color, cross pairs are gamma.
// noise_in flips an intra pair away from its cluster color (half to gamma,
// half to a uniform other color when one exists); noise_out recolors a cross
// pair to a uniform color.
struct PlantedModel {
    int n = 0;
    int num_colors = 1;
    std::vector<int> cluster_sizes;
    double noise_in = 0.0;
    double noise_out = 0.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws InputError
};

EdgeColoring generate(const PlantedModel& model);

// The clustering the model plants (cluster i gets color i mod L).
ChromaticClustering planted_clustering(const PlantedModel& model);

}  // namespace ccc
