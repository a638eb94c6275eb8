#pragma once

#include <vector>

#include "ccc/coloring.hpp"
#include "ccc/generator.hpp"
#include "ccc/rng.hpp"

namespace ccc::testing {

// Path triangle: phi(01) = 0, phi(12) = 0, phi(02) = gamma over L = 2.
// OPT = 1 with three optimal clusterings.
inline EdgeColoring t1() {
    EdgeColoring phi(3, 2);
    phi.set_color(0, 1, 0);
    phi.set_color(1, 2, 0);
    return phi;
}

// Zero-noise planted instance: {0,1} color 0, {2,3} color 1, cross gamma.
inline EdgeColoring perfect4() {
    PlantedModel model;
    model.n = 4;
    model.num_colors = 2;
    model.cluster_sizes = {2, 2};
    return generate(model);
}

inline PlantedModel random_model(RngStream& rng, int n_lo, int n_hi, int l_lo, int l_hi) {
    PlantedModel model;
    model.n = n_lo + static_cast<int>(rng.uniform_index(n_hi - n_lo + 1));
    model.num_colors = l_lo + static_cast<int>(rng.uniform_index(l_hi - l_lo + 1));
    int left = model.n;
    while (left > 0) {
        int size = 1 + static_cast<int>(rng.uniform_index(std::min(left, 4)));
        model.cluster_sizes.push_back(size);
        left -= size;
    }
    model.noise_in = 0.4 * rng.next_double();
    model.noise_out = 0.3 * rng.next_double();
    model.seed = rng.next_u64();
    return model;
}

// Uniformly random coloring: every pair gamma with probability p_gamma,
// otherwise a uniform color.
inline EdgeColoring random_coloring(int n, int num_colors, double p_gamma, RngStream& rng) {
    EdgeColoring phi(n, num_colors);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_double() >= p_gamma) {
                phi.set_color(u, v, static_cast<int>(rng.uniform_index(num_colors)));
            }
        }
    }
    return phi;
}

// Random clustering over a random partition with random block colors.
inline ChromaticClustering random_clustering(int n, int num_colors, RngStream& rng) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    for (int v = 0; v < n; ++v) {
        if (!blocks.empty() && rng.next_double() < 0.7) {
            blocks[rng.uniform_index(blocks.size())].push_back(v);
        } else {
            blocks.push_back({v});
            colors.push_back(0);
        }
    }
    for (auto& c : colors) c = static_cast<int>(rng.uniform_index(num_colors));
    return ChromaticClustering(n, num_colors, std::move(blocks), std::move(colors));
}

}  // namespace ccc::testing
