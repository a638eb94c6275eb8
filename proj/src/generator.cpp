#include "ccc/generator.hpp"

#include <numeric>

#include "ccc/rng.hpp"

namespace ccc {

void PlantedModel::validate() const {
    if (n < 1) throw InputError("n must be >= 1");
    if (num_colors < 1) throw InputError("L must be >= 1");
    if (cluster_sizes.empty()) throw InputError("cluster_sizes must be nonempty");
    int total = 0;
    for (int s : cluster_sizes) {
        if (s < 1) throw InputError("cluster sizes must be >= 1");
        total += s;
    }
    if (total != n) throw InputError("cluster sizes must sum to n");
    if (!(noise_in >= 0.0 && noise_in <= 1.0)) throw InputError("noise_in out of [0, 1]");
    if (!(noise_out >= 0.0 && noise_out <= 1.0)) throw InputError("noise_out out of [0, 1]");
}

ChromaticClustering planted_clustering(const PlantedModel& model) {
    model.validate();
    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    int next = 0;
    for (size_t i = 0; i < model.cluster_sizes.size(); ++i) {
        std::vector<int> block(model.cluster_sizes[i]);
        std::iota(block.begin(), block.end(), next);
        next += model.cluster_sizes[i];
        blocks.push_back(std::move(block));
        colors.push_back(static_cast<int>(i) % model.num_colors);
    }
    return ChromaticClustering(model.n, model.num_colors, std::move(blocks), std::move(colors));
}

EdgeColoring generate(const PlantedModel& model) {
    model.validate();
    ChromaticClustering planted = planted_clustering(model);
    RngStream rng(model.seed);
    EdgeColoring phi(model.n, model.num_colors);
    const int L = model.num_colors;
    for (int u = 0; u < model.n; ++u) {
        for (int v = u + 1; v < model.n; ++v) {
            if (planted.co_clustered(u, v)) {
                int color = planted.block_colors()[planted.block_of(u)];
                if (rng.next_double() < model.noise_in) {
                    // deviation: half gamma, half a uniform different color
                    // (all gamma when no other color exists)
                    if (L == 1 || rng.next_double() < 0.5) continue;
                    int other = static_cast<int>(rng.uniform_index(L - 1));
                    if (other >= color) ++other;
                    phi.set_color(u, v, other);
                } else {
                    phi.set_color(u, v, color);
                }
            } else {
                if (rng.next_double() < model.noise_out) {
                    phi.set_color(u, v, static_cast<int>(rng.uniform_index(L)));
                }
            }
        }
    }
    return phi;
}

}  // namespace ccc
