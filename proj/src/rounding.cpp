#include "ccc/rounding.hpp"

#include <algorithm>
#include <cmath>

namespace ccc {

RoundingFunctions RoundingFunctions::greedy() {
    RoundingFunctions f;
    f.f_plus = [](double) { return 0.0; };
    f.f_minus = [](double) { return 1.0; };
    f.f_circ = [](double) { return 1.0; };
    return f;
}

ChromaticClustering round_cluster_based(const EdgeColoring& phi, const ClusterDistribution& dist,
                                        RngStream& rng) {
    if (dist.n != phi.n() || dist.num_colors != phi.num_colors()) {
        throw InputError("distribution shape mismatch");
    }
    auto violations = validate_distribution(dist);
    if (!violations.empty()) {
        throw InputError("infeasible distribution: " + violations.front());
    }

    std::vector<double> cumulative(dist.entries.size());
    double total = 0.0;
    for (size_t i = 0; i < dist.entries.size(); ++i) {
        total += dist.entries[i].z;
        cumulative[i] = total;
    }

    std::uint32_t remaining = (1u << dist.n) - 1;
    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    while (remaining != 0) {
        double r = rng.next_double() * total;
        size_t idx = std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin();
        if (idx >= dist.entries.size()) idx = dist.entries.size() - 1;
        const auto& entry = dist.entries[idx];
        std::uint32_t hit = entry.mask & remaining;
        if (hit == 0) continue;  // rejected draw, resample
        std::vector<int> block;
        for (int v = 0; v < dist.n; ++v) {
            if (hit >> v & 1u) block.push_back(v);
        }
        blocks.push_back(std::move(block));
        colors.push_back(entry.color);
        remaining &= ~entry.mask;
    }
    return ChromaticClustering(phi.n(), phi.num_colors(), std::move(blocks), std::move(colors));
}

ChromaticClustering round_pivot_based(const EdgeColoring& phi, const StandardSolution& sol,
                                      const RoundingFunctions& f, RngStream& rng) {
    const int n = phi.n();
    const int L = phi.num_colors();
    if (sol.n != n || sol.num_colors != L) throw InputError("solution shape mismatch");
    if (check_feasibility(sol, phi, RelaxationKind::kStandard).max_violation() > 1e-6) {
        throw InputError("infeasible standard solution");
    }

    // Stage 1: strict-majority color classes; the budget constraint makes
    // them disjoint. Unassigned vertices end as singletons of color 0.
    std::vector<std::vector<int>> v_class(L);
    std::vector<char> assigned(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int c = 0; c < L; ++c) {
            if (sol.x_vertex[u][c] < 0.5) {
                v_class[c].push_back(u);
                assigned[u] = 1;
                break;  // at most one color can pass the strict test
            }
        }
    }

    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    for (int u = 0; u < n; ++u) {
        if (!assigned[u]) {
            blocks.push_back({u});
            colors.push_back(0);
        }
    }

    // Stage 2: color-wise pivot rounds.
    for (int c = 0; c < L; ++c) {
        std::vector<int>& pool = v_class[c];
        while (!pool.empty()) {
            size_t pick = rng.uniform_index(pool.size());
            int pivot = pool[pick];
            std::vector<int> block = {pivot};
            for (int v : pool) {
                if (v == pivot) continue;
                double x = sol.x_edge[pair_index(n, pivot, v)][c];
                ColorLabel col = phi.color(pivot, v);
                double p;
                if (col.is_gamma()) {
                    p = f.f_minus(x);
                } else if (col.index() == c) {
                    p = f.f_plus(x);
                } else {
                    p = f.f_circ(x);
                }
                p = std::clamp(p, 0.0, 1.0);
                if (rng.bernoulli(1.0 - p)) block.push_back(v);
            }
            std::vector<int> rest;
            rest.reserve(pool.size() - block.size());
            for (int v : pool) {
                if (std::find(block.begin(), block.end(), v) == block.end()) rest.push_back(v);
            }
            pool = std::move(rest);
            blocks.push_back(std::move(block));
            colors.push_back(c);
        }
    }
    return ChromaticClustering(n, L, std::move(blocks), std::move(colors));
}

ChromaticClustering round_mixed(const EdgeColoring& phi, const ClusterDistribution& dist,
                                double alpha, const RoundingFunctions& f, RngStream& rng) {
    if (!(alpha >= 1.5 && alpha <= 2.0)) throw InputError("alpha must lie in [1.5, 2]");
    if (rng.bernoulli(alpha / 2.0)) {
        return round_cluster_based(phi, dist, rng);
    }
    return round_pivot_based(phi, induced_standard(dist), f, rng);
}

CostEstimate estimate_expected_cost(const EdgeColoring& phi, const ClusterDistribution& dist,
                                    double alpha, const RoundingFunctions& f, int trials,
                                    std::uint64_t seed) {
    if (trials < 1) throw InputError("trials must be >= 1");
    RngStream root(seed);
    double sum = 0.0, sum_sq = 0.0;
    std::int64_t best_cost = -1;
    std::optional<ChromaticClustering> best;
    for (int t = 0; t < trials; ++t) {
        RngStream stream = root.substream(static_cast<std::uint64_t>(t));
        ChromaticClustering clustering = round_mixed(phi, dist, alpha, f, stream);
        std::int64_t c = cost(phi, clustering);
        sum += static_cast<double>(c);
        sum_sq += static_cast<double>(c) * static_cast<double>(c);
        if (best_cost < 0 || c < best_cost) {
            best_cost = c;
            best = std::move(clustering);
        }
    }
    CostEstimate estimate{sum / trials, std::nullopt, best_cost, std::move(*best)};
    if (trials > 1) {
        double variance = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
        estimate.stderr_ = std::sqrt(variance / trials);
    }
    return estimate;
}

}  // namespace ccc
