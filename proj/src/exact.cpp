#include "ccc/exact.hpp"

#include <algorithm>
#include <limits>

namespace ccc {

PartitionIterator::PartitionIterator(int n) : n_(n), valid_(n >= 1), max_(0) {
    if (n < 1) throw InputError("partition enumeration needs n >= 1");
    rgs_.assign(n, 0);
    prefix_max_.assign(n, 0);
}

void PartitionIterator::next() {
    // Successor in restricted-growth order: bump the rightmost symbol that
    // may still grow, zero the suffix.
    for (int i = n_ - 1; i >= 1; --i) {
        if (rgs_[i] <= prefix_max_[i - 1]) {
            ++rgs_[i];
            prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
            for (int j = i + 1; j < n_; ++j) {
                rgs_[j] = 0;
                prefix_max_[j] = prefix_max_[i];
            }
            max_ = prefix_max_[n_ - 1];
            return;
        }
    }
    valid_ = false;
}

std::vector<std::vector<int>> PartitionIterator::blocks() const {
    std::vector<std::vector<int>> result(num_blocks());
    for (int v = 0; v < n_; ++v) result[rgs_[v]].push_back(v);
    return result;
}

namespace {

// Per-block counts of internal positive colors; returns (counts, internal
// positive total) with counts[b * L + c].
std::vector<int> block_color_counts(const std::vector<int>& block_of, int num_blocks,
                                    const EdgeColoring& phi, int* internal_positive) {
    std::vector<int> counts(static_cast<size_t>(num_blocks) * phi.num_colors(), 0);
    int internal = 0;
    for (const auto& [pair, c] : phi.colored_pairs()) {
        int bu = block_of[pair.first];
        if (bu == block_of[pair.second]) {
            ++counts[static_cast<size_t>(bu) * phi.num_colors() + c];
            ++internal;
        }
    }
    if (internal_positive != nullptr) *internal_positive = internal;
    return counts;
}

}  // namespace

ChromaticClustering best_coloring(const std::vector<std::vector<int>>& partition,
                                  const EdgeColoring& phi) {
    const int L = phi.num_colors();
    std::vector<int> block_of(phi.n(), -1);
    for (size_t b = 0; b < partition.size(); ++b) {
        for (int v : partition[b]) {
            if (v < 0 || v >= phi.n() || block_of[v] != -1) throw InputError("invalid partition");
            block_of[v] = static_cast<int>(b);
        }
    }
    for (int v = 0; v < phi.n(); ++v) {
        if (block_of[v] == -1) throw InputError("partition does not cover all vertices");
    }
    auto counts = block_color_counts(block_of, static_cast<int>(partition.size()), phi, nullptr);
    std::vector<int> colors(partition.size(), 0);
    for (size_t b = 0; b < partition.size(); ++b) {
        int best = 0;
        for (int c = 1; c < L; ++c) {
            if (counts[b * L + c] > counts[b * L + best]) best = c;  // ties keep the lowest
        }
        colors[b] = best;
    }
    return ChromaticClustering(phi.n(), L, partition, colors);
}

namespace {

// cost(partition, best coloring) = positives - sum of per-block majority
// counts + internal gamma pairs.
std::int64_t partition_cost(const PartitionIterator& it, const EdgeColoring& phi,
                            std::vector<int>& counts, std::vector<int>& sizes) {
    const int L = phi.num_colors();
    const int k = it.num_blocks();
    counts.assign(static_cast<size_t>(k) * L, 0);
    sizes.assign(k, 0);
    const auto& rgs = it.rgs();
    for (int v = 0; v < phi.n(); ++v) ++sizes[rgs[v]];
    std::int64_t internal_positive = 0;
    for (const auto& [pair, c] : phi.colored_pairs()) {
        int bu = rgs[pair.first];
        if (bu == rgs[pair.second]) {
            ++counts[static_cast<size_t>(bu) * L + c];
            ++internal_positive;
        }
    }
    std::int64_t majority = 0;
    std::int64_t internal_pairs = 0;
    for (int b = 0; b < k; ++b) {
        int best = 0;
        for (int c = 0; c < L; ++c) best = std::max(best, counts[static_cast<size_t>(b) * L + c]);
        majority += best;
        internal_pairs += static_cast<std::int64_t>(sizes[b]) * (sizes[b] - 1) / 2;
    }
    return phi.num_positive_pairs() - majority + (internal_pairs - internal_positive);
}

void check_cap(int n, int cap) {
    if (n > cap) {
        throw SizeError("exact enumeration capped at n = " + std::to_string(cap) +
                        ", instance has n = " + std::to_string(n));
    }
}

}  // namespace

ExactResult optimal_cost(const EdgeColoring& phi, int cap) {
    check_cap(phi.n(), cap);
    std::vector<int> counts, sizes;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::vector<int>> best_partition;
    for (PartitionIterator it(phi.n()); it.valid(); it.next()) {
        std::int64_t c = partition_cost(it, phi, counts, sizes);
        if (c < best) {
            best = c;
            best_partition = it.blocks();
        }
    }
    return ExactResult{best, best_coloring(best_partition, phi)};
}

std::vector<ChromaticClustering> all_optimal(const EdgeColoring& phi, int cap) {
    check_cap(phi.n(), cap);
    const std::int64_t opt = optimal_cost(phi, cap).opt;
    const int L = phi.num_colors();
    std::vector<ChromaticClustering> result;
    std::vector<int> counts, sizes;
    for (PartitionIterator it(phi.n()); it.valid(); it.next()) {
        if (partition_cost(it, phi, counts, sizes) != opt) continue;
        auto blocks = it.blocks();
        const int k = static_cast<int>(blocks.size());
        // tied majority colors per block; singletons canonicalized to 0
        std::vector<std::vector<int>> choices(k);
        for (int b = 0; b < k; ++b) {
            if (sizes[b] == 1) {
                choices[b] = {0};
                continue;
            }
            int best = 0;
            for (int c = 0; c < L; ++c) best = std::max(best, counts[static_cast<size_t>(b) * L + c]);
            for (int c = 0; c < L; ++c) {
                if (counts[static_cast<size_t>(b) * L + c] == best) choices[b].push_back(c);
            }
        }
        std::vector<int> pick(k, 0);
        while (true) {
            std::vector<int> colors(k);
            for (int b = 0; b < k; ++b) colors[b] = choices[b][pick[b]];
            result.emplace_back(phi.n(), L, blocks, colors);
            int b = k - 1;
            while (b >= 0 && pick[b] + 1 == static_cast<int>(choices[b].size())) pick[b--] = 0;
            if (b < 0) break;
            ++pick[b];
        }
    }
    return result;
}

}  // namespace ccc
