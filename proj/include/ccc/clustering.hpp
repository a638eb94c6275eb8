#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccc/coloring.hpp"

namespace ccc {

// A partition of {0..n-1} into colored blocks. Canonical form: vertices
// sorted inside each block, blocks ordered by smallest vertex. Immutable.
class ChromaticClustering {
 public:
    // Throws InputError when the blocks do not partition {0..n-1} or a color
    // is out of [0, num_colors).
    ChromaticClustering(int n, int num_colors, std::vector<std::vector<int>> blocks,
                        std::vector<int> block_colors);

    int n() const { return n_; }
    int num_colors() const { return num_colors_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block_colors() const { return block_colors_; }

    int block_of(int u) const;
    int block_size(int b) const { return static_cast<int>(blocks_[b].size()); }

    // The binary view Phi(u, v): zero iff u == v, the block color if
    // co-clustered, gamma otherwise.
    ColorLabel binary_view(int u, int v) const;

    bool co_clustered(int u, int v) const { return block_of(u) == block_of(v); }

    friend bool operator==(const ChromaticClustering& a, const ChromaticClustering& b) {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_ && a.block_colors_ == b.block_colors_;
    }

 private:
    int n_;
    int num_colors_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_colors_;
    std::vector<int> block_of_;
};

// All-singleton clustering, every block colored `color`.
ChromaticClustering singletons(int n, int num_colors, int color = 0);

// Partition-axiom checks on raw parts; returns every violation found.
std::vector<std::string> validate_parts(int n, int num_colors,
                                        const std::vector<std::vector<int>>& blocks,
                                        const std::vector<int>& block_colors);

// Same checks against a built object (always empty by construction) plus the
// vertex-count match.
std::vector<std::string> validate(const ChromaticClustering& clustering, int n);

// Disagreement count: positive pairs that are cut or co-clustered under a
// mismatched block color, plus gamma pairs co-clustered.
std::int64_t cost(const EdgeColoring& phi, const ChromaticClustering& clustering);

// Same value through the binary-function identity obj = 1/2 sum_u d0(phi_u, Phi_u).
std::int64_t cost_via_binary(const EdgeColoring& phi, const ChromaticClustering& clustering);

// Row Phi_u of a clustering's binary view.
VertexRow row_of(const ChromaticClustering& clustering, int u);

}  // namespace ccc
