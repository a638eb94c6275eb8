#include "ccc/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ccc {

namespace {

// Canonical form: sorted vertices per block, blocks by smallest vertex.
void canonicalize(std::vector<std::vector<int>>& blocks, std::vector<int>& colors) {
    std::vector<int> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return blocks[a].front() < blocks[b].front();
    });
    std::vector<std::vector<int>> sorted_blocks;
    std::vector<int> sorted_colors;
    sorted_blocks.reserve(blocks.size());
    sorted_colors.reserve(blocks.size());
    for (int i : order) {
        sorted_blocks.push_back(std::move(blocks[i]));
        sorted_colors.push_back(colors[i]);
    }
    blocks = std::move(sorted_blocks);
    colors = std::move(sorted_colors);
}

}  // namespace

std::vector<std::string> validate_parts(int n, int num_colors,
                                        const std::vector<std::vector<int>>& blocks,
                                        const std::vector<int>& block_colors) {
    std::vector<std::string> violations;
    if (blocks.size() != block_colors.size()) {
        violations.push_back("block/color count mismatch");
    }
    std::vector<int> seen(std::max(n, 0), 0);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) violations.push_back("empty block " + std::to_string(b));
        for (int v : blocks[b]) {
            if (v < 0 || v >= n) {
                violations.push_back("vertex " + std::to_string(v) + " out of range");
            } else {
                ++seen[v];
            }
        }
        if (b < block_colors.size() && (block_colors[b] < 0 || block_colors[b] >= num_colors)) {
            violations.push_back("block " + std::to_string(b) + " color out of range");
        }
    }
    for (int v = 0; v < n; ++v) {
        if (seen[v] == 0) violations.push_back("not covering: vertex " + std::to_string(v));
        if (seen[v] > 1) violations.push_back("not disjoint: vertex " + std::to_string(v));
    }
    return violations;
}

ChromaticClustering::ChromaticClustering(int n, int num_colors,
                                         std::vector<std::vector<int>> blocks,
                                         std::vector<int> block_colors)
    : n_(n), num_colors_(num_colors), blocks_(std::move(blocks)),
      block_colors_(std::move(block_colors)) {
    auto violations = validate_parts(n_, num_colors_, blocks_, block_colors_);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid clustering:";
        for (const auto& v : violations) msg << ' ' << v << ';';
        throw InputError(msg.str());
    }
    canonicalize(blocks_, block_colors_);
    block_of_.assign(n_, -1);
    for (size_t b = 0; b < blocks_.size(); ++b) {
        for (int v : blocks_[b]) block_of_[v] = static_cast<int>(b);
    }
}

int ChromaticClustering::block_of(int u) const {
    if (u < 0 || u >= n_) throw InputError("vertex out of range");
    return block_of_[u];
}

ColorLabel ChromaticClustering::binary_view(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InputError("vertex out of range");
    if (u == v) return ColorLabel::zero();
    if (block_of_[u] != block_of_[v]) return ColorLabel::gamma();
    return ColorLabel::positive(block_colors_[block_of_[u]]);
}

ChromaticClustering singletons(int n, int num_colors, int color) {
    std::vector<std::vector<int>> blocks(n);
    for (int v = 0; v < n; ++v) blocks[v] = {v};
    return ChromaticClustering(n, num_colors, std::move(blocks), std::vector<int>(n, color));
}

std::vector<std::string> validate(const ChromaticClustering& clustering, int n) {
    auto violations = validate_parts(clustering.n(), clustering.num_colors(),
                                     clustering.blocks(), clustering.block_colors());
    if (clustering.n() != n) violations.push_back("vertex-count mismatch");
    return violations;
}

std::int64_t cost(const EdgeColoring& phi, const ChromaticClustering& clustering) {
    if (phi.n() != clustering.n()) throw InputError("vertex-count mismatch");
    std::int64_t total = 0;
    // Positive pairs: cut, or internal under a mismatched block color.
    for (const auto& [pair, c] : phi.colored_pairs()) {
        const int bu = clustering.block_of(pair.first);
        const int bv = clustering.block_of(pair.second);
        if (bu != bv || clustering.block_colors()[bu] != c) ++total;
    }
    // Gamma pairs inside a block.
    for (int b = 0; b < clustering.num_blocks(); ++b) {
        const auto& block = clustering.blocks()[b];
        for (size_t i = 0; i < block.size(); ++i) {
            for (size_t j = i + 1; j < block.size(); ++j) {
                if (phi.color(block[i], block[j]).is_gamma()) ++total;
            }
        }
    }
    return total;
}

VertexRow row_of(const ChromaticClustering& clustering, int u) {
    if (u < 0 || u >= clustering.n()) throw InputError("row owner out of range");
    VertexRow row;
    row.owner = u;
    row.values.assign(clustering.n(), ColorLabel::gamma());
    const int bu = clustering.block_of(u);
    const ColorLabel color = ColorLabel::positive(clustering.block_colors()[bu]);
    for (int v : clustering.blocks()[bu]) row.values[v] = color;
    row.values[u] = ColorLabel::zero();
    return row;
}

std::int64_t cost_via_binary(const EdgeColoring& phi, const ChromaticClustering& clustering) {
    if (phi.n() != clustering.n()) throw InputError("vertex-count mismatch");
    std::int64_t sum = 0;
    for (int u = 0; u < phi.n(); ++u) {
        sum += d0(row_of(phi, u), row_of(clustering, u));
    }
    // Every pair disagreement is seen from both endpoints.
    return sum / 2;
}

}  // namespace ccc
