#pragma once

#include <cstdint>
#include <vector>

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"

namespace ccc {

// Enumerates every set partition of {0..n-1} exactly once via restricted
// growth strings.
class PartitionIterator {
 public:
    explicit PartitionIterator(int n);

    // False once the enumeration is exhausted.
    bool valid() const { return valid_; }
    void next();

    // Current restricted growth string; rgs()[i] is the block of vertex i.
    const std::vector<int>& rgs() const { return rgs_; }
    int num_blocks() const { return max_ + 1; }

    std::vector<std::vector<int>> blocks() const;

 private:
    int n_;
    bool valid_;
    int max_;
    std::vector<int> rgs_;
    std::vector<int> prefix_max_;
};

constexpr int kExactDefaultCap = 11;  // Bell(11) = 678570

// Optimal coloring of a fixed partition: per-block majority internal color,
// ties to the lowest index, singletons colored 0.
ChromaticClustering best_coloring(const std::vector<std::vector<int>>& partition,
                                  const EdgeColoring& phi);

struct ExactResult {
    std::int64_t opt = 0;
    ChromaticClustering witness;
};

// Exact minimum over all chromatic clusterings. Throws SizeError above cap.
ExactResult optimal_cost(const EdgeColoring& phi, int cap = kExactDefaultCap);

// Every clustering achieving OPT; per-block color ties expand into all tied
// colorings, singleton colors canonicalized to 0.
std::vector<ChromaticClustering> all_optimal(const EdgeColoring& phi, int cap = kExactDefaultCap);

}  // namespace ccc
