#pragma once

#include <string>

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"
#include "ccc/relaxations.hpp"

namespace ccc {

// Clustering JSON: {"n": .., "L": .., "cost": .., "clusters": [{"color": c,
// "vertices": [..]}, ..]}. `cost` is recomputed on load only when a coloring
// is supplied separately; pass-through otherwise.
std::string serialize_clustering(const ChromaticClustering& clustering, std::int64_t cost_value);
ChromaticClustering parse_clustering(const std::string& text);

// Distribution JSON: {"n": .., "L": .., "entries": [{"mask": m, "color": c,
// "z": w}, ..]}.
std::string serialize_distribution(const ClusterDistribution& dist);
ClusterDistribution parse_distribution(const std::string& text);

// Standard solution JSON: dense arrays keyed by vertex and pair index.
std::string serialize_standard(const StandardSolution& sol);
StandardSolution parse_standard(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ccc
