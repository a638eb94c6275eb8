#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccc/generator.hpp"

namespace ccc {

// One instance source: either a planted-model spec or a graph file path.
struct InstanceSpec {
    std::optional<PlantedModel> model;
    std::string file;
    std::string label;
};

struct ExperimentConfig {
    std::vector<InstanceSpec> instances;
    std::vector<std::string> algorithms = {"cluster", "pivot", "mixed"};
    double alpha = 18.0 / 11.0;
    int trials = 2000;
    std::uint64_t seed = 1;
    bool oracle = true;
    int oracle_cap = 11;
    int cluster_cap = 12;
    std::string out;  // empty -> stdout

    // Suppresses the timestamp header and blanks wall-time cells so repeated
    // runs are byte-identical.
    bool deterministic = false;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);

// CSV report, one row per instance; per-instance failures land in the error
// column and the run continues.
std::string run_experiment(const ExperimentConfig& config);

}  // namespace ccc
