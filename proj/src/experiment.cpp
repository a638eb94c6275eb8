#include "ccc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "ccc/exact.hpp"
#include "ccc/io.hpp"
#include "ccc/rounding.hpp"

namespace ccc {

using nlohmann::json;

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    ExperimentConfig config;
    try {
        config.alpha = doc.value("alpha", config.alpha);
        config.trials = doc.value("trials", config.trials);
        config.seed = doc.value("seed", config.seed);
        config.oracle = doc.value("oracle", config.oracle);
        config.oracle_cap = doc.value("oracle_cap", config.oracle_cap);
        config.cluster_cap = doc.value("cluster_cap", config.cluster_cap);
        config.out = doc.value("out", config.out);
        config.deterministic = doc.value("deterministic", config.deterministic);
        if (doc.contains("algorithms")) {
            config.algorithms = doc.at("algorithms").get<std::vector<std::string>>();
        }
        for (const auto& inst : doc.at("instances")) {
            InstanceSpec spec;
            if (inst.contains("file")) {
                spec.file = inst.at("file").get<std::string>();
                spec.label = spec.file;
            } else {
                const auto& m = inst.at("model");
                PlantedModel model;
                model.n = m.at("n").get<int>();
                model.num_colors = m.at("L").get<int>();
                model.cluster_sizes = m.at("cluster_sizes").get<std::vector<int>>();
                model.noise_in = m.value("noise_in", 0.0);
                model.noise_out = m.value("noise_out", 0.0);
                model.seed = m.value("seed", std::uint64_t{0});
                model.validate();
                spec.model = model;
                std::ostringstream label;
                label << "planted(n=" << model.n << ",L=" << model.num_colors
                      << ",seed=" << model.seed << ")";
                spec.label = label.str();
            }
            config.instances.push_back(std::move(spec));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    if (!(config.alpha >= 1.5 && config.alpha <= 2.0)) {
        throw InputError("alpha must lie in [1.5, 2]");
    }
    if (config.trials < 1) throw InputError("trials must be >= 1");
    for (const auto& name : config.algorithms) {
        if (name != "cluster" && name != "pivot" && name != "mixed") {
            throw InputError("unknown algorithm: " + name);
        }
    }
    return config;
}

namespace {

struct Cell {
    std::optional<double> value;
    bool na = false;  // explicit 0/0 sentinel

    static Cell of(double v) { return Cell{v, false}; }
    static Cell sentinel() { return Cell{std::nullopt, true}; }
};

std::string format_cell(const Cell& cell) {
    if (cell.na) return "na";
    if (!cell.value.has_value()) return "";
    std::ostringstream out;
    out.precision(12);
    out << *cell.value;
    return out.str();
}

Cell ratio_cell(double numerator, double denominator) {
    if (denominator == 0.0) {
        return numerator == 0.0 ? Cell::sentinel() : Cell::of(std::numeric_limits<double>::infinity());
    }
    return Cell::of(numerator / denominator);
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct AlgorithmStats {
    double mean = 0.0;
    std::optional<double> stderr_;
};

// mean/stderr of cost over `trials` runs of one rounding algorithm
template <typename RunFn>
AlgorithmStats run_trials(const EdgeColoring& phi, int trials, std::uint64_t seed, RunFn run) {
    RngStream root(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream stream = root.substream(static_cast<std::uint64_t>(t));
        std::int64_t c = cost(phi, run(stream));
        sum += static_cast<double>(c);
        sum_sq += static_cast<double>(c) * static_cast<double>(c);
    }
    AlgorithmStats stats;
    stats.mean = sum / trials;
    if (trials > 1) {
        double variance = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
        stats.stderr_ = std::sqrt(variance / trials);
    }
    return stats;
}

}  // namespace

std::string run_experiment(const ExperimentConfig& config) {
    std::ostringstream out;
    out.precision(12);
    if (!config.deterministic) {
        std::time_t now = std::time(nullptr);
        char stamp[64];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated " << stamp << "\n";
    }
    out << "instance,label,n,L,run_seed,opt,value_standard,value_strong,value_cluster";
    for (const auto& name : config.algorithms) {
        out << ',' << name << "_mean," << name << "_stderr," << name << "_over_opt," << name
            << "_over_cluster";
    }
    out << ",wall_ms_lp,wall_ms_oracle,wall_ms_rounding,error\n";

    RngStream root(config.seed);
    for (size_t idx = 0; idx < config.instances.size(); ++idx) {
        const InstanceSpec& spec = config.instances[idx];
        std::uint64_t run_seed = root.substream(idx).seed();
        std::vector<std::string> errors;

        std::optional<EdgeColoring> phi;
        try {
            phi = spec.model.has_value() ? generate(*spec.model)
                                         : load_graph(spec.file);
        } catch (const std::exception& e) {
            errors.push_back(std::string("load: ") + e.what());
        }

        Cell opt_cell, standard_cell, strong_cell, cluster_cell;
        std::optional<std::int64_t> opt;
        std::optional<ClusterDistribution> dist;
        std::optional<StandardSolution> pivot_solution;
        double lp_ms = 0.0, oracle_ms = 0.0, rounding_ms = 0.0;

        if (phi.has_value()) {
            double t0 = now_ms();
            if (config.oracle) {
                try {
                    opt = optimal_cost(*phi, config.oracle_cap).opt;
                    opt_cell = Cell::of(static_cast<double>(*opt));
                } catch (const std::exception& e) {
                    errors.push_back(std::string("oracle: ") + e.what());
                }
            }
            oracle_ms = now_ms() - t0;

            t0 = now_ms();
            try {
                standard_cell = Cell::of(solve_standard(*phi, false).value);
            } catch (const std::exception& e) {
                errors.push_back(std::string("standard: ") + e.what());
            }
            try {
                StandardLpResult strong = solve_standard(*phi, true);
                strong_cell = Cell::of(strong.value);
                pivot_solution = std::move(strong.solution);
            } catch (const std::exception& e) {
                errors.push_back(std::string("strong: ") + e.what());
            }
            try {
                ClusterLpResult cluster = solve_cluster(*phi, config.cluster_cap);
                cluster_cell = Cell::of(cluster.value);
                dist = std::move(cluster.distribution);
                pivot_solution = induced_standard(*dist);
            } catch (const std::exception& e) {
                errors.push_back(std::string("cluster: ") + e.what());
            }
            lp_ms = now_ms() - t0;
        }

        std::vector<Cell> alg_cells;
        double t0 = now_ms();
        RoundingFunctions greedy = RoundingFunctions::greedy();
        for (const auto& name : config.algorithms) {
            std::optional<AlgorithmStats> stats;
            try {
                if (!phi.has_value()) {
                    // nothing to run
                } else if (name == "cluster" && dist.has_value()) {
                    stats = run_trials(*phi, config.trials, run_seed, [&](RngStream& s) {
                        return round_cluster_based(*phi, *dist, s);
                    });
                } else if (name == "pivot" && pivot_solution.has_value()) {
                    stats = run_trials(*phi, config.trials, run_seed, [&](RngStream& s) {
                        return round_pivot_based(*phi, *pivot_solution, greedy, s);
                    });
                } else if (name == "mixed" && dist.has_value()) {
                    stats = run_trials(*phi, config.trials, run_seed, [&](RngStream& s) {
                        return round_mixed(*phi, *dist, config.alpha, greedy, s);
                    });
                }
            } catch (const std::exception& e) {
                errors.push_back(name + ": " + e.what());
            }
            if (stats.has_value()) {
                alg_cells.push_back(Cell::of(stats->mean));
                alg_cells.push_back(stats->stderr_.has_value() ? Cell::of(*stats->stderr_)
                                                               : Cell::sentinel());
                if (opt.has_value()) {
                    alg_cells.push_back(ratio_cell(stats->mean, static_cast<double>(*opt)));
                } else {
                    alg_cells.push_back(Cell{});
                }
                if (cluster_cell.value.has_value()) {
                    alg_cells.push_back(ratio_cell(stats->mean, *cluster_cell.value));
                } else {
                    alg_cells.push_back(Cell{});
                }
            } else {
                for (int i = 0; i < 4; ++i) alg_cells.push_back(Cell{});
            }
        }
        rounding_ms = now_ms() - t0;

        out << idx << ',' << spec.label << ','
            << (phi.has_value() ? std::to_string(phi->n()) : "") << ','
            << (phi.has_value() ? std::to_string(phi->num_colors()) : "") << ',' << run_seed << ','
            << format_cell(opt_cell) << ',' << format_cell(standard_cell) << ','
            << format_cell(strong_cell) << ',' << format_cell(cluster_cell);
        for (const auto& cell : alg_cells) out << ',' << format_cell(cell);
        if (config.deterministic) {
            out << ",,,";
        } else {
            out << ',' << lp_ms << ',' << oracle_ms << ',' << rounding_ms;
        }
        std::string joined;
        for (const auto& e : errors) {
            if (!joined.empty()) joined += "; ";
            joined += e;
        }
        // errors may contain commas; keep the CSV well formed
        for (char& ch : joined) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out << ',' << joined << '\n';
    }
    return out.str();
}

}  // namespace ccc
