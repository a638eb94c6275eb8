// Command-line front end: instance generation, exact solving, relaxations,
// rounding, preclustering reports, and the numerical verifiers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccc/analysis.hpp"
#include "ccc/exact.hpp"
#include "ccc/experiment.hpp"
#include "ccc/generator.hpp"
#include "ccc/io.hpp"
#include "ccc/precluster.hpp"
#include "ccc/rounding.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        ccc::write_file(out_path, text);
    }
}

json clustering_json(const ccc::EdgeColoring& phi, const ccc::ChromaticClustering& clustering) {
    return json::parse(ccc::serialize_clustering(clustering, ccc::cost(phi, clustering)));
}

// decimal or fraction ("18/11"); the factor is tight at 18/11 so the exact
// rational matters near the boundary
double parse_alpha(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> sizes;
    std::istringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) sizes.push_back(std::stoi(token));
    return sizes;
}

struct Options {
    std::string out;
    std::string csv;
    std::string in_file;

    ccc::PlantedModel model;
    std::string sizes_csv;

    std::string relaxation = "standard";
    std::string export_lp;

    std::string algorithm = "mixed";
    std::string alpha_text = "18/11";
    int trials = 1;
    std::uint64_t seed = 1;

    double beta = 0.1;
    double epsilon = 0.1;
    double step = 0.01;

    std::string config_file;
    bool deterministic = false;
};

int run_gen(const Options& opt) {
    ccc::PlantedModel model = opt.model;
    model.cluster_sizes = parse_sizes(opt.sizes_csv);
    ccc::EdgeColoring phi = ccc::generate(model);
    emit(ccc::serialize_graph(phi), opt.out);
    return 0;
}

int run_exact(const Options& opt) {
    ccc::EdgeColoring phi = ccc::load_graph(opt.in_file);
    ccc::ExactResult result = ccc::optimal_cost(phi);
    json doc;
    doc["opt"] = result.opt;
    doc["witness"] = clustering_json(phi, result.witness);
    emit(doc.dump(2) + "\n", opt.out);
    return 0;
}

int run_lp(const Options& opt) {
    ccc::EdgeColoring phi = ccc::load_graph(opt.in_file);
    json doc;
    if (opt.relaxation == "cluster") {
        ccc::ClusterLpResult result = ccc::solve_cluster(phi);
        doc["relaxation"] = "cluster";
        doc["value"] = result.value;
        doc["distribution"] = json::parse(ccc::serialize_distribution(result.distribution));
        if (!opt.export_lp.empty()) {
            ccc::write_file(opt.export_lp, ccc::lp::to_lp_text(ccc::build_cluster_lp(phi)));
        }
    } else if (opt.relaxation == "standard" || opt.relaxation == "strong") {
        bool strengthened = opt.relaxation == "strong";
        ccc::StandardLpResult result = ccc::solve_standard(phi, strengthened);
        doc["relaxation"] = opt.relaxation;
        doc["value"] = result.value;
        doc["solution"] = json::parse(ccc::serialize_standard(result.solution));
        if (!opt.export_lp.empty()) {
            ccc::write_file(opt.export_lp,
                            ccc::lp::to_lp_text(ccc::build_standard_lp(phi, strengthened)));
        }
    } else {
        throw ccc::InputError("unknown relaxation: " + opt.relaxation);
    }
    emit(doc.dump(2) + "\n", opt.out);
    return 0;
}

int run_round(const Options& opt) {
    ccc::EdgeColoring phi = ccc::load_graph(opt.in_file);
    ccc::RoundingFunctions greedy = ccc::RoundingFunctions::greedy();
    const double alpha = parse_alpha(opt.alpha_text);
    json doc;
    doc["algorithm"] = opt.algorithm;
    doc["alpha"] = alpha;
    doc["trials"] = opt.trials;
    doc["seed"] = opt.seed;

    auto summarize = [&](auto&& run_one) {
        ccc::RngStream root(opt.seed);
        double sum = 0.0, sum_sq = 0.0;
        std::int64_t best_cost = -1;
        std::optional<ccc::ChromaticClustering> best;
        for (int t = 0; t < opt.trials; ++t) {
            ccc::RngStream stream = root.substream(static_cast<std::uint64_t>(t));
            ccc::ChromaticClustering clustering = run_one(stream);
            std::int64_t c = ccc::cost(phi, clustering);
            sum += static_cast<double>(c);
            sum_sq += static_cast<double>(c) * c;
            if (best_cost < 0 || c < best_cost) {
                best_cost = c;
                best = std::move(clustering);
            }
        }
        doc["mean_cost"] = sum / opt.trials;
        if (opt.trials > 1) {
            double variance =
                std::max(0.0, (sum_sq - sum * sum / opt.trials) / (opt.trials - 1));
            doc["stderr"] = std::sqrt(variance / opt.trials);
        } else {
            doc["stderr"] = nullptr;
        }
        doc["best_cost"] = best_cost;
        doc["best"] = clustering_json(phi, *best);
    };

    if (opt.algorithm == "pivot") {
        ccc::StandardSolution sol;
        try {
            sol = ccc::induced_standard(ccc::solve_cluster(phi).distribution);
        } catch (const ccc::SizeError&) {
            sol = ccc::solve_standard(phi, true).solution;  // above the cluster cap
        }
        summarize([&](ccc::RngStream& s) { return ccc::round_pivot_based(phi, sol, greedy, s); });
    } else if (opt.algorithm == "cluster" || opt.algorithm == "mixed") {
        ccc::ClusterDistribution dist = ccc::solve_cluster(phi).distribution;
        if (opt.algorithm == "cluster") {
            summarize([&](ccc::RngStream& s) { return ccc::round_cluster_based(phi, dist, s); });
        } else {
            summarize([&](ccc::RngStream& s) {
                return ccc::round_mixed(phi, dist, alpha, greedy, s);
            });
        }
    } else {
        throw ccc::InputError("unknown algorithm: " + opt.algorithm);
    }
    emit(doc.dump(2) + "\n", opt.out);
    return 0;
}

int run_precluster(const Options& opt) {
    ccc::EdgeColoring phi = ccc::load_graph(opt.in_file);
    ccc::RngStream rng(opt.seed);
    ccc::PreclusterReport report = ccc::precluster_report(phi, opt.epsilon, opt.beta, rng);
    if (!opt.csv.empty()) {
        ccc::write_file(opt.csv, report.csv_header() + "\n" + report.csv_row() + "\n");
    }
    emit(report.to_text(), opt.out);
    return 0;
}

int run_verify_triangles(const Options& opt) {
    const double alpha = parse_alpha(opt.alpha_text);
    ccc::analysis::TriangleReport report =
        ccc::analysis::verify_triangle_inequality(alpha, opt.step);
    json doc;
    doc["alpha"] = alpha;
    doc["step"] = opt.step;
    doc["points_checked"] = report.points_checked;
    doc["violations"] = report.violations.size();
    doc["min_gap"] = report.min_gap;
    doc["tight_points"] = json::array();
    for (const auto& p : report.tight_points) {
        std::string signs{ccc::analysis::sign_char(p.signs[0]), ccc::analysis::sign_char(p.signs[1]),
                          ccc::analysis::sign_char(p.signs[2])};
        doc["tight_points"].push_back(
            {{"signs", signs}, {"x", p.xs[0]}, {"y", p.xs[1]}, {"z", p.xs[2]}, {"gap", p.gap}});
    }
    if (!opt.csv.empty()) ccc::write_file(opt.csv, report.to_csv());
    emit(doc.dump(2) + "\n", opt.out);
    return report.violations.empty() ? 0 : 1;
}

int run_verify_charging(const Options& opt) {
    const double alpha = parse_alpha(opt.alpha_text);
    ccc::analysis::ChargingReport report = ccc::analysis::verify_charging(alpha, opt.step);
    json doc;
    doc["alpha"] = alpha;
    doc["step"] = opt.step;
    doc["points_checked"] = report.points_checked;
    doc["violations"] = report.violations.size();
    doc["min_margin"] = report.min_margin;
    if (!opt.csv.empty()) ccc::write_file(opt.csv, report.to_csv());
    emit(doc.dump(2) + "\n", opt.out);
    return report.violations.empty() ? 0 : 1;
}

int run_experiment_cmd(const Options& opt) {
    ccc::ExperimentConfig config = ccc::parse_experiment_config(ccc::read_file(opt.config_file));
    if (opt.deterministic) config.deterministic = true;
    if (!opt.out.empty()) config.out = opt.out;
    std::string csv = ccc::run_experiment(config);
    emit(csv, config.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromatic correlation clustering toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* gen = app.add_subcommand("gen", "generate a planted instance");
    gen->add_option("--n", opt.model.n, "vertex count")->required();
    gen->add_option("--L", opt.model.num_colors, "number of positive colors")->required();
    gen->add_option("--sizes", opt.sizes_csv, "comma-separated cluster sizes")->required();
    gen->add_option("--noise-in", opt.model.noise_in, "intra-cluster deviation probability");
    gen->add_option("--noise-out", opt.model.noise_out, "inter-cluster recolor probability");
    gen->add_option("--seed", opt.model.seed, "generator seed");
    gen->add_option("--out", opt.out, "output file (default stdout)");

    auto* exact = app.add_subcommand("exact", "brute-force optimum");
    exact->add_option("--in", opt.in_file, "graph file")->required();
    exact->add_option("--out", opt.out, "output file (default stdout)");

    auto* lp = app.add_subcommand("lp", "solve a relaxation");
    lp->add_option("--relaxation", opt.relaxation, "standard | strong | cluster");
    lp->add_option("--in", opt.in_file, "graph file")->required();
    lp->add_option("--out", opt.out, "output file (default stdout)");
    lp->add_option("--export-lp", opt.export_lp, "also write the LP in text form");

    auto* round = app.add_subcommand("round", "randomized rounding");
    round->add_option("--algorithm", opt.algorithm, "cluster | pivot | mixed");
    round->add_option("--in", opt.in_file, "graph file")->required();
    round->add_option("--alpha", opt.alpha_text, "mixing parameter in [1.5, 2], decimal or a/b");
    round->add_option("--trials", opt.trials, "number of independent runs");
    round->add_option("--seed", opt.seed, "rng seed");
    round->add_option("--out", opt.out, "output file (default stdout)");

    auto* precluster = app.add_subcommand("precluster", "atoms and admissible edges report");
    precluster->add_option("--in", opt.in_file, "graph file")->required();
    precluster->add_option("--beta", opt.beta, "marking threshold");
    precluster->add_option("--epsilon", opt.epsilon, "admissibility threshold");
    precluster->add_option("--seed", opt.seed, "rng seed");
    precluster->add_option("--csv", opt.csv, "also write a CSV record");
    precluster->add_option("--out", opt.out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "numerical verification sweeps");
    verify->require_subcommand(1);
    auto* triangles = verify->add_subcommand("triangles", "triangle inequality sweep");
    triangles->add_option("--alpha", opt.alpha_text, "charging parameter in [1.5, 2), decimal or a/b");
    triangles->add_option("--step", opt.step, "grid step, must divide 1");
    triangles->add_option("--csv", opt.csv, "write violation/tight rows as CSV");
    triangles->add_option("--out", opt.out, "output file (default stdout)");
    auto* charging = verify->add_subcommand("charging", "per-edge charging sweep");
    charging->add_option("--alpha", opt.alpha_text, "charging parameter in [1.5, 2), decimal or a/b");
    charging->add_option("--step", opt.step, "grid step, must divide 1");
    charging->add_option("--csv", opt.csv, "write violation rows as CSV");
    charging->add_option("--out", opt.out, "output file (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "batch experiment harness");
    experiment->add_option("--config", opt.config_file, "config JSON")->required();
    experiment->add_flag("--deterministic", opt.deterministic,
                         "suppress timestamp and wall-time columns");
    experiment->add_option("--out", opt.out, "output file (overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(opt);
        if (exact->parsed()) return run_exact(opt);
        if (lp->parsed()) return run_lp(opt);
        if (round->parsed()) return run_round(opt);
        if (precluster->parsed()) return run_precluster(opt);
        if (verify->parsed()) {
            if (triangles->parsed()) return run_verify_triangles(opt);
            if (charging->parsed()) return run_verify_charging(opt);
        }
        if (experiment->parsed()) return run_experiment_cmd(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
