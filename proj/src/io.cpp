#include "ccc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ccc {

using nlohmann::json;

std::string serialize_clustering(const ChromaticClustering& clustering, std::int64_t cost_value) {
    json doc;
    doc["n"] = clustering.n();
    doc["L"] = clustering.num_colors();
    doc["cost"] = cost_value;
    doc["clusters"] = json::array();
    for (int b = 0; b < clustering.num_blocks(); ++b) {
        doc["clusters"].push_back(
            {{"color", clustering.block_colors()[b]}, {"vertices", clustering.blocks()[b]}});
    }
    return doc.dump(2) + "\n";
}

ChromaticClustering parse_clustering(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("clustering JSON: ") + e.what());
    }
    try {
        int n = doc.at("n").get<int>();
        std::vector<std::vector<int>> blocks;
        std::vector<int> colors;
        for (const auto& cluster : doc.at("clusters")) {
            blocks.push_back(cluster.at("vertices").get<std::vector<int>>());
            colors.push_back(cluster.at("color").get<int>());
        }
        int num_colors = doc.value("L", 0);
        for (int c : colors) num_colors = std::max(num_colors, c + 1);
        num_colors = std::max(num_colors, 1);
        return ChromaticClustering(n, num_colors, std::move(blocks), std::move(colors));
    } catch (const json::exception& e) {
        throw ParseError(std::string("clustering JSON: ") + e.what());
    }
}

std::string serialize_distribution(const ClusterDistribution& dist) {
    json doc;
    doc["n"] = dist.n;
    doc["L"] = dist.num_colors;
    doc["entries"] = json::array();
    for (const auto& e : dist.entries) {
        doc["entries"].push_back({{"mask", e.mask}, {"color", e.color}, {"z", e.z}});
    }
    return doc.dump(2) + "\n";
}

ClusterDistribution parse_distribution(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("distribution JSON: ") + e.what());
    }
    try {
        ClusterDistribution dist;
        dist.n = doc.at("n").get<int>();
        dist.num_colors = doc.at("L").get<int>();
        for (const auto& entry : doc.at("entries")) {
            dist.entries.push_back({entry.at("mask").get<std::uint32_t>(),
                                    entry.at("color").get<int>(), entry.at("z").get<double>()});
        }
        return normalize_entries(std::move(dist));
    } catch (const json::exception& e) {
        throw ParseError(std::string("distribution JSON: ") + e.what());
    }
}

std::string serialize_standard(const StandardSolution& sol) {
    json doc;
    doc["n"] = sol.n;
    doc["L"] = sol.num_colors;
    doc["x_vertex"] = sol.x_vertex;
    doc["x_edge"] = sol.x_edge;
    return doc.dump(2) + "\n";
}

StandardSolution parse_standard(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("solution JSON: ") + e.what());
    }
    try {
        StandardSolution sol;
        sol.n = doc.at("n").get<int>();
        sol.num_colors = doc.at("L").get<int>();
        sol.x_vertex = doc.at("x_vertex").get<std::vector<std::vector<double>>>();
        sol.x_edge = doc.at("x_edge").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(sol.x_vertex.size()) != sol.n ||
            static_cast<int>(sol.x_edge.size()) != sol.n * (sol.n - 1) / 2) {
            throw ParseError("solution arrays disagree with n");
        }
        return sol;
    } catch (const json::exception& e) {
        throw ParseError(std::string("solution JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

}  // namespace ccc
