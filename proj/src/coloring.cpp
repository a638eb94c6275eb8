#include "ccc/coloring.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ccc {

std::string ColorLabel::to_string() const {
    if (is_zero()) return "0*";
    if (is_gamma()) return "gamma";
    return std::to_string(code_);
}

EdgeColoring::EdgeColoring(int n, int num_colors) : n_(n), num_colors_(num_colors) {
    if (n < 1) throw InputError("vertex count must be >= 1");
    if (num_colors < 1) throw InputError("color count must be >= 1");
}

void EdgeColoring::check_vertex(int u) const {
    if (u < 0 || u >= n_) {
        throw InputError("vertex " + std::to_string(u) + " out of range [0, " +
                         std::to_string(n_) + ")");
    }
}

void EdgeColoring::set_color(int u, int v, int color) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-pairs carry no color");
    if (color < 0 || color >= num_colors_) {
        throw InputError("color " + std::to_string(color) + " out of range [0, " +
                         std::to_string(num_colors_) + ")");
    }
    colored_[make_pair_key(u, v)] = color;
}

ColorLabel EdgeColoring::color(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("phi is defined on distinct pairs only");
    auto it = colored_.find(make_pair_key(u, v));
    if (it == colored_.end()) return ColorLabel::gamma();
    return ColorLabel::positive(it->second);
}

EdgeColoring parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_content_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (!blank) {
                out = line;
                return true;
            }
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header)) throw ParseError("missing 'n L' header", line_no);
    std::istringstream hs(header);
    int n = 0, num_colors = 0;
    if (!(hs >> n >> num_colors)) throw ParseError("header must be 'n L'", line_no);
    std::string trailing;
    if (hs >> trailing) throw ParseError("trailing tokens after 'n L'", line_no);
    if (n < 1 || num_colors < 1) throw ParseError("n and L must be positive", line_no);

    EdgeColoring phi(n, num_colors);
    std::string record;
    while (next_content_line(record)) {
        std::istringstream rs(record);
        int u = 0, v = 0, c = 0;
        if (!(rs >> u >> v >> c)) throw ParseError("expected 'u v c'", line_no);
        if (rs >> trailing) throw ParseError("trailing tokens after 'u v c'", line_no);
        if (!(0 <= u && u < v && v < n)) throw ParseError("require 0 <= u < v < n", line_no);
        if (c < 0 || c >= num_colors) throw ParseError("color out of range", line_no);
        try {
            phi.set_color(u, v, c);
        } catch (const InputError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return phi;
}

EdgeColoring load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return parse_graph(in);
}

std::string serialize_graph(const EdgeColoring& phi) {
    std::ostringstream out;
    out << phi.n() << ' ' << phi.num_colors() << '\n';
    for (const auto& [pair, c] : phi.colored_pairs()) {
        out << pair.first << ' ' << pair.second << ' ' << c << '\n';
    }
    return out.str();
}

VertexRow row_of(const EdgeColoring& phi, int u) {
    if (u < 0 || u >= phi.n()) throw InputError("row owner out of range");
    VertexRow row;
    row.owner = u;
    row.values.assign(phi.n(), ColorLabel::gamma());
    row.values[u] = ColorLabel::zero();
    for (const auto& [pair, c] : phi.colored_pairs()) {
        if (pair.first == u) row.values[pair.second] = ColorLabel::positive(c);
        if (pair.second == u) row.values[pair.first] = ColorLabel::positive(c);
    }
    return row;
}

int d0(const VertexRow& f, const VertexRow& g) {
    if (f.domain_size() != g.domain_size()) throw InputError("d0 rows over different domains");
    int count = 0;
    for (int v = 0; v < f.domain_size(); ++v) {
        if (f.values[v] != g.values[v]) ++count;
    }
    return count;
}

int d0_K(const VertexRow& f, const VertexRow& g, const std::vector<int>& K) {
    const int n = f.domain_size();
    if (n != g.domain_size()) throw InputError("d0_K rows over different domains");
    std::vector<char> in_k(n, 0);
    for (int v : K) {
        if (v < 0 || v >= n) throw InputError("K is not a subset of the domain");
        in_k[v] = 1;
    }
    int count = 0;
    for (int v = 0; v < n; ++v) {
        if (f.values[v] != g.values[v]) count += in_k[v] ? 1 : 2;
    }
    return count;
}

}  // namespace ccc
