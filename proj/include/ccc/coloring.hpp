#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccc/errors.hpp"

namespace ccc {

// Label attached to a vertex pair: a positive color in [0, L), the dissimilar
// sentinel gamma, or the self-pair sentinel zero. The codomain is partially
// ordered: zero <= c <= gamma for every positive c, positive colors mutually
// incomparable.
class ColorLabel {
 public:
    static constexpr ColorLabel zero() { return ColorLabel(kZeroCode); }
    static constexpr ColorLabel gamma() { return ColorLabel(kGammaCode); }
    static ColorLabel positive(int c) {
        if (c < 0) throw InputError("positive color index must be >= 0");
        return ColorLabel(c);
    }

    bool is_zero() const { return code_ == kZeroCode; }
    bool is_gamma() const { return code_ == kGammaCode; }
    bool is_positive() const { return code_ >= 0; }

    int index() const {
        if (!is_positive()) throw InputError("sentinel label has no color index");
        return code_;
    }

    friend bool operator==(ColorLabel a, ColorLabel b) { return a.code_ == b.code_; }
    friend bool operator!=(ColorLabel a, ColorLabel b) { return a.code_ != b.code_; }

    // Partial order of the codomain.
    friend bool leq(ColorLabel a, ColorLabel b) {
        return a == b || a.is_zero() || b.is_gamma();
    }

    std::string to_string() const;

 private:
    explicit constexpr ColorLabel(int code) : code_(code) {}

    static constexpr int kZeroCode = -2;
    static constexpr int kGammaCode = -1;

    int code_;
};

using VertexPair = std::pair<int, int>;  // normalized u < v

inline VertexPair make_pair_key(int u, int v) {
    return u < v ? VertexPair{u, v} : VertexPair{v, u};
}

// The input coloring phi: total symmetric map from vertex pairs to a color in
// [0, L) or gamma. Only positively colored pairs are materialized; every
// absent pair is gamma. Immutable once built.
class EdgeColoring {
 public:
    EdgeColoring(int n, int num_colors);

    int n() const { return n_; }
    int num_colors() const { return num_colors_; }

    // Throws InputError on out-of-range vertices or u == v.
    void set_color(int u, int v, int color);

    // phi(uv); u == v is an input error (the binary view owns the diagonal).
    ColorLabel color(int u, int v) const;

    // Positive pairs in lexicographic (u, v) order.
    const std::map<VertexPair, int>& colored_pairs() const { return colored_; }

    std::int64_t num_positive_pairs() const { return static_cast<std::int64_t>(colored_.size()); }
    std::int64_t num_pairs() const { return static_cast<std::int64_t>(n_) * (n_ - 1) / 2; }

    friend bool operator==(const EdgeColoring& a, const EdgeColoring& b) {
        return a.n_ == b.n_ && a.num_colors_ == b.num_colors_ && a.colored_ == b.colored_;
    }

 private:
    void check_vertex(int u) const;

    int n_;
    int num_colors_;
    std::map<VertexPair, int> colored_;
};

// Text format: first line "n L"; one "u v c" line per positive pair with
// u < v; '#' starts a comment; unlisted pairs are gamma.
EdgeColoring parse_graph(std::istream& in);
EdgeColoring load_graph(const std::string& path);
std::string serialize_graph(const EdgeColoring& phi);

// One row of a symmetric pair function: the map v -> label seen from `owner`.
// values[owner] is always zero.
struct VertexRow {
    int owner = 0;
    std::vector<ColorLabel> values;

    int domain_size() const { return static_cast<int>(values.size()); }
};

// Row phi_u of the input coloring.
VertexRow row_of(const EdgeColoring& phi, int u);

// d0(f, g) = |{v : f(v) != g(v)}|.
int d0(const VertexRow& f, const VertexRow& g);

// d0 with disagreements outside K counted twice. K must be a subset of the
// common domain.
int d0_K(const VertexRow& f, const VertexRow& g, const std::vector<int>& K);

}  // namespace ccc
