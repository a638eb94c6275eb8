#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"
#include "ccc/rng.hpp"

namespace ccc {

// Atom decomposition: the clustering Phi^p whose blocks are the atoms, plus
// the vertex -> atom map. A non-singleton atom's color is its block color;
// singleton atoms sit below every color in the codomain order.
struct AtomClustering {
    ChromaticClustering clustering;  // blocks are the atoms
    std::vector<int> atom_of;        // vertex -> block index

    int atom_size(int a) const { return clustering.block_size(a); }
    bool is_singleton(int a) const { return atom_size(a) == 1; }
    int atom_color(int a) const { return clustering.block_colors()[a]; }
    int num_atoms() const { return clustering.num_blocks(); }
};

// Normalized degrees over atoms: w_pair[pair][c] is the c-colored fraction of
// the atom-product, w_total[u][c] adds |K_u| when the atom's color sits below
// c in the codomain order (singleton atoms always, otherwise on color match).
struct NormalizedDegrees {
    int n = 0;
    int num_colors = 0;
    std::vector<std::vector<double>> w_pair;   // [pair_index][c]
    std::vector<std::vector<double>> w_total;  // [u][c]
};

// Admissible pair sets per color. A pair may appear under several colors.
struct AdmissibleEdges {
    int n = 0;
    int num_colors = 0;
    std::vector<std::set<VertexPair>> e1;  // per color
    std::vector<std::set<VertexPair>> e2;

    std::int64_t e2_size() const;
    bool in_e1(int c, int u, int v) const { return e1[c].count(make_pair_key(u, v)) > 0; }
    bool in_e2(int c, int u, int v) const { return e2[c].count(make_pair_key(u, v)) > 0; }
};

// Random-pivot constant-factor seed clustering: the pivot joins all unclustered
// neighbors of its majority color (ties to the lowest color; singleton when no
// positive neighbor remains).
ChromaticClustering pivot_heuristic(const EdgeColoring& phi, RngStream& rng);

// Atom construction: marks vertices with local disagreement above (beta/2)|C|,
// marks clusters with marked fraction >= beta/3, dissolves marked clusters and
// marked vertices into singletons. beta must lie in (0, 1).
AtomClustering build_atoms(const EdgeColoring& phi, const ChromaticClustering& seed, double beta);

NormalizedDegrees normalized_degrees(const EdgeColoring& phi, const AtomClustering& atoms);

// E1: mutual degree comparability (symmetrized). E2: cross-atom pairs whose
// shared E1-neighborhood mass clears epsilon (w_u^c + w_v^c). The N-sets
// include the atom itself: N^{i;c}_u = K_u ∪ {v : uv in E^{i;c}}.
AdmissibleEdges admissible_edges(const EdgeColoring& phi, const AtomClustering& atoms,
                                 const NormalizedDegrees& degrees, double epsilon);

// N^{2;c}_u \ K_u, the E2-neighbors of u under color c.
std::vector<int> e2_neighbors(const AdmissibleEdges& adm, int c, int u);

// Splits atoms off their blocks while the relative cost of the split stays
// within the 2*epsilon guard. `base` must keep every atom inside one block.
ChromaticClustering refine_split_atoms(const EdgeColoring& phi, const ChromaticClustering& base,
                                       const AtomClustering& atoms, double epsilon);

// Splits K_u off C while |K_u| < |C| < |K_u| + epsilon1 |N^{2;c}_u \ K_u|,
// with c the color of C.
ChromaticClustering refine_size_filter(const EdgeColoring& phi, const ChromaticClustering& base,
                                       const AtomClustering& atoms, const AdmissibleEdges& e2,
                                       double epsilon1);

struct PreclusterReport {
    int n = 0;
    int num_colors = 0;
    double beta = 0.0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    std::int64_t seed_cost = 0;
    int atom_count = 0;
    int non_singleton_atoms = 0;
    std::vector<int> atom_sizes;
    std::int64_t e2_size = 0;

    // OPT-dependent fields; absent when n exceeds the oracle cap.
    std::optional<std::int64_t> opt;
    std::optional<double> seed_ratio;          // seed_cost / OPT (1 when OPT = 0 and seed 0)
    std::optional<double> e2_eps2_over_opt;    // |E2| eps^2 / OPT, absent when OPT = 0
    std::optional<bool> atoms_preserved;       // Lemma-style preservation over all optima
    std::optional<bool> local_cost_bound;      // d0(phi_u, Phi^p_u) < beta |K| on non-singletons
    std::optional<bool> degree_inequality;     // intra-block colored pairs of Phi_1^*
    std::optional<int> coverage_failures;      // pairs of Phi_1^* missing from E^{2;c}

    std::string to_text() const;
    std::string csv_header() const;
    std::string csv_row() const;
};

// Full pipeline (pivot seed -> atoms -> degrees -> admissible edges) plus the
// oracle-backed lemma checks when n is within `oracle_cap`.
PreclusterReport precluster_report(const EdgeColoring& phi, double epsilon, double beta,
                                   RngStream& rng, int oracle_cap = 11);

// Direct checks, exposed for tests --------------------------------------------

// Every non-singleton atom inside one block of `clustering` with equal color.
bool atoms_preserved_in(const AtomClustering& atoms, const ChromaticClustering& clustering);

// Lemma bound d0(phi_u, Phi^p_u) < beta |K_u| for all u in non-singleton atoms.
bool atom_local_cost_bound(const EdgeColoring& phi, const AtomClustering& atoms, double beta);

}  // namespace ccc
