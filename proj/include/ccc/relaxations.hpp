#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccc/clustering.hpp"
#include "ccc/coloring.hpp"
#include "ccc/lp.hpp"

namespace ccc {

// Fractional solution of the standard relaxation: separation variables
// x_vertex[u][c] and x_edge[pair][c], pairs indexed lexicographically.
struct StandardSolution {
    int n = 0;
    int num_colors = 0;
    std::vector<std::vector<double>> x_vertex;  // [u][c]
    std::vector<std::vector<double>> x_edge;    // [pair_index(u,v)][c]
};

// Lexicographic rank of the pair u < v among all pairs of {0..n-1}.
int pair_index(int n, int u, int v);

// Sparse cluster-LP solution: weight z on (subset, color) keys. Subsets are
// n-bit masks. Entries are kept sorted by (mask, color) with no duplicates
// and strictly positive weights.
struct ClusterDistribution {
    struct Entry {
        std::uint32_t mask = 0;
        int color = 0;
        double z = 0.0;
    };

    int n = 0;
    int num_colors = 0;
    std::vector<Entry> entries;

    // Sum of z over entries whose subset contains u.
    double vertex_mass(int u) const;
    double total_mass() const;
};

// Per-pair aggregated co-clustering mass of a distribution.
struct EdgeAggregates {
    int n = 0;
    int num_colors = 0;
    // same_color_mass[pair][c] = sum of z over entries with S containing the
    // pair, of color c; the complement of the induced x_edge.
    std::vector<std::vector<double>> same_color_mass;
    std::vector<double> total_co_mass;  // per pair, summed over colors
};

EdgeAggregates aggregate_edges(const ClusterDistribution& dist);

// Sorts entries, merges duplicate (mask, color) keys, drops non-positive
// weights. Throws InputError on empty masks or out-of-range colors.
ClusterDistribution normalize_entries(ClusterDistribution dist);

// Empty violations list means feasible within `tol` (default 1e-6 per-vertex
// mass deviation, nonnegative weights).
std::vector<std::string> validate_distribution(const ClusterDistribution& dist,
                                               double tol = 1e-6);

// ---- LP builders -----------------------------------------------------------

// Standard relaxation: edge variables dominate endpoint variables, per-color
// triangle inequalities, and per-vertex color budget sum_c x_u^c = L-1.
// `strengthened` swaps each plain triangle row for its strengthened form
// x_uv^c + x_vw^c >= x_wu^c + x_v^c (one row per middle vertex), which
// implies the plain row.
lp::LinearProgram build_standard_lp(const EdgeColoring& phi, bool strengthened);

// Exact cluster LP by subset enumeration, x-variables substituted away: one
// variable z_S^c per (nonempty mask, color) in (mask, color) order, n
// coverage equalities, z in [0,1]. Throws SizeError when n exceeds the cap.
constexpr int kClusterLpDefaultCap = 12;
lp::LinearProgram build_cluster_lp(const EdgeColoring& phi, int cap = kClusterLpDefaultCap);

struct StandardLpResult {
    double value = 0.0;
    StandardSolution solution;
};

struct ClusterLpResult {
    double value = 0.0;
    ClusterDistribution distribution;
};

StandardLpResult solve_standard(const EdgeColoring& phi, bool strengthened);

// Solves, drops entries below `drop_tol`, and renormalizes so every vertex
// carries mass exactly 1 (scale-down plus cost-free singleton top-up).
ClusterLpResult solve_cluster(const EdgeColoring& phi, int cap = kClusterLpDefaultCap,
                              double drop_tol = 1e-9);

// x_u^c = 1 - sum_{S ni u} z_S^c, x_uv^c = 1 - sum_{S ⊇ uv} z_S^c. Validates
// the distribution first.
StandardSolution induced_standard(const ClusterDistribution& dist);

// Objective of the standard relaxation at a given point.
double standard_objective(const EdgeColoring& phi, const StandardSolution& sol);

// Objective of the cluster LP recomputed from per-pair aggregates.
double cluster_objective(const EdgeColoring& phi, const ClusterDistribution& dist);

// ---- Feasibility reports ---------------------------------------------------

enum class RelaxationKind { kStandard, kStrong, kCluster };

struct ConstraintFamilyReport {
    std::string family;
    double worst_violation = 0.0;
    std::string witness;  // indices of the worst row, empty when clean
};

struct FeasibilityReport {
    std::vector<ConstraintFamilyReport> families;

    double max_violation() const;
    std::string to_string() const;
};

FeasibilityReport check_feasibility(const StandardSolution& sol, const EdgeColoring& phi,
                                    RelaxationKind which);
FeasibilityReport check_feasibility(const ClusterDistribution& dist, const EdgeColoring& phi);

// Integral distribution for a concrete clustering (used by tests and the
// OPT-side of dominance checks).
ClusterDistribution distribution_of(const ChromaticClustering& clustering);

}  // namespace ccc
