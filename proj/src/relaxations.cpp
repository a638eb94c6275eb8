#include "ccc/relaxations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccc {

int pair_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) throw InputError("bad pair");
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

double ClusterDistribution::vertex_mass(int u) const {
    double mass = 0.0;
    for (const auto& e : entries) {
        if (e.mask >> u & 1u) mass += e.z;
    }
    return mass;
}

double ClusterDistribution::total_mass() const {
    double mass = 0.0;
    for (const auto& e : entries) mass += e.z;
    return mass;
}

ClusterDistribution normalize_entries(ClusterDistribution dist) {
    if (dist.n < 1 || dist.n > 31) throw InputError("distribution vertex count out of range");
    for (const auto& e : dist.entries) {
        if (e.mask == 0) throw InputError("empty subset in distribution");
        if (e.mask >= (1u << dist.n)) throw InputError("subset mask exceeds vertex range");
        if (e.color < 0 || e.color >= dist.num_colors) throw InputError("distribution color out of range");
    }
    std::sort(dist.entries.begin(), dist.entries.end(), [](const auto& a, const auto& b) {
        return a.mask != b.mask ? a.mask < b.mask : a.color < b.color;
    });
    std::vector<ClusterDistribution::Entry> merged;
    for (const auto& e : dist.entries) {
        if (!merged.empty() && merged.back().mask == e.mask && merged.back().color == e.color) {
            merged.back().z += e.z;
        } else {
            merged.push_back(e);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.z <= 0.0; }),
                 merged.end());
    dist.entries = std::move(merged);
    return dist;
}

std::vector<std::string> validate_distribution(const ClusterDistribution& dist, double tol) {
    std::vector<std::string> violations;
    if (dist.n < 1 || dist.n > 31) {
        violations.push_back("vertex count out of range");
        return violations;
    }
    for (size_t i = 0; i < dist.entries.size(); ++i) {
        const auto& e = dist.entries[i];
        if (e.mask == 0 || e.mask >= (1u << dist.n)) {
            violations.push_back("entry " + std::to_string(i) + ": bad subset mask");
        }
        if (e.color < 0 || e.color >= dist.num_colors) {
            violations.push_back("entry " + std::to_string(i) + ": color out of range");
        }
        if (e.z < 0.0) violations.push_back("entry " + std::to_string(i) + ": negative weight");
        if (i > 0) {
            const auto& p = dist.entries[i - 1];
            if (p.mask == e.mask && p.color == e.color) {
                violations.push_back("duplicate key (mask " + std::to_string(e.mask) + ", color " +
                                     std::to_string(e.color) + ")");
            }
        }
    }
    for (int u = 0; u < dist.n; ++u) {
        double mass = dist.vertex_mass(u);
        if (std::abs(mass - 1.0) > tol) {
            violations.push_back("vertex " + std::to_string(u) + " mass " + std::to_string(mass));
        }
    }
    return violations;
}

EdgeAggregates aggregate_edges(const ClusterDistribution& dist) {
    EdgeAggregates agg;
    agg.n = dist.n;
    agg.num_colors = dist.num_colors;
    const int pairs = dist.n * (dist.n - 1) / 2;
    agg.same_color_mass.assign(pairs, std::vector<double>(dist.num_colors, 0.0));
    agg.total_co_mass.assign(pairs, 0.0);
    for (const auto& e : dist.entries) {
        for (int u = 0; u < dist.n; ++u) {
            if (!(e.mask >> u & 1u)) continue;
            for (int v = u + 1; v < dist.n; ++v) {
                if (!(e.mask >> v & 1u)) continue;
                int pi = pair_index(dist.n, u, v);
                agg.same_color_mass[pi][e.color] += e.z;
                agg.total_co_mass[pi] += e.z;
            }
        }
    }
    return agg;
}

// ---- standard LP ------------------------------------------------------------

namespace {

int vertex_var(int L, int u, int c) { return u * L + c; }
int edge_var(int n, int L, int pi, int c) { return n * L + pi * L + c; }

// Rows of families (3) and (5); the triangle family is appended by the
// caller (all at once, or lazily during solve_standard).
lp::LinearProgram standard_base(const EdgeColoring& phi) {
    const int n = phi.n();
    const int L = phi.num_colors();
    lp::LinearProgram prog;
    for (int u = 0; u < n; ++u) {
        for (int c = 0; c < L; ++c) prog.add_variable(0.0, 1.0, 0.0);
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int c = 0; c < L; ++c) prog.add_variable(0.0, 1.0, 0.0);
        }
    }
    // objective
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            ColorLabel col = phi.color(u, v);
            if (col.is_gamma()) {
                prog.objective_offset += L;
                for (int c = 0; c < L; ++c) prog.objective[edge_var(n, L, pi, c)] -= 1.0;
            } else {
                prog.objective[edge_var(n, L, pi, col.index())] += 1.0;
            }
        }
    }
    // (3) edge variables dominate both endpoints
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            for (int c = 0; c < L; ++c) {
                int e = edge_var(n, L, pi, c);
                prog.add_row({{{e, 1.0}, {vertex_var(L, u, c), -1.0}}, lp::Relation::kGe, 0.0});
                prog.add_row({{{e, 1.0}, {vertex_var(L, v, c), -1.0}}, lp::Relation::kGe, 0.0});
            }
        }
    }
    // (5) per-vertex color budget
    for (int u = 0; u < n; ++u) {
        lp::Row row;
        for (int c = 0; c < L; ++c) row.coeffs.push_back({vertex_var(L, u, c), 1.0});
        row.rel = lp::Relation::kEq;
        row.rhs = L - 1.0;
        prog.add_row(std::move(row));
    }
    return prog;
}

// One triangle row. Plain: x_e1 + x_e2 >= x_opp; strengthened adds the
// middle vertex term x_mid on the right.
lp::Row triangle_row(int n, int L, int a, int b, int c, int middle, int color, bool strengthened) {
    int other1 = -1, other2 = -1;
    for (int v : {a, b, c}) {
        if (v == middle) continue;
        (other1 < 0 ? other1 : other2) = v;
    }
    int e1 = edge_var(n, L, pair_index(n, middle, other1), color);
    int e2 = edge_var(n, L, pair_index(n, middle, other2), color);
    int opp = edge_var(n, L, pair_index(n, other1, other2), color);
    lp::Row row;
    row.coeffs = {{e1, 1.0}, {e2, 1.0}, {opp, -1.0}};
    if (strengthened) row.coeffs.push_back({vertex_var(L, middle, color), -1.0});
    row.rel = lp::Relation::kGe;
    row.rhs = 0.0;
    return row;
}

StandardSolution unpack_standard(const EdgeColoring& phi, const std::vector<double>& x) {
    const int n = phi.n();
    const int L = phi.num_colors();
    StandardSolution sol;
    sol.n = n;
    sol.num_colors = L;
    sol.x_vertex.assign(n, std::vector<double>(L, 0.0));
    sol.x_edge.assign(n * (n - 1) / 2, std::vector<double>(L, 0.0));
    for (int u = 0; u < n; ++u) {
        for (int c = 0; c < L; ++c) sol.x_vertex[u][c] = x[vertex_var(L, u, c)];
    }
    for (int pi = 0; pi < n * (n - 1) / 2; ++pi) {
        for (int c = 0; c < L; ++c) sol.x_edge[pi][c] = x[edge_var(n, L, pi, c)];
    }
    return sol;
}

}  // namespace

lp::LinearProgram build_standard_lp(const EdgeColoring& phi, bool strengthened) {
    const int n = phi.n();
    const int L = phi.num_colors();
    lp::LinearProgram prog = standard_base(phi);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                for (int color = 0; color < L; ++color) {
                    for (int middle : {a, b, c}) {
                        prog.add_row(triangle_row(n, L, a, b, c, middle, color, strengthened));
                    }
                }
            }
        }
    }
    return prog;
}

StandardLpResult solve_standard(const EdgeColoring& phi, bool strengthened) {
    const int n = phi.n();
    const int L = phi.num_colors();
    lp::LinearProgram prog = standard_base(phi);

    // Lazy separation of the triangle family: solve, add every violated row,
    // repeat. Terminates (finitely many rows) at the optimum of the full LP;
    // a deterministic scan order keeps outputs reproducible.
    lp::LpSolution sol;
    while (true) {
        sol = lp::solve(prog);
        if (sol.status != lp::SolveStatus::kOptimal) {
            throw SolverError("standard relaxation must be feasible and bounded");
        }
        int added = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                for (int c = b + 1; c < n; ++c) {
                    for (int color = 0; color < L; ++color) {
                        for (int middle : {a, b, c}) {
                            lp::Row row = triangle_row(n, L, a, b, c, middle, color, strengthened);
                            double lhs = 0.0;
                            for (const auto& [j, coef] : row.coeffs) lhs += coef * sol.values[j];
                            if (lhs < -1e-9) {
                                prog.add_row(std::move(row));
                                ++added;
                            }
                        }
                    }
                }
            }
        }
        if (added == 0) break;
    }
    return StandardLpResult{sol.objective, unpack_standard(phi, sol.values)};
}

// ---- cluster LP --------------------------------------------------------------

namespace {

int cluster_var(int L, std::uint32_t mask, int c) {
    return static_cast<int>(mask - 1) * L + c;
}

}  // namespace

lp::LinearProgram build_cluster_lp(const EdgeColoring& phi, int cap) {
    const int n = phi.n();
    const int L = phi.num_colors();
    if (n > cap) {
        throw SizeError("cluster LP enumeration capped at n = " + std::to_string(cap) +
                        ", instance has n = " + std::to_string(n));
    }
    const std::uint32_t full = (1u << n) - 1;

    // per-vertex colored neighborhoods as bitmasks
    std::vector<std::vector<std::uint32_t>> nbr(L, std::vector<std::uint32_t>(n, 0));
    for (const auto& [pair, c] : phi.colored_pairs()) {
        nbr[c][pair.first] |= 1u << pair.second;
        nbr[c][pair.second] |= 1u << pair.first;
    }

    // internal pair counts per subset, by color, via lowest-bit recursion
    std::vector<std::vector<int>> colored_in(L, std::vector<int>(full + 1, 0));
    std::vector<int> pairs_in(full + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int low = __builtin_ctz(mask);
        std::uint32_t rest = mask & (mask - 1);
        pairs_in[mask] = pairs_in[rest] + __builtin_popcount(rest);
        for (int c = 0; c < L; ++c) {
            colored_in[c][mask] = colored_in[c][rest] + __builtin_popcount(nbr[c][low] & rest);
        }
    }

    lp::LinearProgram prog;
    prog.objective_offset = static_cast<double>(phi.num_positive_pairs());
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int gamma_in = pairs_in[mask];
        for (int c = 0; c < L; ++c) gamma_in -= colored_in[c][mask];
        for (int c = 0; c < L; ++c) {
            prog.add_variable(0.0, 1.0, static_cast<double>(gamma_in - colored_in[c][mask]));
        }
    }
    for (int u = 0; u < n; ++u) {
        lp::Row row;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            if (!(mask >> u & 1u)) continue;
            for (int c = 0; c < L; ++c) row.coeffs.push_back({cluster_var(L, mask, c), 1.0});
        }
        row.rel = lp::Relation::kEq;
        row.rhs = 1.0;
        prog.add_row(std::move(row));
    }
    return prog;
}

ClusterLpResult solve_cluster(const EdgeColoring& phi, int cap, double drop_tol) {
    const int n = phi.n();
    const int L = phi.num_colors();
    lp::LinearProgram prog = build_cluster_lp(phi, cap);
    lp::LpSolution sol = lp::solve(prog);
    if (sol.status != lp::SolveStatus::kOptimal) {
        throw SolverError("cluster LP must be feasible and bounded");
    }

    ClusterDistribution dist;
    dist.n = n;
    dist.num_colors = L;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        for (int c = 0; c < L; ++c) {
            double z = sol.values[cluster_var(L, mask, c)];
            if (z > drop_tol) dist.entries.push_back({mask, c, z});
        }
    }

    // Renormalize per-vertex mass to 1: one descending scale pass pulls every
    // overfull vertex to mass 1 (scaling only reduces other masses), then
    // cost-free singleton entries absorb the deficits exactly.
    for (int u = 0; u < n; ++u) {
        double mass = dist.vertex_mass(u);
        if (mass > 1.0) {
            double scale = 1.0 / mass;
            for (auto& e : dist.entries) {
                if (e.mask >> u & 1u) e.z *= scale;
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        double deficit = 1.0 - dist.vertex_mass(u);
        if (deficit > 0.0) {
            dist.entries.push_back({1u << u, 0, deficit});
        }
    }
    dist = normalize_entries(std::move(dist));
    return ClusterLpResult{sol.objective, std::move(dist)};
}

StandardSolution induced_standard(const ClusterDistribution& dist) {
    auto violations = validate_distribution(dist);
    if (!violations.empty()) {
        throw InputError("infeasible distribution: " + violations.front());
    }
    EdgeAggregates agg = aggregate_edges(dist);
    StandardSolution sol;
    sol.n = dist.n;
    sol.num_colors = dist.num_colors;
    sol.x_vertex.assign(dist.n, std::vector<double>(dist.num_colors, 0.0));
    sol.x_edge.assign(dist.n * (dist.n - 1) / 2, std::vector<double>(dist.num_colors, 0.0));
    for (int u = 0; u < dist.n; ++u) {
        std::vector<double> mass(dist.num_colors, 0.0);
        for (const auto& e : dist.entries) {
            if (e.mask >> u & 1u) mass[e.color] += e.z;
        }
        for (int c = 0; c < dist.num_colors; ++c) {
            sol.x_vertex[u][c] = std::clamp(1.0 - mass[c], 0.0, 1.0);
        }
    }
    for (int pi = 0; pi < dist.n * (dist.n - 1) / 2; ++pi) {
        for (int c = 0; c < dist.num_colors; ++c) {
            sol.x_edge[pi][c] = std::clamp(1.0 - agg.same_color_mass[pi][c], 0.0, 1.0);
        }
    }
    return sol;
}

double standard_objective(const EdgeColoring& phi, const StandardSolution& sol) {
    const int n = phi.n();
    const int L = phi.num_colors();
    double obj = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            ColorLabel col = phi.color(u, v);
            if (col.is_gamma()) {
                for (int c = 0; c < L; ++c) obj += 1.0 - sol.x_edge[pi][c];
            } else {
                obj += sol.x_edge[pi][col.index()];
            }
        }
    }
    return obj;
}

double cluster_objective(const EdgeColoring& phi, const ClusterDistribution& dist) {
    EdgeAggregates agg = aggregate_edges(dist);
    double obj = 0.0;
    for (int u = 0; u < phi.n(); ++u) {
        for (int v = u + 1; v < phi.n(); ++v) {
            int pi = pair_index(phi.n(), u, v);
            ColorLabel col = phi.color(u, v);
            if (col.is_gamma()) {
                obj += agg.total_co_mass[pi];
            } else {
                obj += 1.0 - agg.same_color_mass[pi][col.index()];
            }
        }
    }
    return obj;
}

// ---- feasibility reports ----------------------------------------------------

double FeasibilityReport::max_violation() const {
    double worst = 0.0;
    for (const auto& f : families) worst = std::max(worst, f.worst_violation);
    return worst;
}

std::string FeasibilityReport::to_string() const {
    std::ostringstream out;
    for (const auto& f : families) {
        out << f.family << ": " << f.worst_violation;
        if (!f.witness.empty()) out << " at " << f.witness;
        out << '\n';
    }
    return out.str();
}

namespace {

void update_family(ConstraintFamilyReport& report, double violation, const std::string& witness) {
    if (violation > report.worst_violation) {
        report.worst_violation = violation;
        report.witness = witness;
    }
}

std::string pair_str(int u, int v, int c) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "} color " + std::to_string(c);
}

}  // namespace

FeasibilityReport check_feasibility(const StandardSolution& sol, const EdgeColoring& phi,
                                    RelaxationKind which) {
    if (which == RelaxationKind::kCluster) {
        throw InputError("cluster feasibility applies to distributions");
    }
    const int n = phi.n();
    const int L = phi.num_colors();
    if (sol.n != n || sol.num_colors != L) throw InputError("solution shape mismatch");

    ConstraintFamilyReport bounds{"bounds [0,1]", 0.0, ""};
    ConstraintFamilyReport dominance{"edge dominates endpoints (3)", 0.0, ""};
    ConstraintFamilyReport triangle{which == RelaxationKind::kStrong
                                        ? "strengthened triangle (13)"
                                        : "triangle (4)",
                                    0.0, ""};
    ConstraintFamilyReport budget{"color budget (5)", 0.0, ""};

    for (int u = 0; u < n; ++u) {
        double sum = 0.0;
        for (int c = 0; c < L; ++c) {
            double x = sol.x_vertex[u][c];
            update_family(bounds, std::max(-x, x - 1.0), "x_vertex " + pair_str(u, u, c));
            sum += x;
        }
        update_family(budget, std::abs(sum - (L - 1.0)), "vertex " + std::to_string(u));
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            for (int c = 0; c < L; ++c) {
                double xe = sol.x_edge[pi][c];
                update_family(bounds, std::max(-xe, xe - 1.0), "x_edge " + pair_str(u, v, c));
                update_family(dominance, sol.x_vertex[u][c] - xe, pair_str(u, v, c));
                update_family(dominance, sol.x_vertex[v][c] - xe, pair_str(v, u, c));
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int d = b + 1; d < n; ++d) {
                for (int c = 0; c < L; ++c) {
                    for (int middle : {a, b, d}) {
                        int o1 = middle == a ? b : a;
                        int o2 = middle == d ? b : d;
                        double lhs = sol.x_edge[pair_index(n, middle, o1)][c] +
                                     sol.x_edge[pair_index(n, middle, o2)][c] -
                                     sol.x_edge[pair_index(n, o1, o2)][c];
                        if (which == RelaxationKind::kStrong) lhs -= sol.x_vertex[middle][c];
                        update_family(triangle, -lhs,
                                      "triple {" + std::to_string(a) + "," + std::to_string(b) +
                                          "," + std::to_string(d) + "} middle " +
                                          std::to_string(middle) + " color " + std::to_string(c));
                    }
                }
            }
        }
    }
    return FeasibilityReport{{bounds, dominance, triangle, budget}};
}

FeasibilityReport check_feasibility(const ClusterDistribution& dist, const EdgeColoring& phi) {
    if (dist.n != phi.n() || dist.num_colors != phi.num_colors()) {
        throw InputError("distribution shape mismatch");
    }
    ConstraintFamilyReport nonneg{"z >= 0 (11)", 0.0, ""};
    ConstraintFamilyReport coverage{"vertex coverage (8)+(9)", 0.0, ""};
    for (size_t i = 0; i < dist.entries.size(); ++i) {
        update_family(nonneg, -dist.entries[i].z, "entry " + std::to_string(i));
    }
    for (int u = 0; u < dist.n; ++u) {
        update_family(coverage, std::abs(dist.vertex_mass(u) - 1.0),
                      "vertex " + std::to_string(u));
    }
    return FeasibilityReport{{nonneg, coverage}};
}

ClusterDistribution distribution_of(const ChromaticClustering& clustering) {
    if (clustering.n() > 31) throw SizeError("mask representation capped at 31 vertices");
    ClusterDistribution dist;
    dist.n = clustering.n();
    dist.num_colors = clustering.num_colors();
    for (int b = 0; b < clustering.num_blocks(); ++b) {
        std::uint32_t mask = 0;
        for (int v : clustering.blocks()[b]) mask |= 1u << v;
        dist.entries.push_back({mask, clustering.block_colors()[b], 1.0});
    }
    return normalize_entries(std::move(dist));
}

}  // namespace ccc
