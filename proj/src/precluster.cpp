#include "ccc/precluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include "ccc/exact.hpp"
#include "ccc/relaxations.hpp"

namespace ccc {

std::int64_t AdmissibleEdges::e2_size() const {
    std::int64_t total = 0;
    for (const auto& s : e2) total += static_cast<std::int64_t>(s.size());
    return total;
}

ChromaticClustering pivot_heuristic(const EdgeColoring& phi, RngStream& rng) {
    const int n = phi.n();
    const int L = phi.num_colors();
    std::vector<int> remaining(n);
    for (int v = 0; v < n; ++v) remaining[v] = v;

    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    while (!remaining.empty()) {
        size_t pick = rng.uniform_index(remaining.size());
        int pivot = remaining[pick];
        std::vector<int> count(L, 0);
        for (int v : remaining) {
            if (v == pivot) continue;
            ColorLabel col = phi.color(pivot, v);
            if (col.is_positive()) ++count[col.index()];
        }
        int best = 0;
        for (int c = 1; c < L; ++c) {
            if (count[c] > count[best]) best = c;  // ties keep the lowest
        }
        std::vector<int> block = {pivot};
        int color = 0;
        if (count[best] > 0) {
            color = best;
            for (int v : remaining) {
                if (v != pivot && phi.color(pivot, v) == ColorLabel::positive(best)) {
                    block.push_back(v);
                }
            }
        }
        std::vector<int> rest;
        for (int v : remaining) {
            if (std::find(block.begin(), block.end(), v) == block.end()) rest.push_back(v);
        }
        remaining = std::move(rest);
        blocks.push_back(std::move(block));
        colors.push_back(color);
    }
    return ChromaticClustering(n, L, std::move(blocks), std::move(colors));
}

AtomClustering build_atoms(const EdgeColoring& phi, const ChromaticClustering& seed, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
    if (seed.n() != phi.n()) throw InputError("vertex-count mismatch");
    const int n = phi.n();

    std::vector<char> marked(n, 0);
    std::vector<char> cluster_marked(seed.num_blocks(), 0);
    for (int b = 0; b < seed.num_blocks(); ++b) {
        const auto& block = seed.blocks()[b];
        int marks = 0;
        for (int u : block) {
            int disagreements = d0(row_of(phi, u), row_of(seed, u));
            if (disagreements > beta / 2.0 * static_cast<double>(block.size())) {
                marked[u] = 1;
                ++marks;
            }
        }
        if (static_cast<double>(marks) >= beta / 3.0 * static_cast<double>(block.size())) {
            cluster_marked[b] = 1;
        }
    }

    // Marked vertices and whole marked clusters dissolve into singletons;
    // unmarked remainders keep their cluster color.
    std::vector<std::vector<int>> blocks;
    std::vector<int> colors;
    for (int b = 0; b < seed.num_blocks(); ++b) {
        const auto& block = seed.blocks()[b];
        std::vector<int> survivors;
        for (int u : block) {
            if (cluster_marked[b] || marked[u]) {
                blocks.push_back({u});
                colors.push_back(0);
            } else {
                survivors.push_back(u);
            }
        }
        if (!survivors.empty()) {
            blocks.push_back(std::move(survivors));
            colors.push_back(seed.block_colors()[b]);
        }
    }

    AtomClustering atoms{ChromaticClustering(n, phi.num_colors(), std::move(blocks),
                                             std::move(colors)),
                         {}};
    atoms.atom_of.resize(n);
    for (int v = 0; v < n; ++v) atoms.atom_of[v] = atoms.clustering.block_of(v);
    return atoms;
}

namespace {

// w between the atoms of u and p for color c; defined for p == u as well
// (the same-atom value). Cross-atom: colored cross pairs over |K_u||K_p|;
// same atom: ordered internal pairs over |K|^2.
struct AtomPairWeights {
    int num_atoms = 0;
    int num_colors = 0;
    std::vector<std::vector<std::int64_t>> cross;  // [a1 * A + a2][c], a1 != a2 counts unordered
    std::vector<std::vector<std::int64_t>> internal;  // [a][c] unordered

    double w(const AtomClustering& atoms, int u, int p, int c) const {
        int a = atoms.atom_of[u];
        int b = atoms.atom_of[p];
        double prod = static_cast<double>(atoms.atom_size(a)) * atoms.atom_size(b);
        if (a == b) return 2.0 * static_cast<double>(internal[a][c]) / prod;
        return static_cast<double>(cross[static_cast<size_t>(a) * num_atoms + b][c]) / prod;
    }
};

AtomPairWeights atom_pair_weights(const EdgeColoring& phi, const AtomClustering& atoms) {
    AtomPairWeights weights;
    weights.num_atoms = atoms.num_atoms();
    weights.num_colors = phi.num_colors();
    weights.cross.assign(static_cast<size_t>(weights.num_atoms) * weights.num_atoms,
                         std::vector<std::int64_t>(weights.num_colors, 0));
    weights.internal.assign(weights.num_atoms, std::vector<std::int64_t>(weights.num_colors, 0));
    for (const auto& [pair, c] : phi.colored_pairs()) {
        int a = atoms.atom_of[pair.first];
        int b = atoms.atom_of[pair.second];
        if (a == b) {
            ++weights.internal[a][c];
        } else {
            ++weights.cross[static_cast<size_t>(a) * weights.num_atoms + b][c];
            ++weights.cross[static_cast<size_t>(b) * weights.num_atoms + a][c];
        }
    }
    // cross stores ordered atom pairs, so each unordered pair appears once
    // per direction with the same unordered count; halve nothing.
    return weights;
}

}  // namespace

NormalizedDegrees normalized_degrees(const EdgeColoring& phi, const AtomClustering& atoms) {
    const int n = phi.n();
    const int L = phi.num_colors();
    if (atoms.clustering.n() != n) throw InputError("vertex-count mismatch");
    AtomPairWeights weights = atom_pair_weights(phi, atoms);

    NormalizedDegrees degrees;
    degrees.n = n;
    degrees.num_colors = L;
    degrees.w_pair.assign(n * (n - 1) / 2, std::vector<double>(L, 0.0));
    degrees.w_total.assign(n, std::vector<double>(L, 0.0));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int c = 0; c < L; ++c) {
                degrees.w_pair[pair_index(n, u, v)][c] = weights.w(atoms, u, v, c);
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        int a = atoms.atom_of[u];
        for (int c = 0; c < L; ++c) {
            double total = 0.0;
            for (int v = 0; v < n; ++v) {
                if (atoms.atom_of[v] != a) total += weights.w(atoms, u, v, c);
            }
            // |K_u| joins when the atom's color sits below c: always for
            // singletons, otherwise on exact color match.
            if (atoms.is_singleton(a) || atoms.atom_color(a) == c) {
                total += static_cast<double>(atoms.atom_size(a));
            }
            degrees.w_total[u][c] = total;
        }
    }
    return degrees;
}

AdmissibleEdges admissible_edges(const EdgeColoring& phi, const AtomClustering& atoms,
                                 const NormalizedDegrees& degrees, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
    const int n = phi.n();
    const int L = phi.num_colors();
    AtomPairWeights weights = atom_pair_weights(phi, atoms);

    AdmissibleEdges adm;
    adm.n = n;
    adm.num_colors = L;
    adm.e1.assign(L, {});
    adm.e2.assign(L, {});
    for (int c = 0; c < L; ++c) {
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                double wu = degrees.w_total[u][c];
                double wv = degrees.w_total[v][c];
                if (wu > epsilon * wv && wv > epsilon * wu) adm.e1[c].insert({u, v});
            }
        }
    }
    // N^{1;c}_u = K_u ∪ E1-neighbors
    std::vector<std::vector<std::vector<char>>> n1(L,
        std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
    for (int c = 0; c < L; ++c) {
        for (int u = 0; u < n; ++u) {
            for (int p = 0; p < n; ++p) {
                if (atoms.atom_of[p] == atoms.atom_of[u] || adm.in_e1(c, u, p)) n1[c][u][p] = 1;
            }
        }
    }
    for (int c = 0; c < L; ++c) {
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (atoms.atom_of[u] == atoms.atom_of[v]) continue;
                double mass = 0.0;
                for (int p = 0; p < n; ++p) {
                    if (n1[c][u][p] && n1[c][v][p]) {
                        mass += weights.w(atoms, u, p, c) * weights.w(atoms, v, p, c);
                    }
                }
                if (mass > epsilon * (degrees.w_total[u][c] + degrees.w_total[v][c])) {
                    adm.e2[c].insert({u, v});
                }
            }
        }
    }
    return adm;
}

std::vector<int> e2_neighbors(const AdmissibleEdges& adm, int c, int u) {
    std::vector<int> result;
    for (int v = 0; v < adm.n; ++v) {
        if (v != u && adm.in_e2(c, u, v)) result.push_back(v);
    }
    return result;
}

namespace {

void check_base_respects_atoms(const ChromaticClustering& base, const AtomClustering& atoms) {
    for (int a = 0; a < atoms.num_atoms(); ++a) {
        const auto& block = atoms.clustering.blocks()[a];
        for (int v : block) {
            if (base.block_of(v) != base.block_of(block.front())) {
                throw InputError("base clustering breaks atom " + std::to_string(a));
            }
        }
    }
}

// sum over u in K of d0^K(phi_u, color * chi_S): chi_S is `color` on S and
// gamma elsewhere, compared against the raw rows of phi.
std::int64_t sum_d0k_chi(const EdgeColoring& phi, const std::vector<int>& K,
                         const std::vector<char>& in_s, const std::vector<char>& in_k,
                         int color) {
    std::int64_t total = 0;
    for (int u : K) {
        for (int v = 0; v < phi.n(); ++v) {
            ColorLabel f = v == u ? ColorLabel::zero() : phi.color(u, v);
            ColorLabel g = in_s[v] ? ColorLabel::positive(color) : ColorLabel::gamma();
            if (f != g) total += in_k[v] ? 1 : 2;
        }
    }
    return total;
}

ChromaticClustering split_block(const ChromaticClustering& base, const std::vector<int>& part,
                                int block, int part_color) {
    std::vector<std::vector<int>> blocks = base.blocks();
    std::vector<int> colors = base.block_colors();
    std::vector<char> in_part(base.n(), 0);
    for (int v : part) in_part[v] = 1;
    std::vector<int> rest;
    for (int v : blocks[block]) {
        if (!in_part[v]) rest.push_back(v);
    }
    blocks[block] = rest;
    blocks.push_back(part);
    colors.push_back(part_color);
    return ChromaticClustering(base.n(), base.num_colors(), std::move(blocks), std::move(colors));
}

}  // namespace

ChromaticClustering refine_split_atoms(const EdgeColoring& phi, const ChromaticClustering& base,
                                       const AtomClustering& atoms, double epsilon) {
    if (epsilon < 0.0 || epsilon >= 1.0) throw InputError("epsilon must lie in [0, 1)");
    check_base_respects_atoms(base, atoms);
    ChromaticClustering current = base;
    const int max_rounds = (atoms.num_atoms() + 1) * (phi.n() + 1);
    for (int round = 0; round < max_rounds; ++round) {
        bool split = false;
        for (int a = 0; a < atoms.num_atoms() && !split; ++a) {
            const auto& K = atoms.clustering.blocks()[a];
            int b = current.block_of(K.front());
            const auto& C = current.blocks()[b];
            if (C.size() == K.size()) continue;  // atom is the whole block
            int color = current.block_colors()[b];
            std::vector<char> in_k(phi.n(), 0), in_c(phi.n(), 0);
            for (int v : K) in_k[v] = 1;
            for (int v : C) in_c[v] = 1;
            std::int64_t against_k = sum_d0k_chi(phi, K, in_k, in_k, color);
            std::int64_t against_c = sum_d0k_chi(phi, K, in_c, in_k, color);
            if (static_cast<double>(against_k - against_c) <=
                2.0 * epsilon * static_cast<double>(against_k)) {
                current = split_block(current, K, b, color);
                split = true;
            }
        }
        if (!split) return current;
    }
    throw std::logic_error("refine_split_atoms failed to terminate");
}

ChromaticClustering refine_size_filter(const EdgeColoring& phi, const ChromaticClustering& base,
                                       const AtomClustering& atoms, const AdmissibleEdges& e2,
                                       double epsilon1) {
    if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) throw InputError("epsilon1 must lie in (0, 1)");
    check_base_respects_atoms(base, atoms);
    ChromaticClustering current = base;
    const int max_rounds = (atoms.num_atoms() + 1) * (phi.n() + 1);
    for (int round = 0; round < max_rounds; ++round) {
        bool split = false;
        for (int u = 0; u < phi.n() && !split; ++u) {
            int a = atoms.atom_of[u];
            int b = current.block_of(u);
            const auto& C = current.blocks()[b];
            int atom_size = atoms.atom_size(a);
            if (static_cast<int>(C.size()) <= atom_size) continue;
            int c = current.block_colors()[b];
            int degree = static_cast<int>(e2_neighbors(e2, c, u).size());
            if (static_cast<double>(C.size()) <
                static_cast<double>(atom_size) + epsilon1 * static_cast<double>(degree)) {
                current = split_block(current, atoms.clustering.blocks()[a], b, c);
                split = true;
            }
        }
        if (!split) return current;
    }
    throw std::logic_error("refine_size_filter failed to terminate");
}

bool atoms_preserved_in(const AtomClustering& atoms, const ChromaticClustering& clustering) {
    for (int a = 0; a < atoms.num_atoms(); ++a) {
        if (atoms.is_singleton(a)) continue;
        const auto& K = atoms.clustering.blocks()[a];
        int b = clustering.block_of(K.front());
        for (int v : K) {
            if (clustering.block_of(v) != b) return false;
        }
        if (clustering.block_colors()[b] != atoms.atom_color(a)) return false;
    }
    return true;
}

bool atom_local_cost_bound(const EdgeColoring& phi, const AtomClustering& atoms, double beta) {
    for (int a = 0; a < atoms.num_atoms(); ++a) {
        if (atoms.is_singleton(a)) continue;
        for (int u : atoms.clustering.blocks()[a]) {
            int disagreements = d0(row_of(phi, u), row_of(atoms.clustering, u));
            if (!(disagreements < beta * atoms.atom_size(a))) return false;
        }
    }
    return true;
}

PreclusterReport precluster_report(const EdgeColoring& phi, double epsilon, double beta,
                                   RngStream& rng, int oracle_cap) {
    PreclusterReport report;
    report.n = phi.n();
    report.num_colors = phi.num_colors();
    report.beta = beta;
    report.epsilon = epsilon;
    report.seed = rng.seed();

    ChromaticClustering seed = pivot_heuristic(phi, rng);
    report.seed_cost = cost(phi, seed);
    AtomClustering atoms = build_atoms(phi, seed, beta);
    report.atom_count = atoms.num_atoms();
    for (int a = 0; a < atoms.num_atoms(); ++a) {
        report.atom_sizes.push_back(atoms.atom_size(a));
        if (!atoms.is_singleton(a)) ++report.non_singleton_atoms;
    }
    NormalizedDegrees degrees = normalized_degrees(phi, atoms);
    AdmissibleEdges adm = admissible_edges(phi, atoms, degrees, epsilon);
    report.e2_size = adm.e2_size();

    if (phi.n() > oracle_cap) return report;

    ExactResult exact = optimal_cost(phi, oracle_cap);
    report.opt = exact.opt;
    if (exact.opt > 0) {
        report.seed_ratio = static_cast<double>(report.seed_cost) / exact.opt;
        report.e2_eps2_over_opt = static_cast<double>(report.e2_size) * epsilon * epsilon /
                                  static_cast<double>(exact.opt);
    } else {
        report.seed_ratio = report.seed_cost == 0
                                ? 1.0
                                : std::numeric_limits<double>::infinity();
    }

    bool preserved = true;
    for (const auto& optimal : all_optimal(phi, oracle_cap)) {
        if (!atoms_preserved_in(atoms, optimal)) {
            preserved = false;
            break;
        }
    }
    report.atoms_preserved = preserved;
    report.local_cost_bound = atom_local_cost_bound(phi, atoms, beta);

    // near-optimal refinement built from the exact witness
    ChromaticClustering phi1 = refine_split_atoms(phi, exact.witness, atoms, epsilon);
    bool degree_ok = true;
    int coverage_failures = 0;
    for (int u = 0; u < phi.n(); ++u) {
        for (int v = u + 1; v < phi.n(); ++v) {
            ColorLabel col = phi1.binary_view(u, v);
            if (!col.is_positive()) continue;
            int c = col.index();
            if (!(degrees.w_total[u][c] > epsilon * degrees.w_total[v][c]) ||
                !(degrees.w_total[v][c] > epsilon * degrees.w_total[u][c])) {
                degree_ok = false;
            }
            // cross-atom pairs only: same-atom pairs are covered by the atom
            // itself, not by admissible edges
            if (atoms.atom_of[u] != atoms.atom_of[v] && !adm.in_e2(c, u, v)) {
                ++coverage_failures;
            }
        }
    }
    report.degree_inequality = degree_ok;
    report.coverage_failures = coverage_failures;
    return report;
}

namespace {

template <typename T>
std::string opt_str(const std::optional<T>& value) {
    if (!value.has_value()) return "na";
    if constexpr (std::is_same_v<T, bool>) {
        return *value ? "yes" : "no";
    } else {
        std::ostringstream out;
        out << *value;
        return out.str();
    }
}

}  // namespace

std::string PreclusterReport::to_text() const {
    std::ostringstream out;
    out << "n: " << n << "\nL: " << num_colors << "\nbeta: " << beta << "\nepsilon: " << epsilon
        << "\nseed: " << seed << "\nseed_cost: " << seed_cost << "\nopt: " << opt_str(opt)
        << "\nseed_ratio: " << opt_str(seed_ratio) << "\natom_count: " << atom_count
        << "\nnon_singleton_atoms: " << non_singleton_atoms << "\natom_sizes:";
    for (int s : atom_sizes) out << ' ' << s;
    out << "\ne2_size: " << e2_size << "\ne2_eps2_over_opt: " << opt_str(e2_eps2_over_opt)
        << "\natoms_preserved: " << opt_str(atoms_preserved)
        << "\nlocal_cost_bound: " << opt_str(local_cost_bound)
        << "\ndegree_inequality: " << opt_str(degree_inequality)
        << "\ncoverage_failures: " << opt_str(coverage_failures) << "\n";
    return out.str();
}

std::string PreclusterReport::csv_header() const {
    return "n,L,beta,epsilon,seed,seed_cost,opt,seed_ratio,atom_count,non_singleton_atoms,"
           "e2_size,e2_eps2_over_opt,atoms_preserved,local_cost_bound,degree_inequality,"
           "coverage_failures";
}

std::string PreclusterReport::csv_row() const {
    std::ostringstream out;
    out << n << ',' << num_colors << ',' << beta << ',' << epsilon << ',' << seed << ','
        << seed_cost << ',' << opt_str(opt) << ',' << opt_str(seed_ratio) << ',' << atom_count
        << ',' << non_singleton_atoms << ',' << e2_size << ',' << opt_str(e2_eps2_over_opt) << ','
        << opt_str(atoms_preserved) << ',' << opt_str(local_cost_bound) << ','
        << opt_str(degree_inequality) << ',' << opt_str(coverage_failures);
    return out.str();
}

}  // namespace ccc
