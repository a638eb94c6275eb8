#include "ccc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ccc/rounding.hpp"

namespace ccc::analysis {

namespace {

constexpr double kViolationTol = 1e-9;

void check_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw InputError(std::string(name) + " must lie in [0, 1]");
    }
}

void check_alpha(double alpha) {
    if (!(alpha >= 1.5 && alpha < 2.0)) throw InputError("alpha must lie in [1.5, 2)");
}

double prefactor(double alpha) { return alpha / (1.0 - alpha / 2.0); }

// greedy rounding probability per sign
double greedy_p(Sign s) { return s == Sign::kPlus ? 0.0 : 1.0; }

// adjacent edge indices for each edge of the triple (uv, vw, wu): the two
// edges meeting at the pivot opposite to it
constexpr int kAdjacent[3][2] = {{2, 1}, {0, 2}, {1, 0}};

}  // namespace

double g(double x) {
    check_unit(x, "g argument");
    return x * x / (1.0 + x);
}

double h(double x) {
    check_unit(x, "h argument");
    return (3.0 - 2.0 * x) * x / (2.0 * (2.0 - x));
}

char sign_char(Sign s) {
    switch (s) {
        case Sign::kPlus: return '+';
        case Sign::kMinus: return '-';
        default: return 'o';
    }
}

double budget_b(Sign sign, double x, double m, double alpha) {
    check_alpha(alpha);
    switch (sign) {
        case Sign::kPlus:
            check_unit(x, "budget x");
            return prefactor(alpha) * g(x);
        case Sign::kMinus:
            check_unit(x, "budget x");
            return prefactor(alpha) * h(1.0 - x);
        default:
            if (!(m >= 0.5 && m <= 1.0)) throw InputError("budget m must lie in [1/2, 1]");
            return prefactor(alpha) * g(m);
    }
}

void TriangleConfig::validate() const {
    for (double x : xs) check_unit(x, "triangle coordinate");
    for (int k = 0; k < 3; ++k) {
        if (xs[k] > xs[(k + 1) % 3] + xs[(k + 2) % 3] + 1e-12) {
            throw InputError("triangle inequality violated by configuration");
        }
    }
}

double alg_triangle(const TriangleConfig& config) {
    config.validate();
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        double p1 = greedy_p(config.signs[kAdjacent[k][0]]);
        double p2 = greedy_p(config.signs[kAdjacent[k][1]]);
        switch (config.signs[k]) {
            case Sign::kPlus: total += p1 * (1.0 - p2) + (1.0 - p1) * p2; break;
            case Sign::kMinus: total += (1.0 - p1) * (1.0 - p2); break;
            case Sign::kCirc: total += 1.0 - p1 * p2; break;
        }
    }
    return total;
}

double lp_triangle(const TriangleConfig& config, double alpha) {
    config.validate();
    check_alpha(alpha);
    double m = 0.5;
    for (double x : config.xs) m = std::max(m, 1.0 - x);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        double p1 = greedy_p(config.signs[kAdjacent[k][0]]);
        double p2 = greedy_p(config.signs[kAdjacent[k][1]]);
        total += (1.0 - p1 * p2) * budget_b(config.signs[k], config.xs[k], m, alpha);
    }
    return total;
}

namespace {

int grid_steps(double step) {
    if (!(step > 0.0 && step <= 0.1)) throw InputError("step must lie in (0, 0.1]");
    int k = static_cast<int>(std::llround(1.0 / step));
    if (std::abs(k * step - 1.0) > 1e-9) throw InputError("step must divide 1");
    return k;
}

// clamp each coordinate into the interval admitted by the other two
void project_feasible(std::array<double, 3>& xs) {
    for (int pass = 0; pass < 3; ++pass) {
        for (int k = 0; k < 3; ++k) {
            double a = xs[(k + 1) % 3];
            double b = xs[(k + 2) % 3];
            xs[k] = std::clamp(xs[k], std::max(0.0, std::abs(a - b)), std::min(1.0, a + b));
        }
    }
}

bool is_feasible(const std::array<double, 3>& xs) {
    for (double x : xs) {
        if (!(x >= 0.0 && x <= 1.0)) return false;
    }
    for (int k = 0; k < 3; ++k) {
        if (xs[k] > xs[(k + 1) % 3] + xs[(k + 2) % 3] + 1e-12) return false;
    }
    return true;
}

void record_point(TriangleReport& report, const TriangleConfig& config, double alg, double lp,
                  bool record_tight) {
    double gap = lp - alg;
    if (report.points_checked == 0 || gap < report.min_gap) report.min_gap = gap;
    ++report.points_checked;
    if (gap < -kViolationTol) {
        report.violations.push_back({config.signs, config.xs, alg, lp, gap});
    } else if (record_tight && gap <= kViolationTol) {
        report.tight_points.push_back({config.signs, config.xs, alg, lp, gap});
    }
}

}  // namespace

TriangleReport verify_triangle_inequality(double alpha, double step) {
    check_alpha(alpha);
    const int k = grid_steps(step);
    const std::array<std::array<Sign, 3>, 4> patterns = {{
        {Sign::kPlus, Sign::kPlus, Sign::kMinus},
        {Sign::kPlus, Sign::kPlus, Sign::kCirc},
        {Sign::kPlus, Sign::kMinus, Sign::kCirc},
        {Sign::kPlus, Sign::kCirc, Sign::kCirc},
    }};

    TriangleReport report;
    for (const auto& signs : patterns) {
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                for (int l = 0; l <= k; ++l) {
                    // integer-exact triangle feasibility on the grid
                    if (i > j + l || j > i + l || l > i + j) continue;
                    TriangleConfig config{signs, {i * step, j * step, l * step}};
                    record_point(report, config, alg_triangle(config), lp_triangle(config, alpha),
                                 /*record_tight=*/true);
                }
            }
        }
    }

    // probe around every near-tight grid point to catch off-grid dips
    const double delta = step / 10.0;
    std::vector<TrianglePoint> tight = report.tight_points;
    for (const auto& point : tight) {
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                for (int dl = -1; dl <= 1; ++dl) {
                    if (di == 0 && dj == 0 && dl == 0) continue;
                    std::array<double, 3> xs = {point.xs[0] + di * delta, point.xs[1] + dj * delta,
                                                point.xs[2] + dl * delta};
                    project_feasible(xs);
                    if (!is_feasible(xs)) continue;
                    TriangleConfig config{point.signs, xs};
                    record_point(report, config, alg_triangle(config), lp_triangle(config, alpha),
                                 /*record_tight=*/false);
                }
            }
        }
    }
    return report;
}

std::string TriangleReport::to_csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "signs,x,y,z,alg,lp,gap\n";
    auto emit = [&](const TrianglePoint& p) {
        out << sign_char(p.signs[0]) << sign_char(p.signs[1]) << sign_char(p.signs[2]) << ','
            << p.xs[0] << ',' << p.xs[1] << ',' << p.xs[2] << ',' << p.alg << ',' << p.lp << ','
            << p.gap << '\n';
    };
    for (const auto& p : violations) emit(p);
    for (const auto& p : tight_points) emit(p);
    return out.str();
}

namespace {

// grid over [lo, hi] at multiples of `step`, both boundaries always included
std::vector<double> boxed_grid(double lo, double hi, double step, int k) {
    std::vector<double> values = {lo};
    for (int i = 0; i <= k; ++i) {
        double v = i * step;
        if (v > lo + 1e-15 && v < hi - 1e-15) values.push_back(v);
    }
    if (hi > lo + 1e-15) values.push_back(hi);
    return values;
}

void record_charge(ChargingReport& report, ChargeCase cc, double x, double aux, double m,
                   double lhs, double rhs) {
    double margin = rhs - lhs;
    if (report.points_checked == 0 || margin < report.min_margin) report.min_margin = margin;
    ++report.points_checked;
    if (lhs - rhs > kViolationTol) {
        report.violations.push_back({cc, x, aux, m, lhs, rhs});
    }
}

}  // namespace

ChargingReport verify_charging(double alpha, double step) {
    check_alpha(alpha);
    const int k = grid_steps(step);
    ChargingReport report;

    // colored pair whose color matches the pivot class: mixture of the
    // cluster-based violation probability and the + budget, against alpha x
    for (int i = 0; i <= k; ++i) {
        double x = i * step;
        double b = budget_b(Sign::kPlus, x, 0.5, alpha);
        for (double r : boxed_grid(0.0, x, step, k)) {
            double lhs = alpha / 2.0 * (2.0 * x - r) / (1.0 + x - r) + (1.0 - alpha / 2.0) * b;
            record_charge(report, ChargeCase::kColoredMatch, x, r, 0.0, lhs, alpha * x);
        }
    }
    // gamma pair: s = total co-clustering mass >= 1 - x^c
    for (int i = 0; i <= k; ++i) {
        double x = i * step;
        double b = budget_b(Sign::kMinus, x, 0.5, alpha);
        for (double s : boxed_grid(1.0 - x, 1.0, step, k)) {
            double lhs = alpha / 2.0 * s / (2.0 - s) + (1.0 - alpha / 2.0) * b;
            record_charge(report, ChargeCase::kGamma, x, s, 0.0, lhs, alpha * s);
        }
    }
    // colored pair of a different color: the circ budget depends on
    // m <= x^phi, and x^phi >= 1/2
    for (double x : boxed_grid(0.5, 1.0, step, k)) {
        for (double r : boxed_grid(0.0, x, step, k)) {
            double base = alpha / 2.0 * (2.0 * x - r) / (1.0 + x - r);
            for (double m : boxed_grid(0.5, x, step, k)) {
                double lhs = base + (1.0 - alpha / 2.0) * budget_b(Sign::kCirc, 0.0, m, alpha);
                record_charge(report, ChargeCase::kColoredMismatch, x, r, m, lhs, alpha * x);
            }
        }
    }
    return report;
}

std::string ChargingReport::to_csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "case,x,aux,m,lhs,rhs\n";
    for (const auto& p : violations) {
        const char* name = p.charge_case == ChargeCase::kColoredMatch ? "colored_match"
                           : p.charge_case == ChargeCase::kGamma      ? "gamma"
                                                                      : "colored_mismatch";
        out << name << ',' << p.x << ',' << p.aux << ',' << p.m << ',' << p.lhs << ',' << p.rhs
            << '\n';
    }
    return out.str();
}

double cluster_violation_probability(EdgeKind kind, int colored_index,
                                     const std::vector<double>& x_by_color) {
    double s = 0.0;
    for (double x : x_by_color) {
        if (!(x >= -1e-9 && x <= 1.0 + 1e-9)) throw InputError("x value out of [0, 1]");
        s += 1.0 - std::clamp(x, 0.0, 1.0);
    }
    if (s > 1.0 + 1e-9) throw InputError("total co-clustering mass exceeds 1");
    s = std::min(s, 1.0);
    if (kind == EdgeKind::kGamma) {
        return s / (2.0 - s);
    }
    if (colored_index < 0 || colored_index >= static_cast<int>(x_by_color.size())) {
        throw InputError("colored index out of range");
    }
    double co = 1.0 - std::clamp(x_by_color[colored_index], 0.0, 1.0);
    return 1.0 - co / (2.0 - s);
}

bool MonteCarloReport::any_flagged() const {
    for (const auto& p : pairs) {
        if (p.flagged) return true;
    }
    return false;
}

std::string MonteCarloReport::to_csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "u,v,predicted,empirical,z\n";
    for (const auto& p : pairs) {
        out << p.u << ',' << p.v << ',' << p.predicted << ',' << p.empirical << ',' << p.z_score
            << '\n';
    }
    return out.str();
}

MonteCarloReport montecarlo_check(const EdgeColoring& phi, const ClusterDistribution& dist,
                                  int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("trials must be >= 1");
    auto violations = validate_distribution(dist);
    if (!violations.empty()) {
        throw InputError("infeasible distribution: " + violations.front());
    }
    const int n = phi.n();
    EdgeAggregates agg = aggregate_edges(dist);

    std::vector<std::int64_t> violated(n * (n - 1) / 2, 0);
    RngStream root(seed);
    for (int t = 0; t < trials; ++t) {
        RngStream stream = root.substream(static_cast<std::uint64_t>(t));
        ChromaticClustering clustering = round_cluster_based(phi, dist, stream);
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                ColorLabel col = phi.color(u, v);
                bool bad;
                if (col.is_gamma()) {
                    bad = clustering.co_clustered(u, v);
                } else {
                    bad = clustering.binary_view(u, v) != col;
                }
                if (bad) ++violated[pair_index(n, u, v)];
            }
        }
    }

    MonteCarloReport report;
    report.trials = trials;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            ColorLabel col = phi.color(u, v);
            std::vector<double> xs(phi.num_colors());
            for (int c = 0; c < phi.num_colors(); ++c) xs[c] = 1.0 - agg.same_color_mass[pi][c];
            double predicted = cluster_violation_probability(
                col.is_gamma() ? EdgeKind::kGamma : EdgeKind::kColored,
                col.is_gamma() ? -1 : col.index(), xs);
            double empirical = static_cast<double>(violated[pi]) / trials;
            double se = std::sqrt(std::max(0.0, predicted * (1.0 - predicted) / trials));
            PairCheck check{u, v, predicted, empirical, 0.0, false};
            if (se == 0.0) {
                check.z_score = empirical == predicted ? 0.0
                                                       : std::numeric_limits<double>::infinity();
            } else {
                check.z_score = (empirical - predicted) / se;
            }
            check.flagged = std::abs(check.z_score) > 3.0;
            report.pairs.push_back(check);
        }
    }
    return report;
}

}  // namespace ccc::analysis
