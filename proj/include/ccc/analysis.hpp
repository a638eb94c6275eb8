#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ccc/relaxations.hpp"
#include "ccc/rng.hpp"

namespace ccc::analysis {

// g(x) = x^2 / (1 + x), increasing and convex on [0, 1].
double g(double x);

// h(x) = (3 - 2x) x / (2 (2 - x)), increasing on [0, 1].
double h(double x);

enum class Sign { kPlus, kMinus, kCirc };

char sign_char(Sign s);

// Charging factor b of the triangle analysis. For kCirc the relevant value
// is m = max{1/2, 1-x, 1-y, 1-z} of the whole triple; x is ignored there.
//   b = alpha/(1 - alpha/2) * { g(x) | +, h(1-x) | -, g(m) | circ }.
double budget_b(Sign sign, double x, double m, double alpha);

// One vertex triple of the pivot-stage analysis: edge signs and fractional
// values for (uv, vw, wu), all within the per-color triangle inequality.
struct TriangleConfig {
    std::array<Sign, 3> signs;
    std::array<double, 3> xs;

    void validate() const;  // throws InputError
};

// Expected violations charged to the triple, conditioned on each pivot, with
// the greedy rounding probabilities (0 on +, 1 on - and circ).
double alg_triangle(const TriangleConfig& config);

// Budgeted LP charge of the triple: sum over edges of (1 - p_uw p_vw) b(uv).
double lp_triangle(const TriangleConfig& config, double alpha);

struct TrianglePoint {
    std::array<Sign, 3> signs;
    std::array<double, 3> xs;
    double alg = 0.0;
    double lp = 0.0;
    double gap = 0.0;  // lp - alg
};

struct TriangleReport {
    std::vector<TrianglePoint> violations;   // gap < -1e-9
    std::vector<TrianglePoint> tight_points; // gap <= 1e-9
    double min_gap = 0.0;
    std::int64_t points_checked = 0;

    std::string to_csv() const;  // signs,x,y,z,alg,lp,gap
};

// Sweeps the four sign patterns with nonzero ALG over the feasible grid
// {0, step, ..., 1}^3, then re-probes every near-tight point at ±step/10
// perturbations projected back to feasibility.
TriangleReport verify_triangle_inequality(double alpha, double step);

enum class ChargeCase { kColoredMatch, kGamma, kColoredMismatch };

struct ChargePoint {
    ChargeCase charge_case;
    double x = 0.0;  // x^phi (colored) or x^c (gamma)
    double aux = 0.0;  // r (colored), s (gamma)
    double m = 0.0;    // mismatch case only
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ChargingReport {
    std::vector<ChargePoint> violations;  // lhs - rhs > 1e-9
    double min_margin = 0.0;              // min of rhs - lhs over the sweep
    std::int64_t points_checked = 0;

    std::string to_csv() const;
};

// Sweeps the three per-edge charging inequalities over their feasible boxes
// (grid of `step`, boundaries always included).
ChargingReport verify_charging(double alpha, double step);

enum class EdgeKind { kColored, kGamma };

// Violation probability of a pair under cluster-based rounding, from the
// per-color co-clustering masses 1 - x^c. For gamma pairs this is the
// co-clustering probability s/(2-s); for a pair colored c' it is
// 1 - (1-x^{c'})/(2-s).
double cluster_violation_probability(EdgeKind kind, int colored_index,
                                     const std::vector<double>& x_by_color);

struct PairCheck {
    int u = 0;
    int v = 0;
    double predicted = 0.0;
    double empirical = 0.0;
    double z_score = 0.0;
    bool flagged = false;  // |z| > 3
};

struct MonteCarloReport {
    std::vector<PairCheck> pairs;
    int trials = 0;

    bool any_flagged() const;
    std::string to_csv() const;
};

// Simulates cluster-based rounding `trials` times and compares per-pair
// violation frequencies against the closed forms above.
MonteCarloReport montecarlo_check(const EdgeColoring& phi, const ClusterDistribution& dist,
                                  int trials, std::uint64_t seed);

}  // namespace ccc::analysis
