#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ccc/errors.hpp"

namespace ccc::lp {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLe, kEq, kGe };

struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
    Relation rel = Relation::kLe;
    double rhs = 0.0;
};

// Minimization problem over bounded variables. Objective value reported to
// callers includes `objective_offset`.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> lower;      // finite
    std::vector<double> upper;      // finite or +inf
    std::vector<double> objective;  // minimize
    double objective_offset = 0.0;
    std::vector<Row> rows;

    int add_variable(double lo, double hi, double obj) {
        lower.push_back(lo);
        upper.push_back(hi);
        objective.push_back(obj);
        return num_vars++;
    }

    void add_row(Row row) { rows.push_back(std::move(row)); }

    // Throws InputError on NaN coefficients, bad indices, or crossed bounds.
    void validate() const;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
    SolveStatus status = SolveStatus::kOptimal;
    double objective = 0.0;       // includes the offset
    std::vector<double> values;   // primal values, empty unless optimal
    int iterations = 0;
};

struct SolverOptions {
    double pivot_tol = 1e-9;        // reject smaller pivot elements
    double feas_tol = 1e-7;         // bound/constraint feasibility
    double opt_tol = 1e-7;          // reduced-cost threshold
    int refactor_interval = 64;     // eta updates between refactorizations
    std::int64_t max_iterations = 2'000'000;
};

// Bounded-variable revised simplex, Dantzig pricing with a permanent switch
// to Bland's rule after a stall (anticycling). Deterministic: identical
// inputs give bit-identical outputs. Throws SolverError on numerical
// breakdown, never on infeasible/unbounded inputs.
LpSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

// Worst scaled constraint residual and bound violation of a candidate point.
double max_residual(const LinearProgram& lp, const std::vector<double>& x);

// CPLEX LP text format, for offline cross-checking with external solvers.
std::string to_lp_text(const LinearProgram& lp);

}  // namespace ccc::lp
