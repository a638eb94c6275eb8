#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "ccc/lp.hpp"
#include "ccc/rng.hpp"

using namespace ccc;
using namespace ccc::lp;

namespace {

// Independent optimum oracle for tiny LPs: enumerate every choice of
// `num_vars` active constraints (rows as equalities plus variable bounds),
// solve the square system by Gaussian elimination, keep feasible vertices.
// Requires a bounded feasible region, which box bounds guarantee.
struct VertexOracle {
    const LinearProgram& prog;

    bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                      std::vector<double>& x) const {
        const int n = prog.num_vars;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            for (int i = k + 1; i < n; ++i) {
                if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
            }
            if (std::abs(a[piv][k]) < 1e-10) return false;
            std::swap(a[k], a[piv]);
            std::swap(b[k], b[piv]);
            for (int i = k + 1; i < n; ++i) {
                double f = a[i][k] / a[k][k];
                for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
                b[i] -= f * b[k];
            }
        }
        x.assign(n, 0.0);
        for (int i = n - 1; i >= 0; --i) {
            double v = b[i];
            for (int j = i + 1; j < n; ++j) v -= a[i][j] * x[j];
            x[i] = v / a[i][i];
        }
        return true;
    }

    bool feasible(const std::vector<double>& x) const {
        for (int j = 0; j < prog.num_vars; ++j) {
            if (x[j] < prog.lower[j] - 1e-7 || x[j] > prog.upper[j] + 1e-7) return false;
        }
        for (const auto& row : prog.rows) {
            double lhs = 0.0;
            for (const auto& [j, a] : row.coeffs) lhs += a * x[j];
            switch (row.rel) {
                case Relation::kLe:
                    if (lhs > row.rhs + 1e-7) return false;
                    break;
                case Relation::kGe:
                    if (lhs < row.rhs - 1e-7) return false;
                    break;
                case Relation::kEq:
                    if (std::abs(lhs - row.rhs) > 1e-7) return false;
                    break;
            }
        }
        return true;
    }

    // best objective over all vertices, NaN when infeasible
    double best() const {
        const int n = prog.num_vars;
        // candidate hyperplanes: each row at equality, each bound
        std::vector<std::pair<std::vector<double>, double>> planes;
        for (const auto& row : prog.rows) {
            std::vector<double> coeffs(n, 0.0);
            for (const auto& [j, a] : row.coeffs) coeffs[j] += a;
            planes.push_back({coeffs, row.rhs});
        }
        for (int j = 0; j < n; ++j) {
            std::vector<double> lo(n, 0.0), hi(n, 0.0);
            lo[j] = 1.0;
            planes.push_back({lo, prog.lower[j]});
            if (std::isfinite(prog.upper[j])) {
                hi[j] = 1.0;
                planes.push_back({hi, prog.upper[j]});
            }
        }
        double best_obj = std::numeric_limits<double>::quiet_NaN();
        std::vector<int> pick(n, 0);
        // iterate over all n-subsets of planes
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        const int total = static_cast<int>(planes.size());
        if (total < n) return best_obj;
        while (true) {
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (int i : idx) {
                a.push_back(planes[i].first);
                b.push_back(planes[i].second);
            }
            std::vector<double> x;
            if (solve_square(a, b, x) && feasible(x)) {
                double obj = prog.objective_offset;
                for (int j = 0; j < n; ++j) obj += prog.objective[j] * x[j];
                if (std::isnan(best_obj) || obj < best_obj) best_obj = obj;
            }
            int k = n - 1;
            while (k >= 0 && idx[k] == total - n + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int i = k + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
        }
        return best_obj;
    }
};

}  // namespace

TEST_CASE("one-variable examples") {
    LinearProgram prog;
    prog.add_variable(0.0, 10.0, 1.0);
    prog.add_row({{{0, 1.0}}, Relation::kGe, 3.0});
    LpSolution sol = solve(prog);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.values[0] == doctest::Approx(3.0).epsilon(1e-9));

    LinearProgram neg;
    neg.add_variable(0.0, kInfinity, -1.0);
    neg.add_row({{{0, 1.0}}, Relation::kLe, 1.0});
    sol = solve(neg);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(sol.values[0] == doctest::Approx(1.0).epsilon(1e-9));

    LinearProgram infeasible;
    infeasible.add_variable(0.0, kInfinity, 0.0);
    infeasible.add_row({{{0, 1.0}}, Relation::kGe, 2.0});
    infeasible.add_row({{{0, 1.0}}, Relation::kLe, 1.0});
    CHECK(solve(infeasible).status == SolveStatus::kInfeasible);
}

TEST_CASE("unbounded detection") {
    LinearProgram prog;
    prog.add_variable(0.0, kInfinity, -1.0);
    prog.add_variable(0.0, 1.0, 0.0);
    prog.add_row({{{1, 1.0}}, Relation::kLe, 1.0});
    CHECK(solve(prog).status == SolveStatus::kUnbounded);
}

TEST_CASE("input validation") {
    LinearProgram prog;
    prog.add_variable(0.0, 1.0, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(solve(prog), InputError);

    LinearProgram crossed;
    crossed.add_variable(1.0, 0.0, 0.0);
    CHECK_THROWS_AS(solve(crossed), InputError);

    LinearProgram bad_index;
    bad_index.add_variable(0.0, 1.0, 0.0);
    bad_index.add_row({{{2, 1.0}}, Relation::kLe, 1.0});
    CHECK_THROWS_AS(solve(bad_index), InputError);
}

TEST_CASE("random LPs match vertex enumeration") {
    RngStream rng(1234);
    int solved = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(4));  // up to 5 vars
        LinearProgram prog;
        std::vector<double> center(n);
        for (int j = 0; j < n; ++j) {
            center[j] = rng.next_double() * 2.0;
            prog.add_variable(0.0, 2.0 + rng.next_double() * 2.0,
                              std::round((rng.next_double() - 0.5) * 10.0));
        }
        const int rows = 1 + static_cast<int>(rng.uniform_index(2 * n));
        for (int r = 0; r < rows; ++r) {
            Row row;
            double at_center = 0.0;
            for (int j = 0; j < n; ++j) {
                if (rng.next_double() < 0.6) {
                    double a = std::round((rng.next_double() - 0.5) * 8.0);
                    if (a != 0.0) {
                        row.coeffs.push_back({j, a});
                        at_center += a * center[j];
                    }
                }
            }
            // keep `center` feasible so the instance never goes infeasible
            int kind = static_cast<int>(rng.uniform_index(3));
            if (kind == 0) {
                row.rel = Relation::kLe;
                row.rhs = at_center + rng.next_double() * 3.0;
            } else if (kind == 1) {
                row.rel = Relation::kGe;
                row.rhs = at_center - rng.next_double() * 3.0;
            } else {
                row.rel = Relation::kEq;
                row.rhs = at_center;
            }
            prog.add_row(std::move(row));
        }
        LpSolution sol = solve(prog);
        REQUIRE(sol.status == SolveStatus::kOptimal);
        double oracle = VertexOracle{prog}.best();
        REQUIRE_FALSE(std::isnan(oracle));
        CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(max_residual(prog, sol.values) <= 1e-7);
        ++solved;
    }
    CHECK(solved == 120);
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    RngStream rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(4));
        LinearProgram prog;
        for (int j = 0; j < n; ++j) prog.add_variable(0.0, 5.0, rng.next_double() - 0.5);
        for (int r = 0; r < n + 2; ++r) {
            Row row;
            for (int j = 0; j < n; ++j) {
                row.coeffs.push_back({j, std::round((rng.next_double() - 0.5) * 6.0)});
            }
            row.rel = r % 2 == 0 ? Relation::kLe : Relation::kGe;
            row.rhs = r % 2 == 0 ? 3.0 + rng.next_double() : -rng.next_double();
            prog.add_row(std::move(row));
        }
        LpSolution first = solve(prog);
        LpSolution second = solve(prog);
        CHECK(first.status == second.status);
        if (first.status == SolveStatus::kOptimal) {
            CHECK(std::memcmp(&first.objective, &second.objective, sizeof(double)) == 0);
            REQUIRE(first.values.size() == second.values.size());
            CHECK(std::memcmp(first.values.data(), second.values.data(),
                              first.values.size() * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("objective offset is included") {
    LinearProgram prog;
    prog.add_variable(0.0, 1.0, 1.0);
    prog.objective_offset = 5.0;
    prog.add_row({{{0, 1.0}}, Relation::kGe, 0.5});
    LpSolution sol = solve(prog);
    CHECK(sol.objective == doctest::Approx(5.5).epsilon(1e-9));
}

TEST_CASE("lp text export") {
    LinearProgram prog;
    prog.add_variable(0.0, 1.0, 2.0);
    prog.add_variable(0.0, kInfinity, -1.0);
    prog.add_row({{{0, 1.0}, {1, -3.0}}, Relation::kLe, 4.0});
    prog.add_row({{{0, 1.0}, {1, 1.0}}, Relation::kEq, 1.0});
    std::string text = to_lp_text(prog);
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("Bounds") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
    CHECK(text.find("x1") != std::string::npos);
    CHECK(text.find("<=") != std::string::npos);
}
