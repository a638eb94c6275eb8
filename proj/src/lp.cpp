#include "ccc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

namespace ccc::lp {

void LinearProgram::validate() const {
    if (num_vars < 0) throw InputError("negative variable count");
    if (static_cast<int>(lower.size()) != num_vars || static_cast<int>(upper.size()) != num_vars ||
        static_cast<int>(objective.size()) != num_vars) {
        throw InputError("bounds/objective arrays disagree with num_vars");
    }
    for (int j = 0; j < num_vars; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(objective[j])) {
            throw InputError("NaN in variable data");
        }
        if (!std::isfinite(lower[j])) throw InputError("lower bounds must be finite");
        if (upper[j] < lower[j]) throw InputError("crossed bounds on variable " + std::to_string(j));
    }
    if (std::isnan(objective_offset)) throw InputError("NaN objective offset");
    for (const auto& row : rows) {
        if (std::isnan(row.rhs)) throw InputError("NaN right-hand side");
        for (const auto& [j, a] : row.coeffs) {
            if (j < 0 || j >= num_vars) throw InputError("constraint references invalid variable");
            if (std::isnan(a)) throw InputError("NaN constraint coefficient");
        }
    }
}

double max_residual(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) {
        worst = std::max(worst, lp.lower[j] - x[j]);
        if (std::isfinite(lp.upper[j])) worst = std::max(worst, x[j] - lp.upper[j]);
    }
    for (const auto& row : lp.rows) {
        double lhs = 0.0, norm = 1.0;
        for (const auto& [j, a] : row.coeffs) {
            lhs += a * x[j];
            norm += std::abs(a);
        }
        double viol = 0.0;
        switch (row.rel) {
            case Relation::kLe: viol = lhs - row.rhs; break;
            case Relation::kGe: viol = row.rhs - lhs; break;
            case Relation::kEq: viol = std::abs(lhs - row.rhs); break;
        }
        worst = std::max(worst, viol / norm);
    }
    return worst;
}

namespace {

using Col = std::vector<std::pair<int, double>>;

// Bounded-variable revised simplex over the standardized system
// [structurals | slacks | artificials]. Dense LU of the basis plus a
// product-form eta file, refactored periodically.
class Simplex {
 public:
    Simplex(const LinearProgram& lp, const SolverOptions& opt) : lp_(lp), opt_(opt) {
        m_ = static_cast<int>(lp.rows.size());
        n_struct_ = lp.num_vars;
        build_columns();
    }

    LpSolution run() {
        if (m_ == 0) return solve_unconstrained();
        init_crash_basis();
        if (need_phase1_) {
            PhaseResult r = iterate(/*phase1=*/true);
            if (r == PhaseResult::kStalled) throw SolverError("simplex stalled in phase 1");
            double infeas = phase_objective(true);
            if (infeas > opt_.feas_tol * rhs_scale_) {
                return LpSolution{SolveStatus::kInfeasible, 0.0, {}, static_cast<int>(iterations_)};
            }
            for (int j = first_artificial_; j < total_; ++j) hi_[j] = 0.0;
            drive_out_artificials();
        }
        PhaseResult r = iterate(/*phase1=*/false);
        if (r == PhaseResult::kUnbounded) {
            return LpSolution{SolveStatus::kUnbounded, 0.0, {}, static_cast<int>(iterations_)};
        }
        if (r == PhaseResult::kStalled) throw SolverError("simplex stalled in phase 2");
        refactor();  // clean recompute before extraction
        LpSolution sol;
        sol.status = SolveStatus::kOptimal;
        sol.values.assign(x_.begin(), x_.begin() + n_struct_);
        sol.objective = lp_.objective_offset;
        for (int j = 0; j < n_struct_; ++j) sol.objective += lp_.objective[j] * x_[j];
        sol.iterations = static_cast<int>(iterations_);
        return sol;
    }

 private:
    enum class VarStatus : char { kAtLower, kAtUpper, kBasic };
    enum class PhaseResult { kOptimal, kUnbounded, kStalled };

    void build_columns() {
        total_ = n_struct_ + m_;  // artificials appended on demand
        cols_.resize(total_);
        lo_.assign(total_, 0.0);
        hi_.assign(total_, kInfinity);
        cost_.assign(total_, 0.0);
        rhs_.resize(m_);
        rhs_scale_ = 1.0;
        for (int j = 0; j < n_struct_; ++j) {
            lo_[j] = lp_.lower[j];
            hi_[j] = lp_.upper[j];
            cost_[j] = lp_.objective[j];
        }
        for (int i = 0; i < m_; ++i) {
            const Row& row = lp_.rows[i];
            rhs_[i] = row.rhs;
            rhs_scale_ = std::max(rhs_scale_, std::abs(row.rhs));
            for (const auto& [j, a] : row.coeffs) {
                if (a != 0.0) cols_[j].push_back({i, a});
            }
            int s = n_struct_ + i;
            double sign = row.rel == Relation::kGe ? -1.0 : 1.0;
            cols_[s].push_back({i, sign});
            if (row.rel == Relation::kEq) hi_[s] = 0.0;  // slack pinned
        }
    }

    LpSolution solve_unconstrained() {
        LpSolution sol;
        sol.values.assign(n_struct_, 0.0);
        sol.objective = lp_.objective_offset;
        for (int j = 0; j < n_struct_; ++j) {
            if (lp_.objective[j] >= 0.0) {
                sol.values[j] = lp_.lower[j];
            } else if (std::isfinite(lp_.upper[j])) {
                sol.values[j] = lp_.upper[j];
            } else {
                return LpSolution{SolveStatus::kUnbounded, 0.0, {}, 0};
            }
            sol.objective += lp_.objective[j] * sol.values[j];
        }
        sol.status = SolveStatus::kOptimal;
        return sol;
    }

    // Nonbasic columns rest at a bound; slacks able to absorb the residual
    // become basic, the rest of the rows get an artificial.
    void init_crash_basis() {
        status_.assign(total_, VarStatus::kAtLower);
        x_.assign(total_, 0.0);
        for (int j = 0; j < total_; ++j) x_[j] = lo_[j];

        std::vector<double> residual = rhs_;
        for (int j = 0; j < n_struct_; ++j) {
            if (x_[j] != 0.0) {
                for (const auto& [i, a] : cols_[j]) residual[i] -= a * x_[j];
            }
        }

        basis_.assign(m_, -1);
        in_basis_.assign(total_, -1);
        first_artificial_ = total_;
        need_phase1_ = false;
        std::vector<int> artificial_rows;
        for (int i = 0; i < m_; ++i) {
            int s = n_struct_ + i;
            double sign = cols_[s][0].second;
            double sval = residual[i] / sign;
            if (sval >= lo_[s] - opt_.feas_tol && sval <= hi_[s] + opt_.feas_tol) {
                make_basic(s, i, std::clamp(sval, lo_[s], hi_[s]));
            } else {
                artificial_rows.push_back(i);
            }
        }
        if (!artificial_rows.empty()) {
            need_phase1_ = true;
            for (int i : artificial_rows) {
                int a = total_++;
                cols_.push_back({{i, residual[i] >= 0.0 ? 1.0 : -1.0}});
                lo_.push_back(0.0);
                hi_.push_back(kInfinity);
                cost_.push_back(0.0);
                status_.push_back(VarStatus::kAtLower);
                x_.push_back(0.0);
                in_basis_.push_back(-1);
                make_basic(a, i, std::abs(residual[i]));
            }
            first_artificial_ = total_ - static_cast<int>(artificial_rows.size());
        }
        refactor();
    }

    void make_basic(int col, int row, double value) {
        basis_[row] = col;
        in_basis_[col] = row;
        status_[col] = VarStatus::kBasic;
        x_[col] = value;
    }

    // ---- factorization ------------------------------------------------------

    void refactor() {
        lu_.assign(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            for (const auto& [r, a] : cols_[basis_[i]]) lu_[static_cast<size_t>(r) * m_ + i] = a;
        }
        perm_.resize(m_);
        for (int i = 0; i < m_; ++i) perm_[i] = i;
        for (int k = 0; k < m_; ++k) {
            int piv = k;
            double best = std::abs(lu_[static_cast<size_t>(perm_[k]) * m_ + k]);
            for (int i = k + 1; i < m_; ++i) {
                double v = std::abs(lu_[static_cast<size_t>(perm_[i]) * m_ + k]);
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < opt_.pivot_tol) throw SolverError("singular basis during refactorization");
            std::swap(perm_[k], perm_[piv]);
            double* pk = &lu_[static_cast<size_t>(perm_[k]) * m_];
            double inv = 1.0 / pk[k];
            for (int i = k + 1; i < m_; ++i) {
                double* pi = &lu_[static_cast<size_t>(perm_[i]) * m_];
                double f = pi[k] * inv;
                if (f == 0.0) continue;
                pi[k] = f;
                for (int j = k + 1; j < m_; ++j) pi[j] -= f * pk[j];
            }
        }
        etas_.clear();
        recompute_basic_values();
    }

    void lu_solve(std::vector<double>& b) const {
        scratch_.resize(m_);
        for (int i = 0; i < m_; ++i) scratch_[i] = b[perm_[i]];
        for (int i = 0; i < m_; ++i) {
            const double* pi = &lu_[static_cast<size_t>(perm_[i]) * m_];
            double v = scratch_[i];
            for (int j = 0; j < i; ++j) v -= pi[j] * scratch_[j];
            scratch_[i] = v;
        }
        for (int i = m_ - 1; i >= 0; --i) {
            const double* pi = &lu_[static_cast<size_t>(perm_[i]) * m_];
            double v = scratch_[i];
            for (int j = i + 1; j < m_; ++j) v -= pi[j] * scratch_[j];
            scratch_[i] = v / pi[i];
        }
        b = scratch_;
    }

    void lu_solve_transposed(std::vector<double>& c) const {
        scratch_.resize(m_);
        // Solve U^T w = c, then L^T z = w, then undo the permutation.
        for (int i = 0; i < m_; ++i) {
            const double* pi = &lu_[static_cast<size_t>(perm_[i]) * m_];
            double v = c[i];
            for (int j = 0; j < i; ++j) v -= lu_[static_cast<size_t>(perm_[j]) * m_ + i] * scratch_[j];
            scratch_[i] = v / pi[i];
        }
        for (int i = m_ - 1; i >= 0; --i) {
            double v = scratch_[i];
            for (int j = i + 1; j < m_; ++j) v -= lu_[static_cast<size_t>(perm_[j]) * m_ + i] * scratch_[j];
            scratch_[i] = v;
        }
        for (int i = 0; i < m_; ++i) c[perm_[i]] = scratch_[i];
    }

    // w = B^{-1} a_col
    std::vector<double> ftran(int col) const {
        std::vector<double> w(m_, 0.0);
        for (const auto& [i, a] : cols_[col]) w[i] = a;
        lu_solve(w);
        for (const auto& eta : etas_) {
            double wr = w[eta.row] / eta.w[eta.row];
            if (wr != 0.0) {
                for (int i = 0; i < m_; ++i) w[i] -= eta.w[i] * wr;
                w[eta.row] = wr;
            } else {
                w[eta.row] = 0.0;
            }
        }
        return w;
    }

    // y^T = c_B^T B^{-1}
    std::vector<double> btran(std::vector<double> c) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = c[it->row];
            for (int i = 0; i < m_; ++i) {
                if (i != it->row) acc -= it->w[i] * c[i];
            }
            c[it->row] = acc / it->w[it->row];
        }
        lu_solve_transposed(c);
        return c;
    }

    void recompute_basic_values() {
        std::vector<double> b = rhs_;
        for (int j = 0; j < total_; ++j) {
            if (status_[j] != VarStatus::kBasic && x_[j] != 0.0) {
                for (const auto& [i, a] : cols_[j]) b[i] -= a * x_[j];
            }
        }
        lu_solve(b);
        for (const auto& eta : etas_) {
            double wr = b[eta.row] / eta.w[eta.row];
            for (int i = 0; i < m_; ++i) b[i] -= eta.w[i] * wr;
            b[eta.row] = wr;
        }
        for (int i = 0; i < m_; ++i) x_[basis_[i]] = b[i];
    }

    // ---- iteration ----------------------------------------------------------

    double phase_objective(bool phase1) const {
        double z = 0.0;
        if (phase1) {
            for (int j = first_artificial_; j < total_; ++j) z += x_[j];
        } else {
            for (int j = 0; j < n_struct_; ++j) z += cost_[j] * x_[j];
        }
        return z;
    }

    double column_cost(int j, bool phase1) const {
        if (phase1) return j >= first_artificial_ ? 1.0 : 0.0;
        return j < n_struct_ ? cost_[j] : 0.0;
    }

    PhaseResult iterate(bool phase1) {
        bool bland = false;
        int stall = 0;
        double best_obj = phase_objective(phase1);
        const int stall_limit = 1000 + 2 * (m_ + n_struct_);

        while (true) {
            if (++iterations_ > opt_.max_iterations) {
                throw SolverError("iteration limit exceeded");
            }
            // reduced costs via BTRAN
            std::vector<double> cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = column_cost(basis_[i], phase1);
            std::vector<double> y = btran(std::move(cb));

            int entering = -1;
            int direction = 0;
            double best_score = opt_.opt_tol;
            // Artificials never re-enter once out of the basis.
            for (int j = 0; j < first_artificial_; ++j) {
                if (status_[j] == VarStatus::kBasic) continue;
                if (hi_[j] - lo_[j] == 0.0) continue;  // fixed
                double d = column_cost(j, phase1);
                for (const auto& [i, a] : cols_[j]) d -= y[i] * a;
                int dir = 0;
                if (status_[j] == VarStatus::kAtLower && d < -opt_.opt_tol) dir = 1;
                if (status_[j] == VarStatus::kAtUpper && d > opt_.opt_tol) dir = -1;
                if (dir == 0) continue;
                if (bland) {
                    entering = j;
                    direction = dir;
                    break;
                }
                if (std::abs(d) > best_score) {
                    best_score = std::abs(d);
                    entering = j;
                    direction = dir;
                }
            }
            if (entering < 0) return PhaseResult::kOptimal;

            std::vector<double> w = ftran(entering);

            // ratio test: entering moves by t >= 0 in `direction`; smallest
            // ratio wins, ties broken by lowest basic variable index
            double t_limit = hi_[entering] - lo_[entering];  // bound flip span
            int leaving_row = -1;
            for (int i = 0; i < m_; ++i) {
                double delta = direction * w[i];
                if (std::abs(delta) <= opt_.pivot_tol) continue;
                int bj = basis_[i];
                double ratio;
                if (delta > 0.0) {
                    ratio = (x_[bj] - lo_[bj]) / delta;
                } else {
                    if (!std::isfinite(hi_[bj])) continue;
                    ratio = (hi_[bj] - x_[bj]) / (-delta);
                }
                if (ratio < 0.0) ratio = 0.0;
                bool take = false;
                if (leaving_row < 0) {
                    take = ratio < t_limit;
                } else {
                    take = ratio < t_limit - 1e-12 ||
                           (ratio <= t_limit + 1e-12 && bj < basis_[leaving_row]);
                }
                if (take) {
                    t_limit = std::min(t_limit, ratio);
                    leaving_row = i;
                }
            }

            if (!std::isfinite(t_limit)) {
                if (phase1) throw SolverError("phase 1 unbounded");
                return PhaseResult::kUnbounded;
            }

            double t = std::max(t_limit, 0.0);
            apply_step(entering, direction, t, w);

            if (leaving_row < 0) {
                // bound flip, no basis change
                status_[entering] =
                    status_[entering] == VarStatus::kAtLower ? VarStatus::kAtUpper : VarStatus::kAtLower;
                x_[entering] = status_[entering] == VarStatus::kAtLower ? lo_[entering] : hi_[entering];
            } else {
                pivot(entering, direction, leaving_row, std::move(w));
            }

            double z = phase_objective(phase1);
            if (z < best_obj - 1e-11 * (1.0 + std::abs(best_obj))) {
                best_obj = z;
                stall = 0;
            } else if (++stall > stall_limit && !bland) {
                bland = true;  // anticycling from here on
                stall = 0;
            } else if (stall > 4 * stall_limit) {
                return PhaseResult::kStalled;
            }
        }
    }

    void apply_step(int entering, int direction, double t, const std::vector<double>& w) {
        if (t == 0.0) return;
        x_[entering] += direction * t;
        for (int i = 0; i < m_; ++i) {
            if (w[i] != 0.0) x_[basis_[i]] -= direction * t * w[i];
        }
    }

    void pivot(int entering, int direction, int row, std::vector<double> w) {
        int leaving = basis_[row];
        double delta = direction * w[row];
        // snap the leaving variable onto the bound it reached
        if (delta > 0.0) {
            x_[leaving] = lo_[leaving];
            status_[leaving] = VarStatus::kAtLower;
        } else {
            x_[leaving] = hi_[leaving];
            status_[leaving] = VarStatus::kAtUpper;
        }
        in_basis_[leaving] = -1;
        basis_[row] = entering;
        in_basis_[entering] = row;
        status_[entering] = VarStatus::kBasic;

        etas_.push_back({row, std::move(w)});
        if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) refactor();
    }

    // Pivot zero-valued basic artificials onto structural/slack columns where
    // possible; rows with no pivot are dependent and keep a pinned artificial.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < first_artificial_) continue;
            std::vector<double> e(m_, 0.0);
            e[i] = 1.0;
            std::vector<double> rho = btran(std::move(e));
            int found = -1;
            for (int j = 0; j < first_artificial_; ++j) {
                if (status_[j] == VarStatus::kBasic) continue;
                double alpha = 0.0;
                for (const auto& [r, a] : cols_[j]) alpha += rho[r] * a;
                if (std::abs(alpha) > 1e-7) {
                    found = j;
                    break;
                }
            }
            if (found < 0) continue;
            std::vector<double> w = ftran(found);
            int direction = status_[found] == VarStatus::kAtLower ? 1 : -1;
            pivot(found, direction, i, std::move(w));
        }
    }

    const LinearProgram& lp_;
    SolverOptions opt_;
    int m_ = 0, n_struct_ = 0, total_ = 0, first_artificial_ = 0;
    bool need_phase1_ = false;
    double rhs_scale_ = 1.0;
    std::vector<Col> cols_;
    std::vector<double> lo_, hi_, cost_, rhs_, x_;
    std::vector<VarStatus> status_;
    std::vector<int> basis_, in_basis_;
    std::vector<double> lu_;
    std::vector<int> perm_;
    struct Eta {
        int row;
        std::vector<double> w;
    };
    std::vector<Eta> etas_;
    mutable std::vector<double> scratch_;
    std::int64_t iterations_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverOptions& options) {
    lp.validate();
    Simplex simplex(lp, options);
    LpSolution sol = simplex.run();
    if (sol.status == SolveStatus::kOptimal) {
        double resid = max_residual(lp, sol.values);
        if (resid > 10.0 * options.feas_tol) {
            throw SolverError("solution failed the feasibility re-check, residual " +
                              std::to_string(resid));
        }
    }
    return sol;
}

std::string to_lp_text(const LinearProgram& lp) {
    std::ostringstream out;
    out.precision(17);
    out << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < lp.num_vars; ++j) {
        double c = lp.objective[j];
        if (c == 0.0) continue;
        out << (c < 0 ? " - " : (any ? " + " : " ")) << std::abs(c) << " x" << j;
        any = true;
    }
    if (!any) out << " 0 x0";
    out << "\nSubject To\n";
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        const Row& row = lp.rows[i];
        out << " c" << i << ":";
        bool first = true;
        for (const auto& [j, a] : row.coeffs) {
            out << (a < 0 ? " - " : (first ? " " : " + ")) << std::abs(a) << " x" << j;
            first = false;
        }
        if (first) out << " 0 x0";
        switch (row.rel) {
            case Relation::kLe: out << " <= "; break;
            case Relation::kGe: out << " >= "; break;
            case Relation::kEq: out << " = "; break;
        }
        out << row.rhs << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < lp.num_vars; ++j) {
        if (std::isfinite(lp.upper[j])) {
            out << " " << lp.lower[j] << " <= x" << j << " <= " << lp.upper[j] << "\n";
        } else {
            out << " x" << j << " >= " << lp.lower[j] << "\n";
        }
    }
    out << "End\n";
    return out.str();
}

}  // namespace ccc::lp
