#include "bikm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bikm/error.hpp"

namespace bikm {

namespace {

class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& rows_in, const std::vector<double>& rhs,
            const SimplexOptions& opt)
        : m_(static_cast<int>(rows_in.size())),
          n_(static_cast<int>(rows_in.front().size())),
          opt_(opt) {
        // Layout: n structural columns, then m artificial columns, then rhs.
        width_ = n_ + m_ + 1;
        cells_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(width_), 0.0);
        basis_.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            for (int c = 0; c < n_; ++c) at(r, c) = rows_in[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            at(r, n_ + r) = 1.0;
            at(r, width_ - 1) = rhs[static_cast<std::size_t>(r)];
            basis_[static_cast<std::size_t>(r)] = n_ + r;
        }
    }

    double& at(int r, int c) {
        return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
                      static_cast<std::size_t>(c)];
    }
    double at(int r, int c) const {
        return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
                      static_cast<std::size_t>(c)];
    }

    // Minimizes reduced costs for the given objective restricted to the
    // first `ncols` columns. Returns false when the iteration cap is hit.
    bool optimize(const std::vector<double>& cost, int ncols, long long& iterations) {
        compute_duals(cost, ncols);
        const long long degenerate_switch =
            opt_.degenerate_switch > 0 ? opt_.degenerate_switch : 10LL * ncols;
        long long degenerate_run = 0;
        bool bland = false;

        while (iterations < opt_.max_iterations) {
            const int enter = pick_entering(cost, ncols, bland);
            if (enter < 0) return true;  // optimal
            const int leave = pick_leaving(enter);
            if (leave < 0) {
                // Unbounded cannot occur for the models we build; treat as
                // numerical failure.
                throw errors::numeric_failure("simplex detected an unbounded direction");
            }
            const bool degenerate = at(leave, width_ - 1) <= opt_.tol;
            pivot(leave, enter);
            compute_duals(cost, ncols);
            ++iterations;
            degenerate_run = degenerate ? degenerate_run + 1 : 0;
            if (degenerate_run > degenerate_switch) bland = true;
        }
        return false;
    }

    double objective_value(const std::vector<double>& cost) const {
        double acc = 0.0;
        for (int r = 0; r < m_; ++r) {
            const int b = basis_[static_cast<std::size_t>(r)];
            if (b < static_cast<int>(cost.size())) acc += cost[static_cast<std::size_t>(b)] * at(r, width_ - 1);
        }
        return acc;
    }

    std::vector<double> extract(int ncols) const {
        std::vector<double> x(static_cast<std::size_t>(ncols), 0.0);
        for (int r = 0; r < m_; ++r) {
            const int b = basis_[static_cast<std::size_t>(r)];
            if (b < ncols) x[static_cast<std::size_t>(b)] = at(r, width_ - 1);
        }
        return x;
    }

    // Pivots artificial variables sitting in the basis at level zero onto
    // any structural column with a nonzero coefficient; redundant rows keep
    // their artificial at zero, which is harmless in phase 2.
    void expel_artificials(int ncols) {
        for (int r = 0; r < m_; ++r) {
            if (basis_[static_cast<std::size_t>(r)] < ncols) continue;
            for (int c = 0; c < ncols; ++c) {
                if (std::fabs(at(r, c)) > opt_.tol) {
                    pivot(r, c);
                    break;
                }
            }
        }
    }

    int rows() const { return m_; }

private:
    // The tableau rows hold B^{-1}A, so the reduced cost of column c is
    // cost[c] minus the cost-weighted combination of the current column.
    void compute_duals(const std::vector<double>& cost, int ncols) {
        reduced_.assign(static_cast<std::size_t>(ncols), 0.0);
        for (int c = 0; c < ncols; ++c)
            reduced_[static_cast<std::size_t>(c)] =
                c < static_cast<int>(cost.size()) ? cost[static_cast<std::size_t>(c)] : 0.0;
        for (int r = 0; r < m_; ++r) {
            const int b = basis_[static_cast<std::size_t>(r)];
            const double cb = b < static_cast<int>(cost.size()) ? cost[static_cast<std::size_t>(b)] : 0.0;
            if (cb == 0.0) continue;
            for (int c = 0; c < ncols; ++c)
                reduced_[static_cast<std::size_t>(c)] -= cb * at(r, c);
        }
    }

    int pick_entering(const std::vector<double>&, int ncols, bool bland) const {
        int best = -1;
        double best_val = -opt_.tol;
        for (int c = 0; c < ncols; ++c) {
            const double rc = reduced_[static_cast<std::size_t>(c)];
            if (rc < -opt_.tol) {
                if (bland) return c;
                if (rc < best_val) {
                    best_val = rc;
                    best = c;
                }
            }
        }
        return best;
    }

    int pick_leaving(int enter) const {
        int best = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m_; ++r) {
            const double a = at(r, enter);
            if (a > opt_.tol) {
                const double ratio = at(r, width_ - 1) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && best >= 0 &&
                     basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(best)])) {
                    best_ratio = ratio;
                    best = r;
                }
            }
        }
        return best;
    }

    void pivot(int prow, int pcol) {
        const double p = at(prow, pcol);
        for (int c = 0; c < width_; ++c) at(prow, c) /= p;
        at(prow, pcol) = 1.0;
        for (int r = 0; r < m_; ++r) {
            if (r == prow) continue;
            const double f = at(r, pcol);
            if (f == 0.0) continue;
            for (int c = 0; c < width_; ++c) at(r, c) -= f * at(prow, c);
            at(r, pcol) = 0.0;
        }
        basis_[static_cast<std::size_t>(prow)] = pcol;
    }

    int m_;
    int n_;
    int width_;
    SimplexOptions opt_;
    std::vector<double> cells_;
    std::vector<int> basis_;
    std::vector<double> reduced_;
};

} // namespace

SimplexResult solve_standard_form(const std::vector<std::vector<double>>& columns_by_row,
                                  const std::vector<double>& rhs,
                                  const std::vector<double>& objective,
                                  const SimplexOptions& options) {
    if (columns_by_row.empty()) throw errors::config("empty constraint system");
    const int m = static_cast<int>(columns_by_row.size());
    const int n = static_cast<int>(columns_by_row.front().size());
    if (static_cast<int>(rhs.size()) != m || static_cast<int>(objective.size()) != n)
        throw errors::config("inconsistent LP dimensions");
    for (double b : rhs)
        if (b < 0.0) throw errors::config("standard form requires nonnegative rhs");

    Tableau tab(columns_by_row, rhs, options);

    SimplexResult result;

    // Phase 1: minimize the sum of artificial variables.
    std::vector<double> phase1_cost(static_cast<std::size_t>(n + m), 0.0);
    for (int r = 0; r < m; ++r) phase1_cost[static_cast<std::size_t>(n + r)] = 1.0;
    if (!tab.optimize(phase1_cost, n + m, result.iterations)) {
        result.status = SimplexResult::Status::iteration_limit;
        result.solution = tab.extract(n);
        result.objective = 0.0;
        for (int c = 0; c < n; ++c)
            result.objective += objective[static_cast<std::size_t>(c)] * result.solution[static_cast<std::size_t>(c)];
        return result;
    }
    if (tab.objective_value(phase1_cost) > 1e-7) {
        result.status = SimplexResult::Status::infeasible;
        return result;
    }
    tab.expel_artificials(n);

    // Phase 2 on the structural columns only.
    if (!tab.optimize(objective, n, result.iterations)) {
        result.status = SimplexResult::Status::iteration_limit;
        result.solution = tab.extract(n);
        result.objective = 0.0;
        for (int c = 0; c < n; ++c)
            result.objective += objective[static_cast<std::size_t>(c)] * result.solution[static_cast<std::size_t>(c)];
        return result;
    }

    result.status = SimplexResult::Status::optimal;
    result.solution = tab.extract(n);
    result.objective = 0.0;
    for (int c = 0; c < n; ++c)
        result.objective += objective[static_cast<std::size_t>(c)] * result.solution[static_cast<std::size_t>(c)];
    return result;
}

} // namespace bikm
