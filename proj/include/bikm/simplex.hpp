#ifndef BIKM_SIMPLEX_HPP
#define BIKM_SIMPLEX_HPP

#include <vector>

namespace bikm {

// Dense two-phase tableau simplex for
//   min c'x  s.t.  A x = b,  x >= 0,  b >= 0.
// Dantzig pricing with lowest-index tie-breaks; switches to Bland's rule
// after a run of degenerate pivots, which guarantees termination.
struct SimplexOptions {
    double tol = 1e-9;
    long long max_iterations = 200000;
    long long degenerate_switch = 0;  // 0 means 10 * number of variables
};

struct SimplexResult {
    enum class Status { optimal, infeasible, iteration_limit };
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> solution;
    long long iterations = 0;
};

SimplexResult solve_standard_form(const std::vector<std::vector<double>>& columns_by_row,
                                  const std::vector<double>& rhs,
                                  const std::vector<double>& objective,
                                  const SimplexOptions& options = {});

} // namespace bikm

#endif
