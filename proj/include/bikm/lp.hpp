#ifndef BIKM_LP_HPP
#define BIKM_LP_HPP

#include <vector>

#include "bikm/core.hpp"

namespace bikm {

// Natural-form LP for opening exactly k of the candidate centers:
//   min sum_{x,c} z_xc d(c,x)
//   sum_c y_c = k;  sum_c z_xc = 1 for all x;  z_xc <= y_c;  y, z >= 0.
struct LpModel {
    int n_demands = 0;
    int n_centers = 0;
    int k = 0;

    long long num_vars() const {
        return static_cast<long long>(n_centers) +
               static_cast<long long>(n_demands) * n_centers;
    }
    long long num_constraints() const {
        return 1 + static_cast<long long>(n_demands) +
               static_cast<long long>(n_demands) * n_centers;
    }
};

LpModel build_model(const KMedianInstance& inst, int k);

struct RawLpSolution {
    std::vector<double> y;               // per center
    std::vector<std::vector<double>> z;  // [demand][center]
    double value = 0.0;
    long long iterations = 0;
};

// Solves the relaxation to optimality (certified by the simplex termination
// criterion). `tol` bounds the accepted feasibility slack.
RawLpSolution solve_lp(const KMedianInstance& inst, int k, double tol = 1e-7);

struct CenterCopy {
    int center = 0;      // index into the instance's candidate set
    double weight = 0.0; // y-measure of this copy
};

// Normalized solution: co-located copies of centers such that every demand
// either ignores a copy or uses its full weight. The support list per demand
// replaces an explicit z table; z_{x,copy} equals the copy weight exactly on
// the support.
struct FractionalSolution {
    std::vector<CenterCopy> copies;
    std::vector<std::vector<int>> support;  // demand -> copy ids, ascending
    std::vector<double> radii;              // demand -> fractional service cost
    double lp_value = 0.0;
    int k = 0;
};

// Splits centers so z lands in {0, y} per copy while preserving the
// objective, the total weight, and every per-demand assignment mass.
FractionalSolution normalize(const KMedianInstance& inst, const RawLpSolution& raw, int k);

// Recomputes radii (fractional service costs) and the LP value from the
// copies and supports.
std::pair<std::vector<double>, double> lp_radii(const KMedianInstance& inst,
                                                const FractionalSolution& sol);

// Throws invariant-failure if weights, assignment masses, or radii are off.
void validate_solution(const KMedianInstance& inst, const FractionalSolution& sol);

} // namespace bikm

#endif
