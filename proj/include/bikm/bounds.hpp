#ifndef BIKM_BOUNDS_HPP
#define BIKM_BOUNDS_HPP

#include <string>

namespace bikm {

// Version tag stamped into benchmark report rows next to each bound value.
inline const std::string kBoundsVersion = "bounds/1";

// Closed-form guarantee of the randomized LP rounding:
//   1 + e^{-beta} * (6*beta/(beta-1) + (beta-1)^2/beta).
// The denominator is used in the orientation that keeps the value positive
// and decreasing for beta > 1; alpha_lp_closed_as_printed evaluates the
// variant with 6*beta/(1-beta) for side-by-side comparison.
double alpha_lp_closed(double beta);
double alpha_lp_closed_as_printed(double beta);

struct TightBound {
    double value = 0.0;
    double argmax_gamma = 0.0;
};

// Tight LP-rounding bound: maximum over gamma in [0,1] of
//   (1-e^{-beta})
//   + 3 e^{-(beta-gamma)} (1-gamma) (beta/(beta-1) + max(beta/(beta-1), 2beta/(beta-gamma)))
//   + beta e^{-beta} (1 - e^gamma (1-gamma)) / gamma,
// with the gamma -> 0 limit of the last term taken as 0. Dense grid search
// (default step 1e-4) followed by golden-section refinement.
TightBound alpha_lp_tight(double beta, double grid_step = 1e-4);

// Local-search guarantee (1 + 2/beta + 2/(beta*p))^2 / (1 - eps_term).
double alpha_local(double beta, long long p, double eps_term);

// Pipage-rounding guarantee max(1 + 8e^{-beta}, beta(e^{-1} + 8e^{-beta})/(beta-1)).
double alpha_pipage(double beta);

// Best guarantee available at a given beta: the lower envelope of the tight
// LP bound, the local-search bound in the large-p limit, and the pipage
// bound. This is the curve the headline per-beta figures refer to.
double alpha_overall(double beta);

} // namespace bikm

#endif
