#include "bikm/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bikm/error.hpp"

namespace bikm {

namespace {

void require_beta(double beta) {
    if (!(beta > 1.0)) throw errors::domain("beta must be strictly greater than 1");
}

// (1 - e^gamma (1-gamma)) / gamma with a series fallback near zero; the
// expression tends to 0 as gamma -> 0 (leading term gamma/2).
double residual_term(double gamma) {
    if (gamma < 1e-6) return gamma / 2.0 + gamma * gamma / 3.0;
    return (1.0 - std::exp(gamma) * (1.0 - gamma)) / gamma;
}

double tight_objective(double beta, double gamma) {
    const double head = 1.0 - std::exp(-beta);
    const double near = beta / (beta - 1.0);
    const double far = 2.0 * beta / (beta - gamma);
    const double mid =
        3.0 * std::exp(-(beta - gamma)) * (1.0 - gamma) * (near + std::max(near, far));
    const double tail = beta * std::exp(-beta) * residual_term(gamma);
    return head + mid + tail;
}

} // namespace

double alpha_lp_closed(double beta) {
    require_beta(beta);
    return 1.0 + std::exp(-beta) * (6.0 * beta / (beta - 1.0) + (beta - 1.0) * (beta - 1.0) / beta);
}

double alpha_lp_closed_as_printed(double beta) {
    require_beta(beta);
    return 1.0 + std::exp(-beta) * (6.0 * beta / (1.0 - beta) + (beta - 1.0) * (beta - 1.0) / beta);
}

TightBound alpha_lp_tight(double beta, double grid_step) {
    require_beta(beta);
    if (!(grid_step > 0.0) || grid_step > 0.5)
        throw errors::config("grid step must be in (0, 0.5]");

    double best_gamma = 0.0;
    double best_value = tight_objective(beta, 0.0);
    for (double gamma = grid_step; gamma <= 1.0 + 1e-15; gamma += grid_step) {
        const double g = std::min(gamma, 1.0);
        const double value = tight_objective(beta, g);
        if (value > best_value) {
            best_value = value;
            best_gamma = g;
        }
    }

    // Golden-section refinement on the bracket around the best grid point.
    double lo = std::max(0.0, best_gamma - grid_step);
    double hi = std::min(1.0, best_gamma + grid_step);
    const double inv_phi = 0.6180339887498949;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = tight_objective(beta, a);
    double fb = tight_objective(beta, b);
    while (hi - lo > 1e-7) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = tight_objective(beta, b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = tight_objective(beta, a);
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double fm = tight_objective(beta, mid);
    TightBound out;
    if (fm >= best_value) {
        out.value = fm;
        out.argmax_gamma = mid;
    } else {
        out.value = best_value;
        out.argmax_gamma = best_gamma;
    }
    return out;
}

double alpha_local(double beta, long long p, double eps_term) {
    require_beta(beta);
    if (p < 1) throw errors::domain("swap size p must be at least 1");
    if (!(eps_term >= 0.0) || eps_term >= 1.0)
        throw errors::domain("eps_term must lie in [0, 1)");
    const double base = 1.0 + 2.0 / beta + 2.0 / (beta * static_cast<double>(p));
    return base * base / (1.0 - eps_term);
}

double alpha_pipage(double beta) {
    require_beta(beta);
    const double first = 1.0 + 8.0 * std::exp(-beta);
    const double second = beta * (std::exp(-1.0) + 8.0 * std::exp(-beta)) / (beta - 1.0);
    return std::max(first, second);
}

double alpha_overall(double beta) {
    require_beta(beta);
    const double local_limit = (1.0 + 2.0 / beta) * (1.0 + 2.0 / beta);
    return std::min({alpha_lp_tight(beta).value, local_limit, alpha_pipage(beta)});
}

} // namespace bikm
