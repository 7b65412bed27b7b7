#ifndef BIKM_LOCAL_HPP
#define BIKM_LOCAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bikm/core.hpp"

namespace bikm {

struct SearchConfig {
    int m = 1;              // number of open centers
    int p = 1;              // maximum swap size
    double delta = 1e-3;    // improvement threshold knob, in (0,1)
    long long max_iters = 10000;
    bool greedy_init = true;
    std::uint64_t seed = 0; // used by the random initializer
};

// Greedy: repeatedly add the center that lowers the assignment cost the
// most (ties toward the lower index). Random: uniform m-subset.
std::vector<int> initial_solution(const KMedianInstance& inst, const SearchConfig& cfg);

struct Swap {
    std::vector<int> close;   // subset of the current centers
    std::vector<int> open;    // subset of the unopened candidates
    double new_cost = 0.0;
};

// Exhaustively enumerates swaps of size 1..p (lexicographic order, first
// strict improvement of equal value wins) and returns the best one whose
// cost is at most threshold_factor times the current cost; nullopt if none.
std::optional<Swap> best_swap(const KMedianInstance& inst, const std::vector<int>& current,
                              int p, double threshold_factor);

struct SearchStep {
    std::vector<int> closed;
    std::vector<int> opened;
    double old_cost = 0.0;
    double new_cost = 0.0;
};

struct SearchTrace {
    std::vector<SearchStep> iterations;
    ClusteringSolution final_solution;
    bool converged = false;
};

// Accepts a swap only when new_cost <= (1 - delta/N) * current with
// N = |demands| + |centers|; stops when no swap qualifies.
SearchTrace run_local_search(const KMedianInstance& inst, const SearchConfig& cfg);

} // namespace bikm

#endif
