#include "bikm/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bikm/rng.hpp"

namespace bikm {

namespace {

double cost_of(const KMedianInstance& inst, const std::vector<int>& centers) {
    double total = 0.0;
    for (int x = 0; x < inst.n_demands(); ++x) {
        double best = inst.dist(centers.front(), x);
        for (std::size_t j = 1; j < centers.size(); ++j)
            best = std::min(best, inst.dist(centers[j], x));
        total += best;
    }
    return total;
}

// Enumerates size-`size` subsets of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& pick, int n) {
    const int size = static_cast<int>(pick.size());
    int pos = size - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
    if (pos < 0) return false;
    ++pick[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < size; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

} // namespace

std::vector<int> initial_solution(const KMedianInstance& inst, const SearchConfig& cfg) {
    const int nc = inst.n_centers();
    if (cfg.m < 1 || cfg.m > nc)
        throw errors::config("m must lie between 1 and the number of centers");

    if (!cfg.greedy_init) {
        Rng rng(cfg.seed);
        std::vector<int> pick = rng.sample_indices(nc, cfg.m);
        std::sort(pick.begin(), pick.end());
        return pick;
    }

    const int nd = inst.n_demands();
    std::vector<int> chosen;
    std::vector<char> in_use(static_cast<std::size_t>(nc), 0);
    std::vector<double> best_d(static_cast<std::size_t>(nd),
                               std::numeric_limits<double>::infinity());
    for (int step = 0; step < cfg.m; ++step) {
        int best_center = -1;
        double best_total = std::numeric_limits<double>::infinity();
        for (int c = 0; c < nc; ++c) {
            if (in_use[static_cast<std::size_t>(c)]) continue;
            double total = 0.0;
            for (int x = 0; x < nd; ++x)
                total += std::min(best_d[static_cast<std::size_t>(x)], inst.dist(c, x));
            if (total < best_total) {
                best_total = total;
                best_center = c;
            }
        }
        chosen.push_back(best_center);
        in_use[static_cast<std::size_t>(best_center)] = 1;
        for (int x = 0; x < nd; ++x)
            best_d[static_cast<std::size_t>(x)] =
                std::min(best_d[static_cast<std::size_t>(x)], inst.dist(best_center, x));
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::optional<Swap> best_swap(const KMedianInstance& inst, const std::vector<int>& current,
                              int p, double threshold_factor) {
    const int nc = inst.n_centers();
    const int nd = inst.n_demands();
    const int m = static_cast<int>(current.size());
    if (p < 1 || p > m) throw errors::config("swap size must lie in [1, m]");

    std::vector<int> outside;
    std::vector<char> in_use(static_cast<std::size_t>(nc), 0);
    for (int c : current) in_use[static_cast<std::size_t>(c)] = 1;
    for (int c = 0; c < nc; ++c)
        if (!in_use[static_cast<std::size_t>(c)]) outside.push_back(c);

    const double current_cost = cost_of(inst, current);
    const double cutoff = threshold_factor * current_cost;

    std::optional<Swap> best;
    double best_cost = cutoff;

    // Nearest and second-nearest open center per demand make single swaps
    // evaluable in O(nd); larger swaps recompute from scratch.
    std::vector<int> near(static_cast<std::size_t>(nd));
    std::vector<double> near_d(static_cast<std::size_t>(nd));
    std::vector<double> second_d(static_cast<std::size_t>(nd));
    for (int x = 0; x < nd; ++x) {
        double d0 = std::numeric_limits<double>::infinity();
        double d1 = std::numeric_limits<double>::infinity();
        int c0 = -1;
        for (int c : current) {
            const double d = inst.dist(c, x);
            if (d < d0) {
                d1 = d0;
                d0 = d;
                c0 = c;
            } else if (d < d1) {
                d1 = d;
            }
        }
        near[static_cast<std::size_t>(x)] = c0;
        near_d[static_cast<std::size_t>(x)] = d0;
        second_d[static_cast<std::size_t>(x)] = d1;
    }

    for (std::size_t ai = 0; ai < current.size(); ++ai) {
        const int a = current[ai];
        for (int o : outside) {
            double total = 0.0;
            for (int x = 0; x < nd; ++x) {
                const double keep = near[static_cast<std::size_t>(x)] == a
                                        ? second_d[static_cast<std::size_t>(x)]
                                        : near_d[static_cast<std::size_t>(x)];
                total += std::min(keep, inst.dist(o, x));
                if (total >= best_cost) break;
            }
            if (total < best_cost) {
                best_cost = total;
                best = Swap{{a}, {o}, total};
            }
        }
    }

    std::vector<int> trial;
    trial.reserve(current.size());
    for (int size = 2; size <= p; ++size) {
        if (size > static_cast<int>(outside.size())) break;
        std::vector<int> close_pick(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) close_pick[static_cast<std::size_t>(i)] = i;
        do {
            std::vector<int> open_pick(static_cast<std::size_t>(size));
            for (int i = 0; i < size; ++i) open_pick[static_cast<std::size_t>(i)] = i;
            do {
                trial.clear();
                for (std::size_t i = 0; i < current.size(); ++i) {
                    bool closed = false;
                    for (int ci : close_pick)
                        if (static_cast<std::size_t>(ci) == i) closed = true;
                    if (!closed) trial.push_back(current[i]);
                }
                for (int oi : open_pick) trial.push_back(outside[static_cast<std::size_t>(oi)]);
                const double total = cost_of(inst, trial);
                if (total < best_cost) {
                    best_cost = total;
                    Swap swap;
                    for (int ci : close_pick) swap.close.push_back(current[static_cast<std::size_t>(ci)]);
                    for (int oi : open_pick) swap.open.push_back(outside[static_cast<std::size_t>(oi)]);
                    swap.new_cost = total;
                    best = std::move(swap);
                }
            } while (next_combination(open_pick, static_cast<int>(outside.size())));
        } while (next_combination(close_pick, m));
    }
    return best;
}

SearchTrace run_local_search(const KMedianInstance& inst, const SearchConfig& cfg) {
    if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0))
        throw errors::config("delta must lie in (0, 1)");
    std::vector<int> current = initial_solution(inst, cfg);
    const double factor =
        1.0 - cfg.delta / static_cast<double>(inst.n_demands() + inst.n_centers());

    SearchTrace trace;
    double cost = cost_of(inst, current);
    long long iters = 0;
    while (iters < cfg.max_iters) {
        if (cost <= 0.0) break;  // nothing can improve on zero
        std::optional<Swap> swap = best_swap(inst, current, cfg.p, factor);
        if (!swap) break;
        SearchStep step;
        step.closed = swap->close;
        step.opened = swap->open;
        step.old_cost = cost;
        step.new_cost = swap->new_cost;
        trace.iterations.push_back(step);

        for (int c : swap->close)
            current.erase(std::find(current.begin(), current.end(), c));
        for (int c : swap->open) current.push_back(c);
        std::sort(current.begin(), current.end());
        cost = swap->new_cost;
        ++iters;
    }
    trace.converged = iters < cfg.max_iters;
    trace.final_solution = assign_to_centers(inst, current);
    return trace;
}

} // namespace bikm
