#include "bikm/round.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bikm/rng.hpp"

namespace bikm {

namespace {

int resolve_group_count(int k, double beta) {
    if (!(beta > 1.0)) throw errors::config("beta must be strictly greater than 1");
    const double m_real = beta * static_cast<double>(k);
    const double m_round = std::round(m_real);
    if (std::fabs(m_real - m_round) > 1e-9)
        throw errors::config("beta * k must be an integer; pass m directly instead");
    return static_cast<int>(m_round);
}

} // namespace

BallsAndWitnesses build_balls_and_witnesses(const KMedianInstance& inst,
                                            const FractionalSolution& sol, double beta) {
    validate_solution(inst, sol);
    resolve_group_count(sol.k, beta);
    const int nd = inst.n_demands();
    const double target = 1.0 / beta;

    BallsAndWitnesses out;
    out.balls.resize(static_cast<std::size_t>(nd));

    // Copies ordered by distance from each demand over the full multiset;
    // only the farthest claimed copy may be partial.
    std::vector<int> order(sol.copies.size());
    for (int x = 0; x < nd; ++x) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = inst.dist(sol.copies[static_cast<std::size_t>(a)].center, x);
            const double db = inst.dist(sol.copies[static_cast<std::size_t>(b)].center, x);
            if (da != db) return da < db;
            return a < b;
        });
        Ball& ball = out.balls[static_cast<std::size_t>(x)];
        ball.owner = x;
        double remaining = target;
        for (int id : order) {
            if (remaining <= 1e-15) break;
            const CenterCopy& cp = sol.copies[static_cast<std::size_t>(id)];
            const double take = std::min(cp.weight, remaining);
            ball.entries.push_back({id, take});
            ball.radius = inst.dist(cp.center, x);
            remaining -= take;
        }
        if (remaining > 1e-9)
            throw errors::numeric_failure("total copy weight is below 1/beta");
    }

    // Ascending LP radius, ties toward the lower demand index.
    std::vector<int> by_radius(static_cast<std::size_t>(nd));
    std::iota(by_radius.begin(), by_radius.end(), 0);
    std::sort(by_radius.begin(), by_radius.end(), [&](int a, int b) {
        const double ra = sol.radii[static_cast<std::size_t>(a)];
        const double rb = sol.radii[static_cast<std::size_t>(b)];
        if (ra != rb) return ra < rb;
        return a < b;
    });

    out.witnesses.witness.assign(static_cast<std::size_t>(nd), -1);
    // copy id -> position in processing order of the kept ball claiming it
    std::vector<int> claimed_by_pos(sol.copies.size(), -1);
    std::vector<int> pos_to_demand;

    for (int pos = 0; pos < nd; ++pos) {
        const int x = by_radius[static_cast<std::size_t>(pos)];
        const Ball& ball = out.balls[static_cast<std::size_t>(x)];
        int first_hit = -1;
        for (const auto& entry : ball.entries) {
            const int holder = claimed_by_pos[static_cast<std::size_t>(entry.copy)];
            if (holder >= 0 && (first_hit < 0 || holder < first_hit)) first_hit = holder;
        }
        if (first_hit < 0) {
            out.witnesses.witness[static_cast<std::size_t>(x)] = x;
            const int my_pos = static_cast<int>(pos_to_demand.size());
            pos_to_demand.push_back(x);
            out.witnesses.selected.push_back(x);
            for (const auto& entry : ball.entries)
                claimed_by_pos[static_cast<std::size_t>(entry.copy)] = my_pos;
        } else {
            out.witnesses.witness[static_cast<std::size_t>(x)] =
                pos_to_demand[static_cast<std::size_t>(first_hit)];
        }
    }
    return out;
}

MarkovCheck markov_radius_check(const FractionalSolution& sol, const BallsAndWitnesses& bw,
                                double beta) {
    MarkovCheck check;
    check.max_slack = -std::numeric_limits<double>::infinity();
    for (const Ball& ball : bw.balls) {
        const double bound = beta * sol.radii[static_cast<std::size_t>(ball.owner)] / (beta - 1.0);
        const double slack = ball.radius - bound;
        if (slack > check.max_slack) {
            check.max_slack = slack;
            check.worst_demand = ball.owner;
        }
        if (slack > 1e-9)
            throw errors::invariant_failure("ball radius exceeds the Markov bound at demand " +
                                            std::to_string(ball.owner));
    }
    return check;
}

GroupPartition build_partition(const FractionalSolution& sol, const BallsAndWitnesses& bw,
                               double beta) {
    const int m = resolve_group_count(sol.k, beta);
    const double target = 1.0 / beta;

    GroupPartition part;
    part.m = m;
    part.beta = beta;

    std::vector<double> leftover(sol.copies.size());
    for (std::size_t i = 0; i < sol.copies.size(); ++i) leftover[i] = sol.copies[i].weight;

    for (int x : bw.witnesses.selected) {
        const Ball& ball = bw.balls[static_cast<std::size_t>(x)];
        Group group;
        group.kind = Group::Kind::witness_ball;
        group.owner = x;
        for (const auto& entry : ball.entries) {
            group.shares.push_back({entry.copy, sol.copies[static_cast<std::size_t>(entry.copy)].center,
                                    entry.claim});
            leftover[static_cast<std::size_t>(entry.copy)] -= entry.claim;
            if (leftover[static_cast<std::size_t>(entry.copy)] < -1e-9)
                throw errors::numeric_failure("copy mass claimed twice");
        }
        part.groups.push_back(std::move(group));
    }

    // Greedy fill of the remaining mass, splitting copies at group borders.
    Group current;
    double room = target;
    for (std::size_t id = 0; id < leftover.size(); ++id) {
        double left = leftover[id];
        while (left > 1e-15) {
            const double take = std::min(left, room);
            current.shares.push_back({static_cast<int>(id), sol.copies[id].center, take});
            left -= take;
            room -= take;
            if (room <= 1e-15) {
                part.groups.push_back(std::move(current));
                current = Group();
                room = target;
            }
        }
    }
    if (!current.shares.empty()) {
        if (std::fabs(current.mass() - target) > 1e-7)
            throw errors::numeric_failure("residual group mass drifted from 1/beta");
        part.groups.push_back(std::move(current));
    }

    if (static_cast<int>(part.groups.size()) != m)
        throw errors::numeric_failure("group count is not beta * k");
    for (const Group& g : part.groups)
        if (std::fabs(g.mass() - target) > 1e-7)
            throw errors::numeric_failure("group mass drifted from 1/beta");
    return part;
}

std::vector<int> sample_group_picks(const GroupPartition& partition, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> picks;
    picks.reserve(partition.groups.size());
    for (const Group& group : partition.groups) {
        const double mass = group.mass();
        const double u = rng.next_double() * mass;
        double acc = 0.0;
        int picked = group.shares.back().center;
        for (const auto& share : group.shares) {
            acc += share.share;
            if (u < acc) {
                picked = share.center;
                break;
            }
        }
        picks.push_back(picked);
    }
    return picks;
}

ClusteringSolution sample_solution(const GroupPartition& partition, const KMedianInstance& inst,
                                   std::uint64_t seed) {
    return assign_to_centers(inst, sample_group_picks(partition, seed));
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return Rng(seed).substream(static_cast<std::uint64_t>(trial)).next_u64();
}

RoundingStats round_many(const GroupPartition& partition, const KMedianInstance& inst,
                         double lp_value, int trials, std::uint64_t seed) {
    if (trials < 1) throw errors::config("need at least one trial");
    RoundingStats stats;
    stats.trials = trials;
    stats.lp_value = lp_value;
    stats.costs.resize(static_cast<std::size_t>(trials));
    stats.distinct_opened.resize(static_cast<std::size_t>(trials));
    stats.min_cost = std::numeric_limits<double>::infinity();
    stats.max_cost = 0.0;

    for (int t = 0; t < trials; ++t) {
        const ClusteringSolution sol = sample_solution(partition, inst, trial_seed(seed, t));
        stats.costs[static_cast<std::size_t>(t)] = sol.total_cost;
        stats.distinct_opened[static_cast<std::size_t>(t)] = static_cast<int>(sol.opened.size());
        if (sol.total_cost < stats.min_cost) stats.best_trial = t;
        stats.min_cost = std::min(stats.min_cost, sol.total_cost);
        stats.max_cost = std::max(stats.max_cost, sol.total_cost);
    }

    double mean = 0.0;
    for (double c : stats.costs) mean += c;
    mean /= static_cast<double>(trials);
    stats.mean_cost = mean;

    const bool zero_lp = lp_value <= 1e-15;
    std::vector<double> ratios(static_cast<std::size_t>(trials), 0.0);
    if (!zero_lp)
        for (int t = 0; t < trials; ++t)
            ratios[static_cast<std::size_t>(t)] = stats.costs[static_cast<std::size_t>(t)] / lp_value;
    double rmean = 0.0;
    for (double r : ratios) rmean += r;
    rmean /= static_cast<double>(trials);
    double rvar = 0.0;
    for (double r : ratios) rvar += (r - rmean) * (r - rmean);
    stats.mean_ratio = rmean;
    stats.std_ratio = trials > 1 ? std::sqrt(rvar / static_cast<double>(trials - 1)) : 0.0;
    return stats;
}

} // namespace bikm
