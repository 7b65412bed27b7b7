#ifndef BIKM_ROUND_HPP
#define BIKM_ROUND_HPP

#include <cstdint>
#include <vector>

#include "bikm/core.hpp"
#include "bikm/lp.hpp"

namespace bikm {

struct BallEntry {
    int copy = 0;
    double claim = 0.0;  // portion of the copy's weight inside the ball
};

// Nearest center mass of total measure exactly 1/beta around one demand.
struct Ball {
    int owner = 0;
    std::vector<BallEntry> entries;  // ascending by distance from the owner
    double radius = 0.0;             // distance of the farthest claimed mass
};

struct WitnessMap {
    std::vector<int> witness;   // demand -> demand whose ball covers it
    std::vector<int> selected;  // demands whose balls were kept, in pick order
};

struct BallsAndWitnesses {
    std::vector<Ball> balls;  // indexed by demand
    WitnessMap witnesses;
};

// Requires beta * k integral. Processes demands by ascending radius; a ball
// is kept if it claims no copy already claimed by a kept ball, otherwise the
// earliest-processed overlapping kept ball provides the witness.
BallsAndWitnesses build_balls_and_witnesses(const KMedianInstance& inst,
                                            const FractionalSolution& sol, double beta);

struct MarkovCheck {
    double max_slack = 0.0;  // max over demands of ball radius minus the bound
    int worst_demand = -1;
};

// Asserts ball_radius(x) <= beta * radius(x) / (beta - 1) + 1e-9 for all x.
MarkovCheck markov_radius_check(const FractionalSolution& sol, const BallsAndWitnesses& bw,
                                double beta);

struct GroupShare {
    int copy = 0;
    int center = 0;
    double share = 0.0;
};

struct Group {
    enum class Kind { witness_ball, residual };
    Kind kind = Kind::residual;
    int owner = -1;  // demand owning the ball, -1 for residual groups
    std::vector<GroupShare> shares;

    double mass() const {
        double acc = 0.0;
        for (const auto& s : shares) acc += s.share;
        return acc;
    }
};

struct GroupPartition {
    std::vector<Group> groups;
    int m = 0;           // beta * k
    double beta = 0.0;
};

// Witness balls become groups; leftover copy mass is packed greedily in copy
// order into further groups of measure exactly 1/beta.
GroupPartition build_partition(const FractionalSolution& sol, const BallsAndWitnesses& bw,
                               double beta);

// One center pick per group, probability proportional to its share within
// the group; entry g is the pick of group g.
std::vector<int> sample_group_picks(const GroupPartition& partition, std::uint64_t seed);

// Opens one copy per group (probability proportional to its share), then
// collapses co-located picks and assigns every demand to the nearest opened
// center.
ClusteringSolution sample_solution(const GroupPartition& partition, const KMedianInstance& inst,
                                   std::uint64_t seed);

struct RoundingStats {
    int trials = 0;
    double lp_value = 0.0;
    double mean_cost = 0.0;
    double mean_ratio = 0.0;  // per-trial cost / lp_value; 0 when lp_value is 0
    double std_ratio = 0.0;   // sample standard deviation
    double min_cost = 0.0;
    double max_cost = 0.0;
    int best_trial = 0;       // index of the cheapest trial
    std::vector<double> costs;
    std::vector<int> distinct_opened;
};

// Derived seed of trial `trial` under the harness seed; sample_solution with
// this value reproduces that trial exactly.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Monte-Carlo harness; trial i draws from substream i of `seed`, so results
// do not depend on evaluation order.
RoundingStats round_many(const GroupPartition& partition, const KMedianInstance& inst,
                         double lp_value, int trials, std::uint64_t seed);

} // namespace bikm

#endif
