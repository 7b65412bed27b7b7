#ifndef BIKM_REDUCE_HPP
#define BIKM_REDUCE_HPP

#include <cstdint>
#include <vector>

#include "bikm/core.hpp"

namespace bikm {

struct ReductionConfig {
    double epsilon = 0.3;          // must lie in (0, 1/2)
    int target_dim_cap = 1 << 20;  // hard cap on the projected dimension
    double grid_scale_base = 2.0;  // ratio of consecutive grid radii, > 1
    long long max_candidates = 200000;
    int jl_max_retries = 64;
    std::uint64_t seed = 0;
};

void validate_config(const ReductionConfig& cfg);

struct JlResult {
    PointSet projected;
    double distortion = 1.0;  // max pairwise ratio after the lower bound is pinned to 1
    int target_dim = 0;
    int attempts = 0;  // 0 means the identity map was used
};

// One-sided dimension reduction: every pairwise squared distance of the
// output lies in [1, 1+eps_prime] times the original. A random Gaussian
// projection is rescaled so the lower bound holds exactly; draws are retried
// until the upper bound holds too. Returns the input unchanged when the
// target dimension is not below the input dimension.
JlResult jl_transform(const PointSet& points, double eps_prime, std::uint64_t seed,
                      int max_retries = 64, int dim_cap = 1 << 20);

// Candidate centers covering every subset centroid to within a (1+eps_prime)
// cost factor: the input points plus, for a geometric ladder of radii, global
// axis-aligned lattices (in affine-hull coordinates) intersected with a ball
// around each input point. Errors out if the candidate count would exceed
// cfg.max_candidates.
PointSet build_centroid_set(const PointSet& points, double eps_prime,
                            const ReductionConfig& cfg);

struct ReductionResult {
    KMedianInstance instance;
    PointSet projected;
    PointSet centroid_set;
    std::vector<int> psi;  // demand index -> original point index
    double achieved_distortion = 1.0;
    int p_tilde = 0;
};

// Full pipeline: project, build the candidate set, assemble the k-median
// instance with squared Euclidean distances and the identity back-map.
ReductionResult build_instance(const PointSet& points, const ReductionConfig& cfg);

} // namespace bikm

#endif
