#ifndef BIKM_ORACLE_HPP
#define BIKM_ORACLE_HPP

#include <vector>

#include "bikm/core.hpp"

namespace bikm {

struct BruteKmeansResult {
    double cost = 0.0;
    Partition partition;
};

// Exact k-means optimum by enumerating every partition into at most k
// nonempty clusters (restricted-growth strings). Guarded at n <= 12.
BruteKmeansResult brute_kmeans(const PointSet& points, int k);

struct BruteKmedianResult {
    double cost = 0.0;
    std::vector<int> centers;
};

// Exact discrete k-median optimum over all k-subsets of the candidate set.
// Guarded at choose(|C|, k) <= 1e6.
BruteKmedianResult brute_kmedian(const KMedianInstance& inst, int k);

struct CentroidSetCheck {
    bool ok = false;
    double worst_ratio = 0.0;
    std::vector<int> worst_subset;
};

// Subset-enumeration verifier: for every nonempty subset S of `points`, the
// best candidate in `candidates` must cost at most (1+eps) times the exact
// single-cluster optimum. Guarded at |points| <= 10.
CentroidSetCheck verify_centroid_set(const PointSet& points, const PointSet& candidates,
                                     double eps);

} // namespace bikm

#endif
