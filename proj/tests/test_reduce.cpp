#include "doctest.h"

#include <cmath>

#include "bikm/core.hpp"
#include "bikm/oracle.hpp"
#include "bikm/reduce.hpp"
#include "bikm/rng.hpp"

using namespace bikm;

namespace {

PointSet random_points(int n, int dim, std::uint64_t seed, double spread = 2.0) {
    Rng rng(seed);
    std::vector<double> data;
    for (int i = 0; i < n * dim; ++i) data.push_back(rng.next_gaussian() * spread);
    return PointSet(std::move(data), dim);
}

// Points in a low-rank subspace of a high-dimensional space, rotated by a
// random orthonormal-ish frame.
PointSet embedded_points(int n, int intrinsic, int ambient, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> frame;
    for (int r = 0; r < intrinsic; ++r) {
        std::vector<double> v(static_cast<std::size_t>(ambient));
        for (double& c : v) c = rng.next_gaussian();
        for (const auto& prev : frame) {
            double dot = 0.0;
            for (int d = 0; d < ambient; ++d) dot += v[static_cast<std::size_t>(d)] * prev[static_cast<std::size_t>(d)];
            for (int d = 0; d < ambient; ++d) v[static_cast<std::size_t>(d)] -= dot * prev[static_cast<std::size_t>(d)];
        }
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        for (double& c : v) c /= norm;
        frame.push_back(std::move(v));
    }
    std::vector<double> data;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p(static_cast<std::size_t>(ambient), 0.0);
        for (int r = 0; r < intrinsic; ++r) {
            const double coeff = rng.next_gaussian() * 3.0;
            for (int d = 0; d < ambient; ++d)
                p[static_cast<std::size_t>(d)] += coeff * frame[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)];
        }
        data.insert(data.end(), p.begin(), p.end());
    }
    return PointSet(std::move(data), ambient);
}

double max_pairwise_ratio(const PointSet& before, const PointSet& after) {
    double worst = 0.0;
    for (int i = 0; i < before.size(); ++i)
        for (int j = i + 1; j < before.size(); ++j) {
            const double orig = squared_distance(before.point(i), before.point(j));
            if (orig <= 0.0) continue;
            worst = std::max(worst, squared_distance(after.point(i), after.point(j)) / orig);
        }
    return worst;
}

double min_pairwise_ratio(const PointSet& before, const PointSet& after) {
    double worst = 1e300;
    for (int i = 0; i < before.size(); ++i)
        for (int j = i + 1; j < before.size(); ++j) {
            const double orig = squared_distance(before.point(i), before.point(j));
            if (orig <= 0.0) continue;
            worst = std::min(worst, squared_distance(after.point(i), after.point(j)) / orig);
        }
    return worst;
}

} // namespace

TEST_CASE("jl is the identity when the dimension is already low") {
    const PointSet pts = random_points(10, 2, 1);
    const JlResult res = jl_transform(pts, 0.3, 0);
    CHECK(res.attempts == 0);
    CHECK(res.distortion == 1.0);
    CHECK(res.projected.dim() == 2);
    CHECK(res.projected.data() == pts.data());
}

TEST_CASE("jl on a singleton") {
    const PointSet pts = random_points(1, 40, 2);
    const JlResult res = jl_transform(pts, 0.5, 0);
    CHECK(res.distortion == 1.0);
    CHECK(res.projected.size() == 1);
}

TEST_CASE("jl projection verifies one-sided distortion exhaustively") {
    // Forced projection through the dimension cap. The verify-and-retry loop
    // must certify the one-sided bound for every pair; the frozen seed keeps
    // the accepted draw stable.
    const PointSet pts = embedded_points(6, 2, 50, 5);
    const JlResult res = jl_transform(pts, 0.8, 3, 64, 24);
    CHECK(res.projected.dim() == 12);  // 4 ln(6) / 0.8^2 rounded up
    CHECK(res.attempts >= 1);
    const double low = min_pairwise_ratio(pts, res.projected);
    const double high = max_pairwise_ratio(pts, res.projected);
    CHECK(low >= 1.0 - 1e-12);
    CHECK(high <= 1.8 * (1.0 + 1e-9));
    CHECK(res.distortion == doctest::Approx(high).epsilon(1e-9));
}

TEST_CASE("jl failure carries the best distortion found") {
    const PointSet pts = random_points(12, 60, 7);
    // Two dimensions cannot carry 12 well-spread points at 1.05 distortion.
    CHECK_THROWS_AS(jl_transform(pts, 0.05, 0, 4, 2), Error);
}

TEST_CASE("centroid set on two points contains a near-midpoint candidate") {
    const PointSet pts = PointSet::from_rows({{0.0}, {1.0}});
    ReductionConfig cfg;
    const PointSet cands = build_centroid_set(pts, 0.25, cfg);
    double best = 1e300;
    for (int i = 0; i < cands.size(); ++i)
        best = std::min(best, std::fabs(cands.point(i)[0] - 0.5));
    CHECK(best <= 0.1);
    CHECK(verify_centroid_set(pts, cands, 0.25).ok);
}

TEST_CASE("centroid set passes the subset verifier on random instances") {
    ReductionConfig cfg;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const PointSet pts = random_points(5, 2, seed + 10);
        const PointSet cands = build_centroid_set(pts, 0.3, cfg);
        const CentroidSetCheck check = verify_centroid_set(pts, cands, 0.3);
        CHECK(check.ok);
    }
}

TEST_CASE("single-member subsets are exact") {
    const PointSet pts = random_points(4, 2, 42);
    ReductionConfig cfg;
    const PointSet cands = build_centroid_set(pts, 0.3, cfg);
    for (int i = 0; i < pts.size(); ++i) {
        double best = 1e300;
        for (int c = 0; c < cands.size(); ++c)
            best = std::min(best, squared_distance(pts.point(i), cands.point(c)));
        CHECK(best == doctest::Approx(0.0));
    }
}

TEST_CASE("candidate cap triggers on high-rank inputs at small epsilon") {
    const PointSet pts = random_points(8, 6, 21);
    ReductionConfig cfg;
    cfg.max_candidates = 5000;
    CHECK_THROWS_AS(build_centroid_set(pts, 0.05, cfg), Error);
}

TEST_CASE("build_instance on a singleton") {
    ReductionConfig cfg;
    cfg.epsilon = 0.3;
    const ReductionResult red = build_instance(random_points(1, 3, 0), cfg);
    CHECK(red.instance.n_demands() == 1);
    CHECK(brute_kmedian(red.instance, 1).cost == doctest::Approx(0.0));
}

TEST_CASE("reduced optimum brackets the k-means optimum") {
    const PointSet pts = PointSet::from_rows({{0.0}, {2.0}, {10.0}});
    ReductionConfig cfg;
    cfg.epsilon = 0.3;
    const ReductionResult red = build_instance(pts, cfg);
    const double opt_kmeans = brute_kmeans(pts, 2).cost;
    CHECK(opt_kmeans == doctest::Approx(2.0));
    const double opt_reduced = brute_kmedian(red.instance, 2).cost;
    CHECK(opt_reduced >= opt_kmeans - 1e-9);
    CHECK(opt_reduced <= (1.0 + cfg.epsilon) * opt_kmeans + 1e-9);
}

TEST_CASE("partition sandwich holds for random partitions") {
    ReductionConfig cfg;
    cfg.epsilon = 0.3;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const PointSet pts = random_points(6, 2, seed + 70);
        const ReductionResult red = build_instance(pts, cfg);
        Rng rng(seed);
        for (int trial = 0; trial < 20; ++trial) {
            Partition part;
            part.clusters.assign(2, {});
            for (int i = 0; i < pts.size(); ++i)
                part.clusters[static_cast<std::size_t>(rng.next_below(2))].push_back(i);
            std::erase_if(part.clusters, [](const auto& c) { return c.empty(); });

            Partition original;  // psi is the identity on indices
            for (const auto& cluster : part.clusters) {
                std::vector<int> mapped;
                for (int idx : cluster) mapped.push_back(red.psi[static_cast<std::size_t>(idx)]);
                original.clusters.push_back(std::move(mapped));
            }
            const double kmeans_side = cost_partition_kmeans(pts, original);
            const double kmedian_side = cost_partition_kmedian(red.instance, part);
            CHECK(kmeans_side <= kmedian_side + 1e-9);
            CHECK(kmedian_side <= (1.0 + cfg.epsilon) * kmeans_side + 1e-9);
        }
    }
}

TEST_CASE("reduced distances satisfy the relaxed 3-hop inequality") {
    ReductionConfig cfg;
    cfg.epsilon = 0.4;
    const PointSet pts = random_points(5, 2, 33);
    const ReductionResult red = build_instance(pts, cfg);
    // Sampled check here; the candidate count makes the exhaustive pass
    // quadratic, so the full enumeration runs on a 1-D instance below.
    CHECK(check_relaxed_3hop(red.instance, 3.0, 50000, 0).violations == 0);

    ReductionConfig coarse;
    coarse.epsilon = 0.45;
    const PointSet line = PointSet::from_rows({{0.0}, {2.0}, {10.0}});
    const ReductionResult small = build_instance(line, coarse);
    CHECK(check_relaxed_3hop_exhaustive(small.instance, 3.0).violations == 0);
}

TEST_CASE("high-ambient-dimension inputs reduce through their affine hull") {
    ReductionConfig cfg;
    cfg.epsilon = 0.3;
    const PointSet pts = embedded_points(6, 2, 20, 17);
    const ReductionResult red = build_instance(pts, cfg);
    CHECK(red.achieved_distortion == 1.0);  // identity projection at this size
    // The candidate grid lives in the rank-2 hull, so it stays desk-sized;
    // k = 1 keeps the exact k-median enumeration inside its subset guard.
    const double opt_kmeans = brute_kmeans(pts, 1).cost;
    const double opt_reduced = brute_kmedian(red.instance, 1).cost;
    CHECK(opt_reduced >= opt_kmeans - 1e-9);
    CHECK(opt_reduced <= (1.0 + cfg.epsilon) * opt_kmeans + 1e-9 * (1.0 + opt_kmeans));
}

TEST_CASE("config validation") {
    ReductionConfig cfg;
    cfg.epsilon = 0.6;
    CHECK_THROWS_AS(validate_config(cfg), Error);
    cfg.epsilon = 0.3;
    cfg.grid_scale_base = 1.0;
    CHECK_THROWS_AS(validate_config(cfg), Error);
}
