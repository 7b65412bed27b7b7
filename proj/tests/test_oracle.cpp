#include "doctest.h"

#include <algorithm>

#include "bikm/core.hpp"
#include "bikm/oracle.hpp"
#include "bikm/rng.hpp"

using namespace bikm;

namespace {

PointSet line(std::initializer_list<double> xs) {
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    return PointSet::from_rows(rows);
}

} // namespace

TEST_CASE("brute kmeans on the three-point line") {
    const PointSet pts = line({0.0, 2.0, 10.0});
    // Partitions into two clusters cost 2, 32, 50; the single cluster costs more.
    const BruteKmeansResult res = brute_kmeans(pts, 2);
    CHECK(res.cost == doctest::Approx(2.0));
    REQUIRE(res.partition.k() == 2);
    std::vector<int> first = res.partition.clusters[0];
    std::sort(first.begin(), first.end());
    CHECK(first == std::vector<int>{0, 1});
}

TEST_CASE("brute kmeans trivial regimes") {
    const PointSet pts = line({1.0, 4.0, 9.0});
    CHECK(brute_kmeans(pts, 3).cost == doctest::Approx(0.0));
    CHECK(brute_kmeans(pts, 5).cost == doctest::Approx(0.0));
    const double full = cost_partition_kmeans(pts, Partition{{{0, 1, 2}}});
    CHECK(brute_kmeans(pts, 1).cost == doctest::Approx(full));
}

TEST_CASE("brute kmeans lower-bounds sampled partitions") {
    Rng rng(3);
    std::vector<double> data;
    for (int i = 0; i < 14; ++i) data.push_back(rng.next_gaussian());
    const PointSet pts(std::move(data), 2);
    const BruteKmeansResult best = brute_kmeans(pts, 3);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng part_rng(seed);
        Partition part;
        part.clusters.assign(3, {});
        for (int i = 0; i < pts.size(); ++i)
            part.clusters[static_cast<std::size_t>(part_rng.next_below(3))].push_back(i);
        std::erase_if(part.clusters, [](const auto& c) { return c.empty(); });
        CHECK(best.cost <= cost_partition_kmeans(pts, part) + 1e-9);
    }
}

TEST_CASE("brute kmeans size guard") {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 13; ++i) rows.push_back({static_cast<double>(i)});
    CHECK_THROWS_AS(brute_kmeans(PointSet::from_rows(rows), 2), Error);
}

TEST_CASE("brute kmedian basics") {
    const KMedianInstance inst =
        KMedianInstance::from_points(line({0.0, 10.0}), line({0.0, 10.0}));
    CHECK(brute_kmedian(inst, 1).cost == doctest::Approx(100.0));
    CHECK(brute_kmedian(inst, 2).cost == doctest::Approx(0.0));

    // k = |C| opens everything.
    const KMedianInstance wide =
        KMedianInstance::from_points(line({0.0, 3.0, 7.0}), line({1.0, 6.0}));
    double all_open = 0.0;
    for (int x = 0; x < wide.n_demands(); ++x)
        all_open += std::min(wide.dist(0, x), wide.dist(1, x));
    CHECK(brute_kmedian(wide, 2).cost == doctest::Approx(all_open));
}

TEST_CASE("brute kmedian is invariant under center permutation") {
    Rng rng(9);
    std::vector<double> d(static_cast<std::size_t>(5 * 6));
    for (double& v : d) v = rng.next_double() * 10.0;
    const KMedianInstance inst = KMedianInstance::from_table(5, 6, d);

    std::vector<double> permuted(d.size());
    const std::vector<int> perm = {3, 0, 5, 1, 4, 2};
    for (int c = 0; c < 6; ++c)
        for (int x = 0; x < 5; ++x)
            permuted[static_cast<std::size_t>(c) * 5 + static_cast<std::size_t>(x)] =
                inst.dist(perm[static_cast<std::size_t>(c)], x);
    const KMedianInstance shuffled = KMedianInstance::from_table(5, 6, permuted);
    for (int k = 1; k <= 3; ++k)
        CHECK(brute_kmedian(inst, k).cost == doctest::Approx(brute_kmedian(shuffled, k).cost));
}

TEST_CASE("brute kmedian size guard") {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 300; ++i) rows.push_back({static_cast<double>(i)});
    const KMedianInstance inst = KMedianInstance::from_points(line({0.0}), PointSet::from_rows(rows));
    CHECK_THROWS_AS(brute_kmedian(inst, 4), Error);
    CHECK_NOTHROW(brute_kmedian(inst, 1));
}

TEST_CASE("centroid-set verifier accepts all-centroid candidates and rejects bare points") {
    const PointSet pts = line({0.0, 1.0});
    // Candidates = the points themselves: subset {0,1} has candidate cost 1
    // against exact 0.5, ratio 2.
    const CentroidSetCheck bare = verify_centroid_set(pts, pts, 0.9);
    CHECK_FALSE(bare.ok);
    CHECK(bare.worst_ratio == doctest::Approx(2.0));

    const PointSet with_mid = line({0.0, 1.0, 0.5});
    const CentroidSetCheck good = verify_centroid_set(pts, with_mid, 1e-9);
    CHECK(good.ok);
    CHECK(good.worst_ratio == doctest::Approx(1.0));
}
