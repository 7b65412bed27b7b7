#include "bikm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bikm {

namespace {

long long binomial_capped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    long long result = 1;
    for (int i = 0; i < k; ++i) {
        result = result * (n - i) / (i + 1);
        if (result > cap) return cap + 1;
    }
    return result;
}

} // namespace

BruteKmeansResult brute_kmeans(const PointSet& points, int k) {
    const int n = points.size();
    if (n > 12) throw errors::size_cap("brute_kmeans is limited to 12 points");
    if (k < 1) throw errors::config("k must be at least 1");

    // Restricted-growth strings: label[i] <= 1 + max(label[0..i-1]), labels < k.
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    BruteKmeansResult best;
    best.cost = std::numeric_limits<double>::infinity();

    const auto evaluate = [&]() {
        int parts = 0;
        for (int i = 0; i < n; ++i) parts = std::max(parts, label[static_cast<std::size_t>(i)] + 1);
        Partition part;
        part.clusters.assign(static_cast<std::size_t>(parts), {});
        for (int i = 0; i < n; ++i)
            part.clusters[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
        const double cost = cost_partition_kmeans(points, part);
        if (cost < best.cost) {
            best.cost = cost;
            best.partition = std::move(part);
        }
    };

    // Depth-first over valid strings; prefix maximum bounds the next label.
    std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
    int depth = 1; // label[0] is fixed to 0
    if (n == 1) {
        evaluate();
        return best;
    }
    label[0] = 0;
    prefix_max[0] = 0;
    std::vector<int> cursor(static_cast<std::size_t>(n), 0);
    while (depth > 0) {
        if (depth == n) {
            evaluate();
            --depth;
            continue;
        }
        const int limit = std::min(prefix_max[static_cast<std::size_t>(depth - 1)] + 1, k - 1);
        int& c = cursor[static_cast<std::size_t>(depth)];
        if (c > limit) {
            c = 0;
            --depth;
            continue;
        }
        label[static_cast<std::size_t>(depth)] = c;
        prefix_max[static_cast<std::size_t>(depth)] =
            std::max(prefix_max[static_cast<std::size_t>(depth - 1)], c);
        ++c;
        ++depth;
        if (depth < n) cursor[static_cast<std::size_t>(depth)] = 0;
    }
    return best;
}

BruteKmedianResult brute_kmedian(const KMedianInstance& inst, int k) {
    const int nc = inst.n_centers();
    if (k < 1 || k > nc) throw errors::config("k must be between 1 and the number of centers");
    if (binomial_capped(nc, k, 1000000) > 1000000)
        throw errors::size_cap("brute_kmedian is limited to 1e6 candidate subsets");

    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;

    BruteKmedianResult best;
    best.cost = std::numeric_limits<double>::infinity();
    const int nd = inst.n_demands();

    while (true) {
        double cost = 0.0;
        for (int x = 0; x < nd && cost < best.cost; ++x) {
            double d = inst.dist(pick[0], x);
            for (int j = 1; j < k; ++j)
                d = std::min(d, inst.dist(pick[static_cast<std::size_t>(j)], x));
            cost += d;
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.centers = pick;
        }
        // next combination in lexicographic order
        int pos = k - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == nc - k + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return best;
}

CentroidSetCheck verify_centroid_set(const PointSet& points, const PointSet& candidates,
                                     double eps) {
    const int n = points.size();
    if (n > 10) throw errors::size_cap("verify_centroid_set is limited to 10 points");
    if (points.dim() != candidates.dim())
        throw errors::dimension_mismatch("points and candidates have different dimensions");

    CentroidSetCheck check;
    check.ok = true;
    check.worst_ratio = 0.0;

    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(n));
    const double inf = std::numeric_limits<double>::infinity();

    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        members.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);

        // Exact optimum through the pairwise route, independent of any
        // centroid computation used elsewhere.
        double pair_sum = 0.0;
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                pair_sum += squared_distance(points.point(members[a]), points.point(members[b]));
        const double exact = pair_sum / static_cast<double>(members.size());

        double best_candidate = inf;
        for (int c = 0; c < candidates.size(); ++c) {
            const auto cp = candidates.point(c);
            double acc = 0.0;
            for (int idx : members) {
                acc += squared_distance(points.point(idx), cp);
                if (acc >= best_candidate) break;
            }
            best_candidate = std::min(best_candidate, acc);
        }

        double ratio;
        const double tiny = 1e-12 * (1.0 + exact);
        if (exact <= tiny) {
            ratio = best_candidate <= tiny ? 1.0 : inf;
        } else {
            ratio = best_candidate / exact;
        }
        if (ratio > check.worst_ratio) {
            check.worst_ratio = ratio;
            check.worst_subset = members;
        }
        if (ratio > 1.0 + eps + 1e-9) check.ok = false;
    }
    return check;
}

} // namespace bikm
