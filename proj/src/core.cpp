#include "bikm/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bikm/rng.hpp"

namespace bikm {

PointSet::PointSet(std::vector<double> data, int dim) {
    if (dim <= 0) throw errors::config("point dimension must be positive");
    if (data.empty() || data.size() % static_cast<std::size_t>(dim) != 0)
        throw errors::config("point data size is not a multiple of the dimension");
    data_ = std::move(data);
    dim_ = dim;
    n_ = static_cast<int>(data_.size() / static_cast<std::size_t>(dim));
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw errors::config("point set must contain at least one point");
    const int dim = static_cast<int>(rows.front().size());
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.front().size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != dim)
            throw errors::dimension_mismatch("all points must share one dimension");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointSet(std::move(flat), dim);
}

std::vector<double> PointSet::row(int i) const {
    const auto p = point(i);
    return {p.begin(), p.end()};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void validate_partition(const Partition& part, int n) {
    if (part.clusters.empty()) throw errors::invalid_partition("partition has no clusters");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int covered = 0;
    for (const auto& cluster : part.clusters) {
        if (cluster.empty()) throw errors::invalid_partition("empty cluster");
        for (int idx : cluster) {
            if (idx < 0 || idx >= n) throw errors::invalid_partition("index out of range");
            if (seen[static_cast<std::size_t>(idx)])
                throw errors::invalid_partition("index appears in two clusters");
            seen[static_cast<std::size_t>(idx)] = 1;
            ++covered;
        }
    }
    if (covered != n) throw errors::invalid_partition("partition does not cover all indices");
}

KMedianInstance KMedianInstance::from_points(PointSet demands, PointSet centers) {
    if (demands.dim() != centers.dim())
        throw errors::dimension_mismatch("demand and center dimensions differ");
    KMedianInstance inst;
    inst.n_demands_ = demands.size();
    inst.n_centers_ = centers.size();
    inst.table_.resize(static_cast<std::size_t>(inst.n_demands_) *
                       static_cast<std::size_t>(inst.n_centers_));
    for (int c = 0; c < inst.n_centers_; ++c) {
        const auto cp = centers.point(c);
        for (int x = 0; x < inst.n_demands_; ++x) {
            inst.table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(inst.n_demands_) +
                        static_cast<std::size_t>(x)] = squared_distance(cp, demands.point(x));
        }
    }
    inst.demand_points_ = std::move(demands);
    inst.center_points_ = std::move(centers);
    return inst;
}

KMedianInstance KMedianInstance::from_table(int n_demands, int n_centers,
                                            std::vector<double> table) {
    if (n_demands <= 0 || n_centers <= 0)
        throw errors::config("instance needs at least one demand and one center");
    if (table.size() != static_cast<std::size_t>(n_demands) * static_cast<std::size_t>(n_centers))
        throw errors::config("distance table size mismatch");
    for (double v : table)
        if (!(v >= 0.0)) throw errors::config("distances must be nonnegative");
    KMedianInstance inst;
    inst.n_demands_ = n_demands;
    inst.n_centers_ = n_centers;
    inst.table_ = std::move(table);
    return inst;
}

ClusteringSolution assign_to_centers(const KMedianInstance& inst, std::vector<int> opened) {
    if (opened.empty()) throw errors::config("cannot assign with no opened centers");
    std::sort(opened.begin(), opened.end());
    opened.erase(std::unique(opened.begin(), opened.end()), opened.end());

    ClusteringSolution sol;
    sol.opened = std::move(opened);
    sol.assignment.resize(static_cast<std::size_t>(inst.n_demands()));
    sol.per_point_cost.resize(static_cast<std::size_t>(inst.n_demands()));
    double total = 0.0;
    for (int x = 0; x < inst.n_demands(); ++x) {
        int best = sol.opened.front();
        double best_d = inst.dist(best, x);
        for (std::size_t j = 1; j < sol.opened.size(); ++j) {
            const double d = inst.dist(sol.opened[j], x);
            if (d < best_d) {
                best_d = d;
                best = sol.opened[j];
            }
        }
        sol.assignment[static_cast<std::size_t>(x)] = best;
        sol.per_point_cost[static_cast<std::size_t>(x)] = best_d;
        total += best_d;
    }
    sol.total_cost = total;
    return sol;
}

std::vector<double> cluster_centroid(const PointSet& points, const std::vector<int>& cluster) {
    std::vector<double> centroid(static_cast<std::size_t>(points.dim()), 0.0);
    for (int idx : cluster) {
        const auto p = points.point(idx);
        for (std::size_t d = 0; d < centroid.size(); ++d) centroid[d] += p[d];
    }
    for (double& v : centroid) v /= static_cast<double>(cluster.size());
    return centroid;
}

double cost_partition_kmeans(const PointSet& points, const Partition& part) {
    validate_partition(part, points.size());
    double total = 0.0;
    for (const auto& cluster : part.clusters) {
        const auto centroid = cluster_centroid(points, cluster);
        for (int idx : cluster)
            total += squared_distance(points.point(idx),
                                      std::span<const double>(centroid.data(), centroid.size()));
    }
    return total;
}

double cost_partition_kmeans_pairwise(const PointSet& points, const Partition& part) {
    validate_partition(part, points.size());
    double total = 0.0;
    for (const auto& cluster : part.clusters) {
        double pair_sum = 0.0;
        for (std::size_t a = 0; a < cluster.size(); ++a)
            for (std::size_t b = a + 1; b < cluster.size(); ++b)
                pair_sum += squared_distance(points.point(cluster[a]), points.point(cluster[b]));
        // unordered sum / |S| = ordered sum / (2 |S|)
        total += pair_sum / static_cast<double>(cluster.size());
    }
    return total;
}

std::pair<double, Partition> cost_centers_kmeans(const PointSet& points, const PointSet& centers) {
    if (centers.empty()) throw errors::config("need at least one center");
    if (centers.dim() != points.dim())
        throw errors::dimension_mismatch("centers and points have different dimensions");

    std::vector<std::vector<int>> cells(static_cast<std::size_t>(centers.size()));
    double total = 0.0;
    for (int i = 0; i < points.size(); ++i) {
        int best = 0;
        double best_d = squared_distance(points.point(i), centers.point(0));
        for (int c = 1; c < centers.size(); ++c) {
            const double d = squared_distance(points.point(i), centers.point(c));
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        cells[static_cast<std::size_t>(best)].push_back(i);
        total += best_d;
    }
    Partition part;
    for (auto& cell : cells)
        if (!cell.empty()) part.clusters.push_back(std::move(cell));
    return {total, std::move(part)};
}

double cost_partition_kmedian(const KMedianInstance& inst, const Partition& part) {
    validate_partition(part, inst.n_demands());
    double total = 0.0;
    for (const auto& cluster : part.clusters) {
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < inst.n_centers(); ++c) {
            double acc = 0.0;
            for (int x : cluster) acc += inst.dist(c, x);
            if (acc < best) best = acc;
        }
        total += best;
    }
    return total;
}

namespace {

void hop_check_quad(const KMedianInstance& inst, double alpha, int j, int j2, int i2, int i,
                    HopCheckReport& report) {
    const double lhs = inst.dist(i, j);
    const double rhs = inst.dist(i, j2) + inst.dist(i2, j2) + inst.dist(i2, j);
    ++report.checked;
    if (rhs <= 0.0) {
        if (lhs > 0.0) ++report.violations;
        return;
    }
    const double ratio = lhs / rhs;
    if (ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_quad = {j, j2, i2, i};
    }
    if (lhs > alpha * rhs * (1.0 + 1e-12)) ++report.violations;
}

} // namespace

HopCheckReport check_relaxed_3hop(const KMedianInstance& inst, double alpha, long long samples,
                                  std::uint64_t seed) {
    if (alpha <= 0.0) throw errors::domain("alpha must be positive");
    if (samples <= 0) throw errors::config("sample count must be positive");
    HopCheckReport report;
    Rng rng(seed);
    const auto nd = static_cast<std::uint64_t>(inst.n_demands());
    const auto nc = static_cast<std::uint64_t>(inst.n_centers());
    for (long long s = 0; s < samples; ++s) {
        const int j = static_cast<int>(rng.next_below(nd));
        const int j2 = static_cast<int>(rng.next_below(nd));
        const int i2 = static_cast<int>(rng.next_below(nc));
        const int i = static_cast<int>(rng.next_below(nc));
        hop_check_quad(inst, alpha, j, j2, i2, i, report);
    }
    return report;
}

HopCheckReport check_relaxed_3hop_exhaustive(const KMedianInstance& inst, double alpha) {
    if (alpha <= 0.0) throw errors::domain("alpha must be positive");
    HopCheckReport report;
    for (int j = 0; j < inst.n_demands(); ++j)
        for (int j2 = 0; j2 < inst.n_demands(); ++j2)
            for (int i2 = 0; i2 < inst.n_centers(); ++i2)
                for (int i = 0; i < inst.n_centers(); ++i)
                    hop_check_quad(inst, alpha, j, j2, i2, i, report);
    return report;
}

} // namespace bikm
