#ifndef BIKM_CORE_HPP
#define BIKM_CORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bikm/error.hpp"

namespace bikm {

constexpr double kRelTol = 1e-9;

// Immutable set of n points in R^dim, flat row-major storage, ids 0..n-1.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<double> data, int dim);
    static PointSet from_rows(const std::vector<std::vector<double>>& rows);

    int size() const { return n_; }
    int dim() const { return dim_; }
    bool empty() const { return n_ == 0; }

    std::span<const double> point(int i) const {
        return {data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    std::vector<double> row(int i) const;
    const std::vector<double>& data() const { return data_; }

private:
    std::vector<double> data_;
    int dim_ = 0;
    int n_ = 0;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// Disjoint nonempty clusters covering 0..n-1.
struct Partition {
    std::vector<std::vector<int>> clusters;

    int k() const { return static_cast<int>(clusters.size()); }
};

void validate_partition(const Partition& part, int n);

// Discrete k-median instance: demands, candidate centers and a dense
// center-by-demand distance table. Geometric instances also keep the
// coordinates; table-only instances leave the point sets empty.
class KMedianInstance {
public:
    static KMedianInstance from_points(PointSet demands, PointSet centers);
    static KMedianInstance from_table(int n_demands, int n_centers, std::vector<double> table);

    int n_demands() const { return n_demands_; }
    int n_centers() const { return n_centers_; }

    double dist(int center, int demand) const {
        return table_[static_cast<std::size_t>(center) * static_cast<std::size_t>(n_demands_) +
                      static_cast<std::size_t>(demand)];
    }

    bool has_geometry() const { return !demand_points_.empty(); }
    const PointSet& demand_points() const { return demand_points_; }
    const PointSet& center_points() const { return center_points_; }

    // Maps demand index to the index of the originating raw point, when the
    // instance came out of a reduction.
    std::optional<std::vector<int>> back_map;

private:
    PointSet demand_points_;
    PointSet center_points_;
    std::vector<double> table_; // [center * n_demands + demand]
    int n_demands_ = 0;
    int n_centers_ = 0;
};

struct ClusteringSolution {
    std::vector<int> opened;          // center indices, sorted ascending
    std::vector<int> assignment;      // demand -> center index (member of opened)
    std::vector<double> per_point_cost;
    double total_cost = 0.0;
};

// Nearest-open-center assignment; ties broken toward the smaller center index.
ClusteringSolution assign_to_centers(const KMedianInstance& inst, std::vector<int> opened);

// k-means cost of a partition with optimal (centroid) centers.
double cost_partition_kmeans(const PointSet& points, const Partition& part);
// Same quantity through the pairwise identity; kept as an independent route.
double cost_partition_kmeans_pairwise(const PointSet& points, const Partition& part);

std::vector<double> cluster_centroid(const PointSet& points, const std::vector<int>& cluster);

// Cost of serving each point by its nearest center, plus the induced
// partition (empty cells dropped, cluster order follows center order).
std::pair<double, Partition> cost_centers_kmeans(const PointSet& points, const PointSet& centers);

// k-median cost of a partition with the best single candidate per cluster.
double cost_partition_kmedian(const KMedianInstance& inst, const Partition& part);

struct HopCheckReport {
    long long checked = 0;
    long long violations = 0;
    double worst_ratio = 0.0;            // max lhs/rhs over quadruples with rhs > 0
    std::array<int, 4> worst_quad{};     // (j, j2, i2, i) attaining worst_ratio
};

// Checks d(i,j) <= alpha * (d(i,j2) + d(i2,j2) + d(i2,j)) over sampled
// quadruples (demands j, j2; centers i2, i). Quadruples with zero
// right-hand side and positive left-hand side count as violations.
HopCheckReport check_relaxed_3hop(const KMedianInstance& inst, double alpha,
                                  long long samples, std::uint64_t seed);
HopCheckReport check_relaxed_3hop_exhaustive(const KMedianInstance& inst, double alpha);

} // namespace bikm

#endif
