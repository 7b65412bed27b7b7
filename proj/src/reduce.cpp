#include "bikm/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "bikm/rng.hpp"

namespace bikm {

namespace {

constexpr double kJlDimensionConstant = 4.0;

int jl_target_dimension(int n, double eps_prime) {
    const double ln_n = std::log(static_cast<double>(std::max(n, 2)));
    return static_cast<int>(std::ceil(kJlDimensionConstant * ln_n / (eps_prime * eps_prime)));
}

struct PairStats {
    double min_sq = std::numeric_limits<double>::infinity();  // min nonzero pairwise sq dist
    double max_sq = 0.0;
};

PairStats pairwise_stats(const PointSet& pts) {
    PairStats st;
    for (int i = 0; i < pts.size(); ++i)
        for (int j = i + 1; j < pts.size(); ++j) {
            const double d = squared_distance(pts.point(i), pts.point(j));
            if (d > 0.0) st.min_sq = std::min(st.min_sq, d);
            st.max_sq = std::max(st.max_sq, d);
        }
    return st;
}

struct LatticeKey {
    std::vector<long long> coords;
    bool operator==(const LatticeKey& o) const { return coords == o.coords; }
};

struct LatticeKeyHash {
    std::size_t operator()(const LatticeKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (long long v : k.coords) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h = Rng::mix(h);
        }
        return static_cast<std::size_t>(h);
    }
};

// Orthonormal basis of the affine hull of the points (anchored at point 0),
// found by Gram-Schmidt with a rank tolerance. Subset centroids always lie
// in the hull, so grids only need to cover it.
struct AffineHull {
    std::vector<double> origin;
    std::vector<std::vector<double>> basis;  // orthonormal, size = rank
    std::vector<std::vector<double>> coords; // hull coordinates of each input point

    int rank() const { return static_cast<int>(basis.size()); }
};

AffineHull affine_hull(const PointSet& pts) {
    const int n = pts.size();
    const int dim = pts.dim();
    AffineHull hull;
    hull.origin = pts.row(0);

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        scale = std::max(scale, std::sqrt(squared_distance(pts.point(i), pts.point(0))));
    const double tol = 1e-9 * (1.0 + scale);

    for (int i = 1; i < n; ++i) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        const auto p = pts.point(i);
        for (int d = 0; d < dim; ++d)
            v[static_cast<std::size_t>(d)] = p[static_cast<std::size_t>(d)] - hull.origin[static_cast<std::size_t>(d)];
        for (const auto& b : hull.basis) {
            double dot = 0.0;
            for (int d = 0; d < dim; ++d) dot += v[static_cast<std::size_t>(d)] * b[static_cast<std::size_t>(d)];
            for (int d = 0; d < dim; ++d) v[static_cast<std::size_t>(d)] -= dot * b[static_cast<std::size_t>(d)];
        }
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm > tol) {
            for (double& c : v) c /= norm;
            hull.basis.push_back(std::move(v));
        }
    }

    hull.coords.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto p = pts.point(i);
        std::vector<double> u(hull.basis.size());
        for (std::size_t b = 0; b < hull.basis.size(); ++b) {
            double dot = 0.0;
            for (int d = 0; d < dim; ++d)
                dot += (p[static_cast<std::size_t>(d)] - hull.origin[static_cast<std::size_t>(d)]) *
                       hull.basis[b][static_cast<std::size_t>(d)];
            u[b] = dot;
        }
        hull.coords[static_cast<std::size_t>(i)] = std::move(u);
    }
    return hull;
}

} // namespace

void validate_config(const ReductionConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 0.5))
        throw errors::config("epsilon must lie in (0, 0.5)");
    if (cfg.target_dim_cap < 1) throw errors::config("target_dim_cap must be positive");
    if (!(cfg.grid_scale_base > 1.0)) throw errors::config("grid_scale_base must exceed 1");
    if (cfg.max_candidates < 1) throw errors::config("max_candidates must be positive");
    if (cfg.jl_max_retries < 1) throw errors::config("jl_max_retries must be positive");
}

JlResult jl_transform(const PointSet& points, double eps_prime, std::uint64_t seed,
                      int max_retries, int dim_cap) {
    if (!(eps_prime > 0.0) || !(eps_prime < 1.0))
        throw errors::config("eps_prime must lie in (0, 1)");
    const int n = points.size();
    const int p = points.dim();
    const int target = std::min({p, dim_cap, jl_target_dimension(n, eps_prime)});

    JlResult result;
    result.target_dim = target;
    if (target >= p || n < 2) {
        result.projected = points;
        result.target_dim = p;
        result.distortion = 1.0;
        return result;
    }

    // Original pairwise squared distances; pairs at distance zero stay at
    // zero under any linear map and are skipped.
    std::vector<double> orig;
    orig.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            orig.push_back(squared_distance(points.point(i), points.point(j)));

    Rng base(seed);
    double best_distortion = std::numeric_limits<double>::infinity();
    const double inv_sqrt_target = 1.0 / std::sqrt(static_cast<double>(target));

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng = base.substream(static_cast<std::uint64_t>(attempt));
        std::vector<double> proj(static_cast<std::size_t>(target) * static_cast<std::size_t>(p));
        for (double& v : proj) v = rng.next_gaussian() * inv_sqrt_target;

        std::vector<double> mapped(static_cast<std::size_t>(n) * static_cast<std::size_t>(target), 0.0);
        for (int i = 0; i < n; ++i) {
            const auto x = points.point(i);
            for (int r = 0; r < target; ++r) {
                double acc = 0.0;
                const double* row = proj.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(p);
                for (int d = 0; d < p; ++d) acc += row[d] * x[static_cast<std::size_t>(d)];
                mapped[static_cast<std::size_t>(i) * static_cast<std::size_t>(target) +
                       static_cast<std::size_t>(r)] = acc;
            }
        }

        PointSet candidate(mapped, target);
        double min_ratio = std::numeric_limits<double>::infinity();
        double max_ratio = 0.0;
        std::size_t pair_idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++pair_idx) {
                if (orig[pair_idx] <= 0.0) continue;
                const double ratio =
                    squared_distance(candidate.point(i), candidate.point(j)) / orig[pair_idx];
                min_ratio = std::min(min_ratio, ratio);
                max_ratio = std::max(max_ratio, ratio);
            }
        if (!std::isfinite(min_ratio)) {
            // all points coincide
            result.projected = std::move(candidate);
            result.distortion = 1.0;
            result.attempts = attempt + 1;
            return result;
        }
        if (min_ratio <= 0.0) continue;  // degenerate draw collapsed a pair

        const double spread = max_ratio / min_ratio;
        best_distortion = std::min(best_distortion, spread);
        if (spread <= (1.0 + eps_prime) * (1.0 + 1e-12)) {
            const double rescale = 1.0 / std::sqrt(min_ratio);
            for (double& v : mapped) v *= rescale;
            result.projected = PointSet(std::move(mapped), target);
            result.distortion = spread;
            result.attempts = attempt + 1;
            return result;
        }
    }
    throw errors::projection_failure(
        "no projection met the distortion bound after " + std::to_string(max_retries) +
        " attempts; best spread " + std::to_string(best_distortion));
}

PointSet build_centroid_set(const PointSet& points, double eps_prime,
                            const ReductionConfig& cfg) {
    if (!(eps_prime > 0.0) || !(eps_prime < 1.0))
        throw errors::config("eps_prime must lie in (0, 1)");
    validate_config(cfg);

    const int n = points.size();
    const int dim = points.dim();
    std::vector<double> flat = points.data();

    const AffineHull hull = affine_hull(points);
    const int rank = hull.rank();
    if (rank == 0 || n == 1) return PointSet(std::move(flat), dim);  // all points coincide

    const PairStats stats = pairwise_stats(points);
    const double min_pair = std::sqrt(stats.min_sq);
    const double diameter = std::sqrt(stats.max_sq);
    const double base = cfg.grid_scale_base;
    const double delta_min = min_pair / (static_cast<double>(n) * static_cast<double>(n));

    // A candidate within sqrt(eps * opt/|S|) of a subset centroid keeps the
    // extra cost below eps * opt; anchoring at the subset point nearest to
    // the centroid lets the lattice pitch scale with sqrt(eps) of the radius.
    const double sqrt_rank = std::sqrt(static_cast<double>(rank));
    const double pitch_factor = 2.0 * std::sqrt(0.98 * eps_prime) / (base * sqrt_rank);
    const double trim_factor = 1.0 + std::sqrt(eps_prime);

    std::vector<double> radii;
    for (double r = delta_min; ; r *= base) {
        radii.push_back(r);
        if (r >= diameter || radii.size() > 400) break;
    }

    long long count = n;
    std::vector<long long> lo(static_cast<std::size_t>(rank));
    std::vector<long long> hi(static_cast<std::size_t>(rank));
    std::vector<long long> cur(static_cast<std::size_t>(rank));

    for (double r : radii) {
        const double pitch = pitch_factor * r;
        const double reach = trim_factor * r;
        std::unordered_set<LatticeKey, LatticeKeyHash> nodes;
        for (int i = 0; i < n; ++i) {
            const auto& u = hull.coords[static_cast<std::size_t>(i)];
            double box_cells = 1.0;
            for (int a = 0; a < rank; ++a) {
                lo[static_cast<std::size_t>(a)] =
                    static_cast<long long>(std::ceil((u[static_cast<std::size_t>(a)] - reach) / pitch));
                hi[static_cast<std::size_t>(a)] =
                    static_cast<long long>(std::floor((u[static_cast<std::size_t>(a)] + reach) / pitch));
                box_cells *= static_cast<double>(hi[static_cast<std::size_t>(a)] -
                                                 lo[static_cast<std::size_t>(a)] + 1);
            }
            if (box_cells > 256.0 * static_cast<double>(cfg.max_candidates))
                throw errors::size_cap(
                    "centroid-set grid exceeds the candidate cap; raise the cap, "
                    "increase epsilon, or shrink the instance");
            cur.assign(lo.begin(), lo.end());
            while (true) {
                double sq = 0.0;
                for (int a = 0; a < rank; ++a) {
                    const double c = static_cast<double>(cur[static_cast<std::size_t>(a)]) * pitch -
                                     u[static_cast<std::size_t>(a)];
                    sq += c * c;
                }
                if (sq <= reach * reach) {
                    LatticeKey key{cur};
                    if (nodes.insert(std::move(key)).second) {
                        ++count;
                        if (count > cfg.max_candidates)
                            throw errors::size_cap(
                                "centroid-set grid exceeds the candidate cap; raise the cap, "
                                "increase epsilon, or shrink the instance");
                    }
                }
                int axis = rank - 1;
                while (axis >= 0) {
                    if (++cur[static_cast<std::size_t>(axis)] <= hi[static_cast<std::size_t>(axis)]) break;
                    cur[static_cast<std::size_t>(axis)] = lo[static_cast<std::size_t>(axis)];
                    --axis;
                }
                if (axis < 0) break;
            }
        }
        // Map accepted lattice nodes back to ambient coordinates; sorted so
        // the candidate order does not depend on hash-set iteration.
        std::vector<LatticeKey> ordered(nodes.begin(), nodes.end());
        std::sort(ordered.begin(), ordered.end(),
                  [](const LatticeKey& a, const LatticeKey& b) { return a.coords < b.coords; });
        for (const auto& key : ordered) {
            for (int d = 0; d < dim; ++d) {
                double coord = hull.origin[static_cast<std::size_t>(d)];
                for (int a = 0; a < rank; ++a)
                    coord += static_cast<double>(key.coords[static_cast<std::size_t>(a)]) * pitch *
                             hull.basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)];
                flat.push_back(coord);
            }
        }
    }
    return PointSet(std::move(flat), dim);
}

ReductionResult build_instance(const PointSet& points, const ReductionConfig& cfg) {
    validate_config(cfg);
    const double eps_prime = cfg.epsilon / 3.0;

    JlResult jl = jl_transform(points, eps_prime, cfg.seed, cfg.jl_max_retries, cfg.target_dim_cap);
    PointSet candidates = build_centroid_set(jl.projected, eps_prime, cfg);

    ReductionResult result;
    result.projected = jl.projected;
    result.centroid_set = candidates;
    result.achieved_distortion = jl.distortion;
    result.p_tilde = jl.projected.dim();
    result.psi.resize(static_cast<std::size_t>(points.size()));
    for (int i = 0; i < points.size(); ++i) result.psi[static_cast<std::size_t>(i)] = i;
    result.instance = KMedianInstance::from_points(jl.projected, std::move(candidates));
    result.instance.back_map = result.psi;
    return result;
}

} // namespace bikm
