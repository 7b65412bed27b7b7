#include "bikm/lp.hpp"

#include <algorithm>
#include <cmath>

#include "bikm/simplex.hpp"

namespace bikm {

LpModel build_model(const KMedianInstance& inst, int k) {
    if (k < 1 || k > inst.n_centers())
        throw errors::config("k must be between 1 and the number of centers");
    LpModel model;
    model.n_demands = inst.n_demands();
    model.n_centers = inst.n_centers();
    model.k = k;
    return model;
}

RawLpSolution solve_lp(const KMedianInstance& inst, int k, double tol) {
    if (!(tol > 0.0)) throw errors::config("tolerance must be positive");
    const LpModel model = build_model(inst, k);
    const int nd = model.n_demands;
    const int nc = model.n_centers;

    // Dense-tableau footprint: rows x (structural + artificial + rhs).
    const double rows_est = 1.0 + nd + static_cast<double>(nd) * nc;
    const double width_est = nc + 2.0 * nd * nc + rows_est + 1.0;
    if (rows_est * width_est > 3e7)
        throw errors::size_cap(
            "LP tableau would need " + std::to_string(rows_est * width_est) +
            " cells; thin the candidate set first (reduce --max-centers, bench lp_max_centers)");

    // Standard form variables: y (nc), z (nd*nc), link slacks (nd*nc).
    const int vy = 0;
    const int vz = nc;
    const int vs = nc + nd * nc;
    const int nvars = nc + 2 * nd * nc;
    const int nrows = 1 + nd + nd * nc;

    std::vector<std::vector<double>> rows(static_cast<std::size_t>(nrows),
                                          std::vector<double>(static_cast<std::size_t>(nvars), 0.0));
    std::vector<double> rhs(static_cast<std::size_t>(nrows), 0.0);
    std::vector<double> objective(static_cast<std::size_t>(nvars), 0.0);

    for (int c = 0; c < nc; ++c) rows[0][static_cast<std::size_t>(vy + c)] = 1.0;
    rhs[0] = static_cast<double>(k);

    for (int x = 0; x < nd; ++x) {
        auto& row = rows[static_cast<std::size_t>(1 + x)];
        for (int c = 0; c < nc; ++c) row[static_cast<std::size_t>(vz + x * nc + c)] = 1.0;
        rhs[static_cast<std::size_t>(1 + x)] = 1.0;
    }

    for (int x = 0; x < nd; ++x)
        for (int c = 0; c < nc; ++c) {
            auto& row = rows[static_cast<std::size_t>(1 + nd + x * nc + c)];
            row[static_cast<std::size_t>(vz + x * nc + c)] = 1.0;
            row[static_cast<std::size_t>(vy + c)] = -1.0;
            row[static_cast<std::size_t>(vs + x * nc + c)] = 1.0;
        }

    for (int x = 0; x < nd; ++x)
        for (int c = 0; c < nc; ++c)
            objective[static_cast<std::size_t>(vz + x * nc + c)] = inst.dist(c, x);

    SimplexOptions options;
    options.tol = 1e-9;
    SimplexResult res = solve_standard_form(rows, rhs, objective, options);

    if (res.status == SimplexResult::Status::infeasible)
        throw errors::invariant_failure("k-median LP reported infeasible; this cannot happen for k <= |C|");
    if (res.status == SimplexResult::Status::iteration_limit)
        throw errors::solver_stall("simplex hit its iteration cap; best value " +
                                   std::to_string(res.objective));

    RawLpSolution sol;
    sol.iterations = res.iterations;
    sol.value = res.objective;
    sol.y.assign(static_cast<std::size_t>(nc), 0.0);
    sol.z.assign(static_cast<std::size_t>(nd), std::vector<double>(static_cast<std::size_t>(nc), 0.0));
    for (int c = 0; c < nc; ++c) sol.y[static_cast<std::size_t>(c)] = res.solution[static_cast<std::size_t>(vy + c)];
    for (int x = 0; x < nd; ++x)
        for (int c = 0; c < nc; ++c)
            sol.z[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)] =
                res.solution[static_cast<std::size_t>(vz + x * nc + c)];

    // Feasibility audit within tol.
    double ysum = 0.0;
    for (double v : sol.y) ysum += v;
    if (std::fabs(ysum - k) > tol) throw errors::numeric_failure("sum of center weights drifted from k");
    for (int x = 0; x < nd; ++x) {
        double zsum = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double zv = sol.z[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)];
            if (zv < -tol || zv > sol.y[static_cast<std::size_t>(c)] + tol)
                throw errors::numeric_failure("assignment weight escapes [0, y]");
            zsum += zv;
        }
        if (std::fabs(zsum - 1.0) > tol)
            throw errors::numeric_failure("assignment mass for a demand is not 1");
    }
    return sol;
}

FractionalSolution normalize(const KMedianInstance& inst, const RawLpSolution& raw, int k) {
    const int nd = inst.n_demands();
    const int nc = inst.n_centers();
    constexpr double drop_below = 1e-12;

    FractionalSolution out;
    out.k = k;
    out.support.assign(static_cast<std::size_t>(nd), {});

    // Split each center at the distinct assignment levels of its users; the
    // resulting copies are exactly the fixed point of pairwise splitting in
    // lexicographic (x, c) order. A demand with z level v uses every copy
    // below v in full, so z lands in {0, copy weight} by construction.
    for (int c = 0; c < nc; ++c) {
        const double yc = raw.y[static_cast<std::size_t>(c)];
        if (yc <= drop_below) continue;

        std::vector<std::pair<double, int>> users;  // (level, demand)
        for (int x = 0; x < nd; ++x) {
            const double z = std::min(raw.z[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)], yc);
            if (z > drop_below) users.push_back({z, x});
        }
        std::vector<double> levels;
        for (const auto& u : users) levels.push_back(u.first);
        levels.push_back(yc);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end(),
                                 [](double a, double b) { return std::fabs(a - b) <= drop_below; }),
                     levels.end());

        double prev = 0.0;
        for (double level : levels) {
            const double weight = level - prev;
            if (weight <= drop_below) {
                prev = level;
                continue;
            }
            const int copy_id = static_cast<int>(out.copies.size());
            out.copies.push_back({c, weight});
            for (const auto& [z, x] : users)
                if (z >= level - drop_below) out.support[static_cast<std::size_t>(x)].push_back(copy_id);
            prev = level;
        }
    }

    // Rescale so the copy weights add up to k exactly.
    double total = 0.0;
    for (const auto& cp : out.copies) total += cp.weight;
    if (total > 0.0) {
        const double scale = static_cast<double>(k) / total;
        for (auto& cp : out.copies) cp.weight *= scale;
    }

    auto [radii, value] = lp_radii(inst, out);
    out.radii = std::move(radii);
    out.lp_value = value;
    return out;
}

std::pair<std::vector<double>, double> lp_radii(const KMedianInstance& inst,
                                                const FractionalSolution& sol) {
    std::vector<double> radii(static_cast<std::size_t>(inst.n_demands()), 0.0);
    double value = 0.0;
    for (int x = 0; x < inst.n_demands(); ++x) {
        double acc = 0.0;
        for (int copy_id : sol.support[static_cast<std::size_t>(x)]) {
            const CenterCopy& cp = sol.copies[static_cast<std::size_t>(copy_id)];
            acc += cp.weight * inst.dist(cp.center, x);
        }
        radii[static_cast<std::size_t>(x)] = acc;
        value += acc;
    }
    return {std::move(radii), value};
}

void validate_solution(const KMedianInstance& inst, const FractionalSolution& sol) {
    double total = 0.0;
    for (const auto& cp : sol.copies) {
        if (cp.center < 0 || cp.center >= inst.n_centers())
            throw errors::invariant_failure("copy references an unknown center");
        if (!(cp.weight > 0.0)) throw errors::invariant_failure("copy with nonpositive weight");
        total += cp.weight;
    }
    if (std::fabs(total - sol.k) > 1e-7)
        throw errors::invariant_failure("copy weights do not add up to k");
    if (static_cast<int>(sol.support.size()) != inst.n_demands())
        throw errors::invariant_failure("support size mismatch");
    for (int x = 0; x < inst.n_demands(); ++x) {
        double mass = 0.0;
        for (int id : sol.support[static_cast<std::size_t>(x)])
            mass += sol.copies[static_cast<std::size_t>(id)].weight;
        if (std::fabs(mass - 1.0) > 1e-7)
            throw errors::invariant_failure("support mass for a demand is not 1");
    }
    auto [radii, value] = lp_radii(inst, sol);
    for (std::size_t x = 0; x < radii.size(); ++x)
        if (std::fabs(radii[x] - sol.radii[x]) > 1e-9 * (1.0 + radii[x]))
            throw errors::invariant_failure("stored radius disagrees with recomputation");
    if (std::fabs(value - sol.lp_value) > 1e-9 * (1.0 + value))
        throw errors::invariant_failure("stored LP value disagrees with recomputation");
}

} // namespace bikm
