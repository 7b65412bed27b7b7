#include "bikm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "json.hpp"

#include "bikm/bounds.hpp"
#include "bikm/io.hpp"
#include "bikm/local.hpp"
#include "bikm/lp.hpp"
#include "bikm/oracle.hpp"
#include "bikm/reduce.hpp"
#include "bikm/rng.hpp"
#include "bikm/round.hpp"

namespace bikm {

using nlohmann::json;

PointSet generate(const GeneratorSpec& spec, std::uint64_t seed) {
    if (spec.kind == GeneratorSpec::Kind::file) return points_from_csv(read_file(spec.path));
    if (spec.n < 1) throw errors::config("generator needs n >= 1");
    if (spec.dim < 1) throw errors::config("generator needs dim >= 1");

    Rng rng(seed);
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.dim));

    if (spec.kind == GeneratorSpec::Kind::uniform_cube) {
        for (int i = 0; i < spec.n * spec.dim; ++i) data.push_back(rng.next_double());
        return PointSet(std::move(data), spec.dim);
    }

    if (spec.true_k < 1) throw errors::config("gaussian mixture needs true_k >= 1");
    std::vector<double> centers(static_cast<std::size_t>(spec.true_k) *
                                static_cast<std::size_t>(spec.dim));
    for (double& v : centers) v = rng.next_gaussian() * spec.separation;
    for (int i = 0; i < spec.n; ++i) {
        const int comp = i % spec.true_k;
        for (int d = 0; d < spec.dim; ++d)
            data.push_back(centers[static_cast<std::size_t>(comp) * static_cast<std::size_t>(spec.dim) +
                                   static_cast<std::size_t>(d)] +
                           rng.next_gaussian());
    }
    return PointSet(std::move(data), spec.dim);
}

KmeansppResult kmeanspp_baseline(const PointSet& points, int m, std::uint64_t seed) {
    const int n = points.size();
    if (m < 1 || m > n) throw errors::config("m must lie between 1 and n");
    Rng rng(seed);

    KmeansppResult result;
    std::vector<double> best_d(static_cast<std::size_t>(n),
                               std::numeric_limits<double>::infinity());
    int first = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    result.chosen.push_back(first);
    for (int x = 0; x < n; ++x)
        best_d[static_cast<std::size_t>(x)] = squared_distance(points.point(x), points.point(first));

    while (static_cast<int>(result.chosen.size()) < m) {
        double total = 0.0;
        for (double v : best_d) total += v;
        int pick;
        if (total <= 0.0) {
            pick = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        } else {
            const double u = rng.next_double() * total;
            double acc = 0.0;
            pick = n - 1;
            for (int x = 0; x < n; ++x) {
                acc += best_d[static_cast<std::size_t>(x)];
                if (u < acc) {
                    pick = x;
                    break;
                }
            }
        }
        result.chosen.push_back(pick);
        for (int x = 0; x < n; ++x)
            best_d[static_cast<std::size_t>(x)] =
                std::min(best_d[static_cast<std::size_t>(x)],
                         squared_distance(points.point(x), points.point(pick)));
    }
    result.cost = 0.0;
    for (double v : best_d) result.cost += v;
    return result;
}

PointSet thin_candidates(const PointSet& demands, const PointSet& centers, int max_centers) {
    if (max_centers < 1) throw errors::config("max_centers must be positive");
    if (centers.size() <= max_centers) return centers;
    KMedianInstance full = KMedianInstance::from_points(demands, centers);
    SearchConfig pick_cfg;
    pick_cfg.m = max_centers;
    pick_cfg.greedy_init = true;
    const std::vector<int> keep = initial_solution(full, pick_cfg);
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(max_centers) * static_cast<std::size_t>(centers.dim()));
    for (int c : keep) {
        const auto row = centers.row(c);
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return PointSet(std::move(flat), centers.dim());
}

ExperimentSpec experiment_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw errors::io(std::string("invalid experiment JSON: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        const json gen = doc.value("generator", json::object());
        const std::string kind = gen.value("kind", "uniform-cube");
        if (kind == "gaussian-mixture")
            spec.generator.kind = GeneratorSpec::Kind::gaussian_mixture;
        else if (kind == "uniform-cube")
            spec.generator.kind = GeneratorSpec::Kind::uniform_cube;
        else if (kind == "file")
            spec.generator.kind = GeneratorSpec::Kind::file;
        else
            throw errors::config("unknown generator kind '" + kind + "'");
        spec.generator.n = gen.value("n", spec.generator.n);
        spec.generator.dim = gen.value("dim", spec.generator.dim);
        spec.generator.true_k = gen.value("true_k", spec.generator.true_k);
        spec.generator.separation = gen.value("separation", spec.generator.separation);
        spec.generator.path = gen.value("path", spec.generator.path);

        spec.instances = doc.value("instances", spec.instances);
        spec.k = doc.value("k", spec.k);
        spec.beta = doc.value("beta", spec.beta);
        spec.m = doc.value("m", spec.m);
        spec.p_swap = doc.value("p_swap", spec.p_swap);
        spec.epsilon = doc.value("epsilon", spec.epsilon);
        spec.trials = doc.value("trials", spec.trials);
        spec.seed = doc.value("seed", spec.seed);
        if (doc.contains("algorithms"))
            spec.algorithms = doc.at("algorithms").get<std::vector<std::string>>();
        spec.lp_max_centers = doc.value("lp_max_centers", spec.lp_max_centers);
        spec.jobs = doc.value("jobs", spec.jobs);
    } catch (const json::exception& e) {
        throw errors::io(std::string("malformed experiment JSON: ") + e.what());
    }

    if (spec.instances < 1) throw errors::config("instances must be >= 1");
    if (spec.trials < 1) throw errors::config("trials must be >= 1");
    if (spec.k < 1) throw errors::config("k must be >= 1");
    return spec;
}

namespace {

struct InstanceOutcome {
    std::vector<BenchRow> rows;
    std::vector<BenchArtifact> artifacts;
};

int resolve_m(const ExperimentSpec& spec) {
    if (spec.m > 0) return spec.m;
    const double m_real = spec.beta * spec.k;
    if (std::fabs(m_real - std::round(m_real)) > 1e-9)
        throw errors::config("beta * k is not an integer; set m explicitly");
    return static_cast<int>(std::round(m_real));
}

InstanceOutcome run_instance(const ExperimentSpec& spec, int index) {
    InstanceOutcome out;
    const int m = resolve_m(spec);
    const double beta_eff = static_cast<double>(m) / spec.k;

    BenchRow base;
    base.instance = index;
    base.k = spec.k;
    base.m = m;
    base.beta = beta_eff;
    base.bound_version = kBoundsVersion;

    const std::uint64_t inst_seed = Rng(spec.seed).substream(static_cast<std::uint64_t>(index)).next_u64();

    PointSet raw;
    try {
        raw = generate(spec.generator, inst_seed);
    } catch (const Error& e) {
        BenchRow row = base;
        row.algorithm = "generate";
        row.pass = false;
        row.note = std::string("error:") + e.kind() + " " + e.what();
        out.rows.push_back(std::move(row));
        return out;
    }
    base.n = raw.size();
    base.dim = raw.dim();

    ReductionConfig rcfg;
    rcfg.epsilon = spec.epsilon;
    rcfg.seed = inst_seed;

    KMedianInstance inst;
    double lp_value = -1.0;
    FractionalSolution fractional;
    std::string stage_note;

    try {
        ReductionResult red = build_instance(raw, rcfg);
        PointSet centers = red.centroid_set;
        if (centers.size() > spec.lp_max_centers) {
            centers = thin_candidates(red.projected, centers, spec.lp_max_centers);
            stage_note = "centers-thinned";
        }
        inst = KMedianInstance::from_points(red.projected, std::move(centers));
        inst.back_map = red.psi;
        out.artifacts.push_back(
            {"instances/instance_" + std::to_string(index) + ".json", instance_to_json(inst)});
    } catch (const Error& e) {
        BenchRow row = base;
        row.algorithm = "reduce";
        row.pass = false;
        row.note = std::string("error:") + e.kind() + " " + e.what();
        out.rows.push_back(std::move(row));
        return out;
    }

    double opt = -1.0;
    try {
        opt = brute_kmedian(inst, spec.k).cost;
    } catch (const Error&) {
        // Oracle infeasible at this size; rows fall back to LP comparisons.
    }

    // One LP solve serves both the rounding stage and, when the oracle is
    // out of reach, the local-search reference, independent of the order the
    // algorithms were requested in.
    bool lp_wanted = false;
    for (const std::string& algo : spec.algorithms)
        if (algo == "lp-round" || algo == "local-search") lp_wanted = true;
    bool have_lp = false;
    std::string lp_error_kind;
    std::string lp_error_what;
    if (lp_wanted) {
        try {
            fractional = normalize(inst, solve_lp(inst, spec.k), spec.k);
            lp_value = fractional.lp_value;
            have_lp = true;
            out.artifacts.push_back({"solutions/solution_" + std::to_string(index) + ".json",
                                     solution_to_json(fractional)});
        } catch (const Error& e) {
            lp_error_kind = e.kind();
            lp_error_what = e.what();
        }
    }

    for (const std::string& algo : spec.algorithms) {
        BenchRow row = base;
        row.algorithm = algo;
        row.opt = opt;
        row.note = stage_note;
        try {
            if (algo == "lp-round") {
                if (!have_lp) throw Error(lp_error_kind, lp_error_what);
                BallsAndWitnesses bw = build_balls_and_witnesses(inst, fractional, beta_eff);
                markov_radius_check(fractional, bw, beta_eff);
                GroupPartition part = build_partition(fractional, bw, beta_eff);
                RoundingStats stats =
                    round_many(part, inst, lp_value, spec.trials, inst_seed);
                row.lp_value = lp_value;
                row.cost = stats.mean_cost;
                row.ratio = stats.mean_ratio;
                row.bound = alpha_lp_tight(beta_eff).value;
                const double slack =
                    3.0 * stats.std_ratio / std::sqrt(static_cast<double>(spec.trials));
                row.pass = stats.mean_ratio <= row.bound + slack + 1e-9;
            } else if (algo == "local-search") {
                SearchConfig cfg;
                cfg.m = std::min(m, inst.n_centers());
                cfg.p = spec.p_swap;
                cfg.seed = inst_seed;
                SearchTrace trace = run_local_search(inst, cfg);
                row.cost = trace.final_solution.total_cost;
                row.lp_value = lp_value;
                row.bound = alpha_local(beta_eff, spec.p_swap, 0.0);
                if (opt >= 0.0) {
                    row.ratio = opt > 0.0 ? row.cost / opt : (row.cost > 1e-12 ? -1.0 : 1.0);
                    row.pass = row.cost <= row.bound * 1.1 * opt + 1e-9;
                } else if (have_lp) {
                    row.ratio = lp_value > 0.0 ? row.cost / lp_value : 0.0;
                    row.pass = row.cost <= row.bound * 1.1 * std::max(lp_value, 0.0) + 1e-9;
                    row.note += (row.note.empty() ? "" : ";");
                    row.note += "vs-lp";
                } else {
                    row.note += (row.note.empty() ? "" : ";");
                    row.note += "no-reference";
                }
                out.artifacts.push_back({"solutions/local_" + std::to_string(index) + ".json",
                                         trace_to_json(trace, cfg)});
            } else if (algo == "kmeanspp-baseline") {
                KmeansppResult baseline = kmeanspp_baseline(raw, std::min(m, raw.size()), inst_seed);
                row.cost = baseline.cost;
                if (opt > 0.0) row.ratio = baseline.cost / opt;
                row.pass = true;  // reference row, no guarantee attached
            } else {
                throw errors::config("unknown algorithm '" + algo + "'");
            }
        } catch (const Error& e) {
            row.pass = false;
            row.note += (row.note.empty() ? "" : ";");
            row.note += std::string("error:") + e.kind() + " " + e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string csv_cell(double v) { return v < 0.0 ? std::string() : format_double(v); }

} // namespace

std::string BenchReport::to_csv() const {
    std::string out =
        "instance,algorithm,n,dim,k,m,beta,lp_value,opt,cost,ratio,bound,bound_version,pass,note\n";
    for (const auto& row : rows) {
        out += std::to_string(row.instance);
        out += ',' + row.algorithm;
        out += ',' + std::to_string(row.n);
        out += ',' + std::to_string(row.dim);
        out += ',' + std::to_string(row.k);
        out += ',' + std::to_string(row.m);
        out += ',' + format_double(row.beta);
        out += ',' + csv_cell(row.lp_value);
        out += ',' + csv_cell(row.opt);
        out += ',' + csv_cell(row.cost);
        out += ',' + csv_cell(row.ratio);
        out += ',' + csv_cell(row.bound);
        out += ',' + row.bound_version;
        out += row.pass ? ",1," : ",0,";
        out += row.note;
        out += '\n';
    }
    return out;
}

std::string BenchReport::summary_json() const {
    json doc;
    doc["schema"] = 1;
    doc["rows"] = rows.size();
    int failures = 0;
    for (const auto& row : rows)
        if (!row.pass) ++failures;
    doc["failures"] = failures;
    doc["all_pass"] = failures == 0;
    doc["bound_version"] = kBoundsVersion;
    return doc.dump();
}

BenchReport run_experiment(const ExperimentSpec& spec) {
    std::vector<InstanceOutcome> outcomes(static_cast<std::size_t>(spec.instances));
    const int jobs = std::max(1, spec.jobs);

    if (jobs == 1) {
        for (int i = 0; i < spec.instances; ++i)
            outcomes[static_cast<std::size_t>(i)] = run_instance(spec, i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= spec.instances) break;
                outcomes[static_cast<std::size_t>(i)] = run_instance(spec, i);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min(jobs, spec.instances); ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchReport report;
    for (auto& outcome : outcomes) {
        for (auto& row : outcome.rows) {
            report.all_pass = report.all_pass && row.pass;
            report.rows.push_back(std::move(row));
        }
        for (auto& artifact : outcome.artifacts) report.artifacts.push_back(std::move(artifact));
    }
    return report;
}

} // namespace bikm
