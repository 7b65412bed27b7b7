#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bikm/bench.hpp"
#include "bikm/bounds.hpp"
#include "bikm/core.hpp"
#include "bikm/io.hpp"
#include "bikm/local.hpp"
#include "bikm/lp.hpp"
#include "bikm/oracle.hpp"
#include "bikm/reduce.hpp"
#include "bikm/round.hpp"

namespace fs = std::filesystem;
using namespace bikm;

namespace {

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_file(path, content);
    }
}

struct GenArgs {
    std::string kind = "uniform-cube";
    int n = 8;
    int dim = 2;
    int true_k = 2;
    double separation = 4.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    GeneratorSpec spec;
    if (a.kind == "gaussian-mixture")
        spec.kind = GeneratorSpec::Kind::gaussian_mixture;
    else if (a.kind == "uniform-cube")
        spec.kind = GeneratorSpec::Kind::uniform_cube;
    else
        throw errors::config("unknown generator kind '" + a.kind + "'");
    spec.n = a.n;
    spec.dim = a.dim;
    spec.true_k = a.true_k;
    spec.separation = a.separation;
    emit(a.out, points_to_csv(generate(spec, a.seed)));
    return 0;
}

struct ReduceArgs {
    std::string points;
    double epsilon = 0.3;
    int dim_cap = 1 << 20;
    double grid_base = 2.0;
    long long cap = 200000;
    int max_centers = 0;  // 0 keeps the full candidate set
    std::uint64_t seed = 0;
    std::string out;
    std::string report;
};

int cmd_reduce(const ReduceArgs& a) {
    const PointSet points = points_from_csv(read_file(a.points));
    ReductionConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.target_dim_cap = a.dim_cap;
    cfg.grid_scale_base = a.grid_base;
    cfg.max_candidates = a.cap;
    cfg.seed = a.seed;
    ReductionResult red = build_instance(points, cfg);
    KMedianInstance inst = std::move(red.instance);
    int kept = red.centroid_set.size();
    if (a.max_centers > 0 && red.centroid_set.size() > a.max_centers) {
        PointSet thinned = thin_candidates(red.projected, red.centroid_set, a.max_centers);
        kept = thinned.size();
        inst = KMedianInstance::from_points(red.projected, std::move(thinned));
        inst.back_map = red.psi;
    }
    emit(a.out, instance_to_json(inst));
    if (!a.report.empty()) {
        std::string rep = "{\"schema\":1,\"n\":" + std::to_string(points.size()) +
                          ",\"p\":" + std::to_string(points.dim()) +
                          ",\"p_tilde\":" + std::to_string(red.p_tilde) +
                          ",\"candidates\":" + std::to_string(red.centroid_set.size()) +
                          ",\"kept\":" + std::to_string(kept) +
                          ",\"achieved_distortion\":" + format_double(red.achieved_distortion) + "}";
        emit(a.report, rep);
    }
    return 0;
}

struct LpArgs {
    std::string instance;
    int k = 2;
    double tol = 1e-7;
    std::string out;
};

int cmd_lp(const LpArgs& a) {
    const KMedianInstance inst = instance_from_json(read_file(a.instance));
    RawLpSolution raw = solve_lp(inst, a.k, a.tol);
    FractionalSolution sol = normalize(inst, raw, a.k);
    emit(a.out, solution_to_json(sol));
    return 0;
}

struct RoundArgs {
    std::string instance;
    std::string solution;
    double beta = 0.0;
    int m = 0;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string csv;
};

int cmd_round(const RoundArgs& a) {
    const KMedianInstance inst = instance_from_json(read_file(a.instance));
    const FractionalSolution sol = solution_from_json(read_file(a.solution), inst);
    double beta = a.beta;
    int m = a.m;
    if (m > 0) {
        beta = static_cast<double>(m) / sol.k;
        if (!(beta > 1.0)) throw errors::config("m must exceed k");
    } else if (beta > 1.0) {
        const double m_real = beta * sol.k;
        if (std::fabs(m_real - std::round(m_real)) > 1e-9)
            throw errors::config("beta * k must be an integer; pass --m instead");
        m = static_cast<int>(std::round(m_real));
    } else {
        throw errors::config("pass --beta > 1 or --m > k");
    }
    BallsAndWitnesses bw = build_balls_and_witnesses(inst, sol, beta);
    markov_radius_check(sol, bw, beta);
    GroupPartition part = build_partition(sol, bw, beta);
    RoundingStats stats = round_many(part, inst, sol.lp_value, a.trials, a.seed);

    RoundDiagnostics diag;
    diag.radii = sol.radii;
    for (const Ball& ball : bw.balls) diag.ball_radii.push_back(ball.radius);
    diag.witness = bw.witnesses.witness;
    diag.best_solution = sample_solution(part, inst, trial_seed(a.seed, stats.best_trial));

    emit(a.out, rounding_report_json(stats, beta, m, a.seed, &diag));
    if (!a.csv.empty()) emit(a.csv, trials_csv(stats));
    return 0;
}

struct LocalArgs {
    std::string instance;
    int m = 2;
    int p = 1;
    double delta = 1e-3;
    long long max_iters = 10000;
    std::string init = "greedy";
    std::uint64_t seed = 0;
    std::string out;
    std::string solution_out;
};

int cmd_local(const LocalArgs& a) {
    const KMedianInstance inst = instance_from_json(read_file(a.instance));
    SearchConfig cfg;
    cfg.m = a.m;
    cfg.p = a.p;
    cfg.delta = a.delta;
    cfg.max_iters = a.max_iters;
    cfg.seed = a.seed;
    if (a.init == "greedy")
        cfg.greedy_init = true;
    else if (a.init == "random")
        cfg.greedy_init = false;
    else
        throw errors::config("init must be 'greedy' or 'random'");
    SearchTrace trace = run_local_search(inst, cfg);
    emit(a.out, trace_to_json(trace, cfg));
    if (!a.solution_out.empty()) emit(a.solution_out, clustering_to_json(trace.final_solution));
    return 0;
}

struct BoundsArgs {
    double beta = 0.0;
    double beta_min = 1.05;
    double beta_max = 4.0;
    double step = 0.05;
    bool as_printed = false;
    std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
    if (a.beta > 0.0) {
        const TightBound tight = alpha_lp_tight(a.beta);
        std::string text;
        text += "beta " + format_double(a.beta) + "\n";
        text += "alpha_lp_closed " +
                format_double(a.as_printed ? alpha_lp_closed_as_printed(a.beta)
                                           : alpha_lp_closed(a.beta)) +
                "\n";
        text += "alpha_lp_tight " + format_double(tight.value) + " (argmax_gamma " +
                format_double(tight.argmax_gamma) + ")\n";
        for (int p = 1; p <= 3; ++p)
            text += "alpha_local_p" + std::to_string(p) + " " +
                    format_double(alpha_local(a.beta, p, 0.0)) + "\n";
        text += "alpha_pipage " + format_double(alpha_pipage(a.beta)) + "\n";
        text += "alpha_overall " + format_double(alpha_overall(a.beta)) + "\n";
        std::cout << text;
        return 0;
    }
    std::string csv =
        "beta,alpha_lp_closed,alpha_lp_tight,alpha_local_p1,alpha_local_p2,alpha_local_p3,"
        "alpha_pipage,alpha_overall\n";
    for (double beta = a.beta_min; beta <= a.beta_max + 1e-12; beta += a.step) {
        csv += format_double(beta);
        csv += ',' + format_double(a.as_printed ? alpha_lp_closed_as_printed(beta)
                                                : alpha_lp_closed(beta));
        csv += ',' + format_double(alpha_lp_tight(beta).value);
        for (int p = 1; p <= 3; ++p) csv += ',' + format_double(alpha_local(beta, p, 0.0));
        csv += ',' + format_double(alpha_pipage(beta));
        csv += ',' + format_double(alpha_overall(beta));
        csv += '\n';
    }
    emit(a.out, csv);
    return 0;
}

struct OracleArgs {
    std::string mode;  // kmeans | kmedian | verify-centroid
    std::string points;
    std::string instance;
    std::string candidates;
    int k = 2;
    double eps = 0.1;
};

int cmd_oracle(const OracleArgs& a) {
    if (a.mode == "kmeans") {
        const PointSet pts = points_from_csv(read_file(a.points));
        const BruteKmeansResult res = brute_kmeans(pts, a.k);
        std::cout << format_double(res.cost) << "\n";
        return 0;
    }
    if (a.mode == "kmedian") {
        const KMedianInstance inst = instance_from_json(read_file(a.instance));
        const BruteKmedianResult res = brute_kmedian(inst, a.k);
        std::cout << format_double(res.cost) << "\n";
        return 0;
    }
    if (a.mode == "verify-centroid") {
        const PointSet pts = points_from_csv(read_file(a.points));
        const PointSet cand = points_from_csv(read_file(a.candidates));
        const CentroidSetCheck check = verify_centroid_set(pts, cand, a.eps);
        std::cout << (check.ok ? "ok" : "fail") << " worst_ratio "
                  << format_double(check.worst_ratio) << "\n";
        return check.ok ? 0 : 1;
    }
    throw errors::config("oracle mode must be kmeans, kmedian, or verify-centroid");
}

struct BenchArgs {
    std::string spec;
    std::string out_dir;
    int jobs = 0;
};

int cmd_bench(const BenchArgs& a) {
    ExperimentSpec spec = experiment_from_json(read_file(a.spec));
    if (a.jobs > 0) spec.jobs = a.jobs;
    BenchReport report = run_experiment(spec);
    if (!a.out_dir.empty()) {
        fs::create_directories(fs::path(a.out_dir) / "instances");
        fs::create_directories(fs::path(a.out_dir) / "solutions");
        for (const auto& artifact : report.artifacts)
            write_file((fs::path(a.out_dir) / artifact.relative_path).string(), artifact.content);
        write_file((fs::path(a.out_dir) / "report.csv").string(), report.to_csv());
        write_file((fs::path(a.out_dir) / "summary.json").string(), report.summary_json());
    } else {
        std::cout << report.to_csv();
    }
    return report.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bi-criteria k-means / k-median toolkit"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a point cloud CSV");
    gen->add_option("--kind", gen_args.kind, "gaussian-mixture | uniform-cube");
    gen->add_option("--n", gen_args.n, "number of points")->required();
    gen->add_option("--dim", gen_args.dim, "dimension");
    gen->add_option("--true-k", gen_args.true_k, "mixture components");
    gen->add_option("--separation", gen_args.separation, "mixture center spread");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--out", gen_args.out, "output CSV path (default stdout)");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "project points and build a k-median instance");
    reduce->add_option("--points", reduce_args.points, "input CSV")->required();
    reduce->add_option("--epsilon", reduce_args.epsilon, "accuracy knob in (0, 0.5)");
    reduce->add_option("--dim-cap", reduce_args.dim_cap, "cap on the projected dimension");
    reduce->add_option("--grid-base", reduce_args.grid_base, "radius ladder ratio");
    reduce->add_option("--cap", reduce_args.cap, "candidate-count cap");
    reduce->add_option("--max-centers", reduce_args.max_centers,
                       "thin the candidate set to at most this many centers");
    reduce->add_option("--seed", reduce_args.seed, "RNG seed");
    reduce->add_option("--out", reduce_args.out, "instance JSON path (default stdout)");
    reduce->add_option("--report", reduce_args.report, "reduction report JSON path");

    LpArgs lp_args;
    auto* lp = app.add_subcommand("lp", "solve and normalize the k-median relaxation");
    lp->add_option("--instance", lp_args.instance, "instance JSON")->required();
    lp->add_option("--k", lp_args.k, "number of centers")->required();
    lp->add_option("--tol", lp_args.tol, "feasibility tolerance");
    lp->add_option("--out", lp_args.out, "solution JSON path (default stdout)");

    RoundArgs round_args;
    auto* round = app.add_subcommand("round", "randomized rounding of an LP solution");
    round->add_option("--instance", round_args.instance, "instance JSON")->required();
    round->add_option("--solution", round_args.solution, "solution JSON")->required();
    round->add_option("--beta", round_args.beta, "open beta*k centers (beta*k integral)");
    round->add_option("--m", round_args.m, "open exactly m centers");
    round->add_option("--trials", round_args.trials, "Monte-Carlo trials");
    round->add_option("--seed", round_args.seed, "RNG seed");
    round->add_option("--out", round_args.out, "report JSON path (default stdout)");
    round->add_option("--csv", round_args.csv, "per-trial CSV path");

    LocalArgs local_args;
    auto* local = app.add_subcommand("localsearch", "p-swap local search");
    local->add_option("--instance", local_args.instance, "instance JSON")->required();
    local->add_option("--m", local_args.m, "open centers")->required();
    local->add_option("--p", local_args.p, "max swap size");
    local->add_option("--delta", local_args.delta, "stopping-rule knob");
    local->add_option("--max-iters", local_args.max_iters, "iteration cap");
    local->add_option("--init", local_args.init, "greedy | random");
    local->add_option("--seed", local_args.seed, "RNG seed");
    local->add_option("--out", local_args.out, "trace JSON path (default stdout)");
    local->add_option("--solution-out", local_args.solution_out, "final solution JSON path");

    BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "evaluate the guarantee formulas");
    bounds->add_option("--beta", bounds_args.beta, "single beta to report");
    bounds->add_option("--beta-min", bounds_args.beta_min, "sweep start");
    bounds->add_option("--beta-max", bounds_args.beta_max, "sweep end");
    bounds->add_option("--step", bounds_args.step, "sweep step");
    bounds->add_flag("--as-printed", bounds_args.as_printed,
                     "evaluate the closed form with the 6*beta/(1-beta) variant");
    bounds->add_option("--out", bounds_args.out, "CSV path for sweeps (default stdout)");

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->add_option("mode", oracle_args.mode, "kmeans | kmedian | verify-centroid")->required();
    oracle->add_option("--points", oracle_args.points, "points CSV");
    oracle->add_option("--instance", oracle_args.instance, "instance JSON");
    oracle->add_option("--candidates", oracle_args.candidates, "candidate CSV");
    oracle->add_option("--k", oracle_args.k, "number of clusters/centers");
    oracle->add_option("--eps", oracle_args.eps, "tolerance for verify-centroid");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run an experiment spec");
    bench->add_option("--spec", bench_args.spec, "experiment spec JSON")->required();
    bench->add_option("--out", bench_args.out_dir, "output directory");
    bench->add_option("--jobs", bench_args.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_args);
        if (reduce->parsed()) return cmd_reduce(reduce_args);
        if (lp->parsed()) return cmd_lp(lp_args);
        if (round->parsed()) return cmd_round(round_args);
        if (local->parsed()) return cmd_local(local_args);
        if (bounds->parsed()) return cmd_bounds(bounds_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const Error& e) {
        std::cerr << "error[" << e.kind() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
