#ifndef BIKM_BENCH_HPP
#define BIKM_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bikm/core.hpp"

namespace bikm {

struct GeneratorSpec {
    enum class Kind { gaussian_mixture, uniform_cube, file };
    Kind kind = Kind::uniform_cube;
    int n = 8;
    int dim = 2;
    int true_k = 2;           // gaussian mixture only
    double separation = 4.0;  // gaussian mixture only
    std::string path;         // file only
};

// Deterministic point cloud for (spec, seed).
PointSet generate(const GeneratorSpec& spec, std::uint64_t seed);

struct KmeansppResult {
    std::vector<int> chosen;
    double cost = 0.0;
};

// Sequential distance-squared-weighted seeding; the cost of the induced
// clustering, no refinement iterations.
KmeansppResult kmeanspp_baseline(const PointSet& points, int m, std::uint64_t seed);

// Deterministic greedy cover keeping at most max_centers candidates; used to
// bring reduction-sized candidate sets down to LP-solvable size.
PointSet thin_candidates(const PointSet& demands, const PointSet& centers, int max_centers);

struct ExperimentSpec {
    GeneratorSpec generator;
    int instances = 1;
    int k = 2;
    double beta = 2.0;
    int m = 0;  // 0 means beta * k
    int p_swap = 1;
    double epsilon = 0.3;
    int trials = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> algorithms = {"lp-round", "local-search", "kmeanspp-baseline"};
    int lp_max_centers = 32;
    int jobs = 1;
};

ExperimentSpec experiment_from_json(const std::string& text);

struct BenchRow {
    int instance = 0;
    std::string algorithm;
    int n = 0;
    int dim = 0;
    int k = 0;
    int m = 0;
    double beta = 0.0;
    double lp_value = -1.0;  // negative means unavailable
    double opt = -1.0;
    double cost = -1.0;
    double ratio = -1.0;
    double bound = -1.0;
    std::string bound_version;
    bool pass = true;
    std::string note;
};

struct BenchArtifact {
    std::string relative_path;
    std::string content;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchArtifact> artifacts;
    bool all_pass = true;

    std::string to_csv() const;
    std::string summary_json() const;
};

// Full pipeline per instance and algorithm; per-stage failures become rows
// with a note instead of aborting the batch.
BenchReport run_experiment(const ExperimentSpec& spec);

} // namespace bikm

#endif
