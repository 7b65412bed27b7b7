#ifndef BIKM_IO_HPP
#define BIKM_IO_HPP

#include <string>
#include <vector>

#include "bikm/core.hpp"
#include "bikm/local.hpp"
#include "bikm/lp.hpp"
#include "bikm/round.hpp"

namespace bikm {

// One point per row, coordinates as decimal floats, no header.
std::string points_to_csv(const PointSet& points);
PointSet points_from_csv(const std::string& text);

// {"schema":1, "metric":"sqeuclidean", "demands":[[...]], "centers":[[...]]}
// plus an optional "back_map". Only geometric instances serialize.
std::string instance_to_json(const KMedianInstance& inst);
KMedianInstance instance_from_json(const std::string& text);

std::string solution_to_json(const FractionalSolution& sol);
FractionalSolution solution_from_json(const std::string& text, const KMedianInstance& inst);

// Per-demand view of one rounding run: fractional radius, ball radius, witness.
struct RoundDiagnostics {
    std::vector<double> radii;
    std::vector<double> ball_radii;
    std::vector<int> witness;
    ClusteringSolution best_solution;  // cheapest sampled trial
};

std::string rounding_report_json(const RoundingStats& stats, double beta, int m,
                                 std::uint64_t seed, const RoundDiagnostics* diag = nullptr);
std::string trials_csv(const RoundingStats& stats);

std::string trace_to_json(const SearchTrace& trace, const SearchConfig& cfg);
std::string clustering_to_json(const ClusteringSolution& sol);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Fixed %.17g rendering so CSV bytes do not depend on locale or stream state.
std::string format_double(double v);

} // namespace bikm

#endif
