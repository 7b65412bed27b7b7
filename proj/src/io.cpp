#include "bikm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bikm {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string points_to_csv(const PointSet& points) {
    std::string out;
    for (int i = 0; i < points.size(); ++i) {
        const auto p = points.point(i);
        for (std::size_t d = 0; d < p.size(); ++d) {
            if (d) out += ',';
            out += format_double(p[d]);
        }
        out += '\n';
    }
    return out;
}

PointSet points_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw errors::io("cannot parse coordinate '" + cell + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw errors::io("CSV contains no points");
    return PointSet::from_rows(rows);
}

namespace {

json points_to_rows(const PointSet& pts) {
    json rows = json::array();
    for (int i = 0; i < pts.size(); ++i) {
        json row = json::array();
        for (double v : pts.row(i)) row.push_back(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

PointSet rows_to_points(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw errors::io(std::string(what) + " must be a nonempty array of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : rows) {
        if (!row.is_array()) throw errors::io(std::string(what) + " rows must be arrays");
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        out.push_back(std::move(r));
    }
    return PointSet::from_rows(out);
}

} // namespace

std::string instance_to_json(const KMedianInstance& inst) {
    if (!inst.has_geometry())
        throw errors::io("only geometric (sqeuclidean) instances serialize to JSON");
    json doc;
    doc["schema"] = 1;
    doc["metric"] = "sqeuclidean";
    doc["demands"] = points_to_rows(inst.demand_points());
    doc["centers"] = points_to_rows(inst.center_points());
    if (inst.back_map) doc["back_map"] = *inst.back_map;
    return doc.dump();
}

KMedianInstance instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw errors::io(std::string("invalid instance JSON: ") + e.what());
    }
    if (doc.value("metric", "") != "sqeuclidean")
        throw errors::io("unsupported metric; expected \"sqeuclidean\"");
    try {
        PointSet demands = rows_to_points(doc.at("demands"), "demands");
        PointSet centers = rows_to_points(doc.at("centers"), "centers");
        KMedianInstance inst = KMedianInstance::from_points(std::move(demands), std::move(centers));
        if (doc.contains("back_map")) {
            std::vector<int> bm = doc.at("back_map").get<std::vector<int>>();
            if (static_cast<int>(bm.size()) != inst.n_demands())
                throw errors::io("back_map length must match the demand count");
            inst.back_map = std::move(bm);
        }
        return inst;
    } catch (const json::exception& e) {
        throw errors::io(std::string("malformed instance JSON: ") + e.what());
    }
}

std::string solution_to_json(const FractionalSolution& sol) {
    json doc;
    doc["schema"] = 1;
    doc["k"] = sol.k;
    doc["value"] = sol.lp_value;
    json copies = json::array();
    for (const auto& cp : sol.copies) copies.push_back({{"center", cp.center}, {"weight", cp.weight}});
    doc["copies"] = std::move(copies);
    json z = json::array();
    for (std::size_t x = 0; x < sol.support.size(); ++x)
        for (int id : sol.support[x])
            z.push_back({static_cast<int>(x), id, sol.copies[static_cast<std::size_t>(id)].weight});
    doc["z"] = std::move(z);
    doc["radii"] = sol.radii;
    return doc.dump();
}

FractionalSolution solution_from_json(const std::string& text, const KMedianInstance& inst) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw errors::io(std::string("invalid solution JSON: ") + e.what());
    }
    FractionalSolution sol;
    try {
        sol.k = doc.at("k").get<int>();
        for (const auto& cp : doc.at("copies"))
            sol.copies.push_back({cp.at("center").get<int>(), cp.at("weight").get<double>()});
        sol.support.assign(static_cast<std::size_t>(inst.n_demands()), {});
        for (const auto& triple : doc.at("z")) {
            const int x = triple.at(0).get<int>();
            const int id = triple.at(1).get<int>();
            if (x < 0 || x >= inst.n_demands() || id < 0 ||
                id >= static_cast<int>(sol.copies.size()))
                throw errors::io("z triple out of range");
            sol.support[static_cast<std::size_t>(x)].push_back(id);
        }
    } catch (const json::exception& e) {
        throw errors::io(std::string("malformed solution JSON: ") + e.what());
    }
    auto [radii, value] = lp_radii(inst, sol);
    sol.radii = std::move(radii);
    sol.lp_value = value;
    validate_solution(inst, sol);
    return sol;
}

std::string rounding_report_json(const RoundingStats& stats, double beta, int m,
                                 std::uint64_t seed, const RoundDiagnostics* diag) {
    json doc;
    doc["schema"] = 1;
    doc["beta"] = beta;
    doc["m"] = m;
    doc["trials"] = stats.trials;
    doc["seed"] = seed;
    doc["lp_value"] = stats.lp_value;
    doc["mean_cost"] = stats.mean_cost;
    doc["mean_ratio"] = stats.mean_ratio;
    doc["std_ratio"] = stats.std_ratio;
    doc["min_cost"] = stats.min_cost;
    doc["max_cost"] = stats.max_cost;
    doc["best_trial"] = stats.best_trial;
    int min_open = stats.distinct_opened.empty() ? 0 : stats.distinct_opened.front();
    int max_open = min_open;
    for (int v : stats.distinct_opened) {
        min_open = std::min(min_open, v);
        max_open = std::max(max_open, v);
    }
    doc["distinct_opened_min"] = min_open;
    doc["distinct_opened_max"] = max_open;
    if (diag) {
        json rows = json::array();
        for (std::size_t x = 0; x < diag->radii.size(); ++x)
            rows.push_back({{"radius", diag->radii[x]},
                            {"ball_radius", diag->ball_radii[x]},
                            {"witness", diag->witness[x]}});
        doc["diagnostics"] = std::move(rows);
        doc["best_solution"] = json::parse(clustering_to_json(diag->best_solution));
    }
    return doc.dump();
}

std::string trials_csv(const RoundingStats& stats) {
    std::string out = "trial,cost,ratio\n";
    const bool zero_lp = stats.lp_value <= 1e-15;
    for (int t = 0; t < stats.trials; ++t) {
        const double cost = stats.costs[static_cast<std::size_t>(t)];
        const double ratio = zero_lp ? 0.0 : cost / stats.lp_value;
        out += std::to_string(t);
        out += ',';
        out += format_double(cost);
        out += ',';
        out += format_double(ratio);
        out += '\n';
    }
    return out;
}

std::string clustering_to_json(const ClusteringSolution& sol) {
    json doc;
    doc["schema"] = 1;
    doc["opened"] = sol.opened;
    doc["assignment"] = sol.assignment;
    doc["per_point_cost"] = sol.per_point_cost;
    doc["total_cost"] = sol.total_cost;
    return doc.dump();
}

std::string trace_to_json(const SearchTrace& trace, const SearchConfig& cfg) {
    json doc;
    doc["schema"] = 1;
    doc["m"] = cfg.m;
    doc["p"] = cfg.p;
    doc["delta"] = cfg.delta;
    doc["init"] = cfg.greedy_init ? "greedy" : "random";
    doc["converged"] = trace.converged;
    json steps = json::array();
    for (const auto& step : trace.iterations)
        steps.push_back({{"closed", step.closed},
                         {"opened", step.opened},
                         {"old_cost", step.old_cost},
                         {"new_cost", step.new_cost}});
    doc["iterations"] = std::move(steps);
    doc["final"] = json::parse(clustering_to_json(trace.final_solution));
    return doc.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw errors::io("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw errors::io("cannot write " + path);
    out << content;
}

} // namespace bikm
