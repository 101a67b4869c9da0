#pragma once

// Experiment orchestration: deterministic parallel replica execution,
// fixed-order aggregation, verification suites, and CSV/JSONL/manifest
// persistence. Outputs are a pure function of (config, seed), independent of
// the worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "rwcre/config.hpp"
#include "rwcre/stats.hpp"

namespace rwcre {

struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunOutput {
    nlohmann::json manifest;
    std::vector<ResultTable> tables;
    std::vector<nlohmann::json> reports;  // one JSON record per suite result
    bool all_pass = true;
};

// Suite pass thresholds (pinned; recorded in every report).
struct SuiteThresholds {
    double marginal_final_ks = 0.15;  // KS at the largest horizon
    double fdd_corr_tol = 0.1;        // entrywise correlation error, R1
    double fdd_increment_corr_tol = 0.1;
    double r2_min_pairwise_corr = 0.8;
    double blockvar_ratio_lo = 0.5;
    double blockvar_ratio_hi = 2.0;
    double blockvar_min_gap = 1e5;  // only blocks with T_j >= this are judged
};

RunOutput run_experiment(const ExperimentConfig& config, int workers = 1,
                         const SuiteThresholds& thresholds = {});

// Persist tables (CSV, 17 significant digits), reports (JSONL) and the
// manifest under config.out_dir.
void write_output(const RunOutput& output, const std::string& out_dir);

// Re-run the experiment recorded in a manifest file; out_dir overrides the
// recorded output directory when non-empty.
RunOutput run_from_manifest(const std::string& manifest_path, const std::string& out_dir = "",
                            int workers = 1);

// Gnuplot-ready ECDF-vs-target columns (x, ecdf, target_cdf) for a KS report.
ResultTable ks_plotdata(std::vector<double> samples,
                        const std::function<double(double)>& target_cdf, const std::string& name);

std::string format_g17(double v);

}  // namespace rwcre
