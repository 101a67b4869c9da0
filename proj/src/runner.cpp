#include "rwcre/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "rwcre/pmf.hpp"
#include "rwcre/theory.hpp"
#include "rwcre/walker.hpp"

namespace rwcre {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct HorizonPlan {
    int64_t n;
    double chi;
    std::vector<int64_t> nodes;          // sorted unique sample indices
    std::vector<size_t> grid_floor_idx;  // per grid point, index into nodes
    std::vector<size_t> grid_ceil_idx;
};

HorizonPlan plan_horizon(int64_t n, const std::vector<double>& grid, double chi) {
    HorizonPlan plan;
    plan.n = n;
    plan.chi = chi;
    std::vector<int64_t> raw;
    for (double t : grid) {
        const double tn = t * static_cast<double>(n);
        const int64_t lo = static_cast<int64_t>(std::floor(tn));
        raw.push_back(lo);
        if (tn > std::floor(tn) && lo + 1 <= n) raw.push_back(lo + 1);
    }
    raw.push_back(n);  // endpoint for the marginal suite
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    plan.nodes = raw;
    const auto index_of = [&](int64_t v) {
        return static_cast<size_t>(std::lower_bound(raw.begin(), raw.end(), v) - raw.begin());
    };
    for (double t : grid) {
        const double tn = t * static_cast<double>(n);
        const int64_t lo = static_cast<int64_t>(std::floor(tn));
        plan.grid_floor_idx.push_back(index_of(lo));
        plan.grid_ceil_idx.push_back(index_of(std::min(lo + 1, n)));
    }
    return plan;
}

// Static replica striping; results land in replica-indexed slots so the
// aggregation order never depends on scheduling.
template <typename Fn>
void parallel_replicas(int64_t replicas, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || replicas < 2 * workers) {
        for (int64_t r = 0; r < replicas; ++r) fn(static_cast<uint32_t>(r));
        return;
    }
    std::vector<std::thread> pool;
    const int64_t chunk = (replicas + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int64_t lo = w * chunk;
        const int64_t hi = std::min(replicas, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int64_t r = lo; r < hi; ++r) fn(static_cast<uint32_t>(r));
        });
    }
    for (auto& t : pool) t.join();
}

bool has_suite(const ExperimentConfig& cfg, const std::string& name) {
    return std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunOutput run_experiment(const ExperimentConfig& cfg, int workers,
                         const SuiteThresholds& thresholds) {
    const ResamplingRule rule = cfg.rule.build();
    CoolingSchedule schedule = cfg.schedule.build();

    const auto moments = rule.log_rho_moments();
    const double sigma_v_sq = theory::sigma_V_sq();
    const bool r1 = schedule.kind() == ScheduleKind::Polynomial;
    const bool r2 = schedule.kind() == ScheduleKind::Exponential;

    theory::ScalingConstants consts{};
    consts.sigma_mu_sq = moments.variance;
    consts.sigma_V_sq = sigma_v_sq;
    if (r1) {
        consts.regime = theory::Regime::R1;
        consts.B = schedule.B();
        consts.beta = schedule.beta();
    } else if (r2) {
        consts.regime = theory::Regime::R2;
        consts.C = schedule.C();
    }

    RunOutput out;
    nlohmann::json chi_record = nlohmann::json::object();

    for (int64_t n : cfg.horizons) {
        schedule.reserve_horizon(n);
        // chi = 1 outside the two asymptotic regimes: paths stay raw.
        const double chi = (r1 || r2) && n >= 2 ? theory::chi_n(consts, static_cast<double>(n)) : 1.0;
        chi_record[std::to_string(n)] = chi;
        const HorizonPlan plan = plan_horizon(n, cfg.grid, chi);

        const auto replicas = static_cast<size_t>(cfg.replicas);
        std::vector<std::vector<int64_t>> node_x(replicas);
        std::vector<std::vector<int64_t>> block_x;
        const bool want_blocks = has_suite(cfg, "blockvar");
        if (want_blocks) block_x.resize(replicas);

        parallel_replicas(cfg.replicas, workers, [&](uint32_t r) {
            auto run = simulate_sampled(rule, schedule, n, cfg.seed, r, plan.nodes);
            node_x[r] = std::move(run.node_x);
            if (want_blocks) block_x[r] = std::move(run.block_x);
        });

        // Monte Carlo centering at every sampled node.
        std::vector<std::vector<double>> node_vals(replicas,
                                                   std::vector<double>(plan.nodes.size()));
        for (size_t r = 0; r < replicas; ++r)
            for (size_t j = 0; j < plan.nodes.size(); ++j)
                node_vals[r][j] = static_cast<double>(node_x[r][j]);
        const Centering centering = center(node_vals);

        // Scaled paths on the grid.
        std::vector<std::vector<double>> paths(replicas);
        std::vector<double> marginal(replicas);
        const size_t end_idx = plan.nodes.size() - 1;  // node == n
        for (size_t r = 0; r < replicas; ++r) {
            std::vector<int64_t> x_floor(cfg.grid.size()), x_ceil(cfg.grid.size());
            std::vector<double> m_floor(cfg.grid.size()), m_ceil(cfg.grid.size());
            for (size_t g = 0; g < cfg.grid.size(); ++g) {
                x_floor[g] = node_x[r][plan.grid_floor_idx[g]];
                x_ceil[g] = node_x[r][plan.grid_ceil_idx[g]];
                m_floor[g] = centering.mean[plan.grid_floor_idx[g]];
                m_ceil[g] = centering.mean[plan.grid_ceil_idx[g]];
            }
            paths[r] = scaled_values(cfg.grid, n, x_floor, x_ceil, m_floor, m_ceil, chi);
            marginal[r] =
                (static_cast<double>(node_x[r][end_idx]) - centering.mean[end_idx]) / std::sqrt(chi);
        }

        // Per-replica table: endpoint plus the scaled grid values.
        ResultTable table;
        table.name = "replicas_n" + std::to_string(n);
        table.columns = {"replica", "x_n", "x_n_scaled"};
        for (double t : cfg.grid) table.columns.push_back("X(" + format_g17(t) + ")");
        for (size_t r = 0; r < replicas; ++r) {
            std::vector<double> row = {static_cast<double>(r),
                                       static_cast<double>(node_x[r][end_idx]), marginal[r]};
            row.insert(row.end(), paths[r].begin(), paths[r].end());
            table.rows.push_back(std::move(row));
        }
        out.tables.push_back(std::move(table));

        if (cfg.dump_paths) {
            ResultTable raw;
            raw.name = "raw_paths_n" + std::to_string(n);
            raw.columns = {"replica", "i", "x"};
            for (size_t r = 0; r < replicas; ++r) {
                const Trajectory traj = simulate(rule, schedule, n, cfg.seed, static_cast<uint32_t>(r));
                for (int64_t i = 0; i <= n; ++i)
                    raw.rows.push_back({static_cast<double>(r), static_cast<double>(i),
                                        static_cast<double>(traj.x[static_cast<size_t>(i)])});
            }
            out.tables.push_back(std::move(raw));
        }

        if (has_suite(cfg, "marginal")) {
            const auto rep = stats::verify_marginal(marginal, std::min<int64_t>(cfg.replicas, 1000));
            nlohmann::json j{{"suite", "marginal"},
                             {"horizon", n},
                             {"statistic", rep.statistic},
                             {"p_value", rep.p_value},
                             {"sample_size", rep.sample_size},
                             {"target", rep.target}};
            out.reports.push_back(std::move(j));
        }

        if (has_suite(cfg, "fdd")) {
            const auto regime = r2 ? theory::Regime::R2 : theory::Regime::R1;
            // The R2 limit only speaks about [a,1]; drop earlier grid points.
            std::vector<double> fdd_grid;
            std::vector<size_t> fdd_idx;
            for (size_t g = 0; g < cfg.grid.size(); ++g)
                if (!r2 || cfg.grid[g] >= cfg.a - 1e-12) {
                    fdd_grid.push_back(cfg.grid[g]);
                    fdd_idx.push_back(g);
                }
            std::vector<std::vector<double>> fdd_paths;
            const auto* path_ptr = &paths;
            if (fdd_idx.size() != cfg.grid.size()) {
                fdd_paths.resize(replicas, std::vector<double>(fdd_idx.size()));
                for (size_t r = 0; r < replicas; ++r)
                    for (size_t g = 0; g < fdd_idx.size(); ++g)
                        fdd_paths[r][g] = paths[r][fdd_idx[g]];
                path_ptr = &fdd_paths;
            }
            const auto rep = stats::verify_fdd(*path_ptr, fdd_grid, regime,
                                               r1 ? schedule.beta() : 1.0, cfg.a, cfg.seed, 200, n);
            double min_pairwise = 1.0;
            for (size_t i = 0; i < rep.emp_corr.size(); ++i)
                for (size_t j = i + 1; j < rep.emp_corr.size(); ++j)
                    min_pairwise = std::min(min_pairwise, rep.emp_corr[i][j]);
            const bool pass = r2 ? min_pairwise >= thresholds.r2_min_pairwise_corr
                                 : (rep.max_abs_corr_error <= thresholds.fdd_corr_tol &&
                                    rep.max_abs_increment_corr <= thresholds.fdd_increment_corr_tol);
            nlohmann::json j{{"suite", "fdd"},
                             {"horizon", n},
                             {"max_abs_corr_error", rep.max_abs_corr_error},
                             {"max_abs_increment_corr", rep.max_abs_increment_corr},
                             {"min_pairwise_corr", min_pairwise},
                             {"emp_corr", rep.emp_corr},
                             {"limit_corr", rep.limit_corr},
                             {"target_corr", rep.target_corr},
                             {"cov_se", rep.cov_se},
                             {"grid", rep.grid},
                             {"pass", pass}};
            out.all_pass = out.all_pass && pass;
            out.reports.push_back(std::move(j));
        }

        if (has_suite(cfg, "flatness")) {
            const auto rep = stats::verify_flatness(paths, cfg.grid, cfg.a, n);
            nlohmann::json j{{"suite", "flatness"},
                             {"horizon", n},
                             {"median_sup_gap", rep.median_sup_gap},
                             {"q90_sup_gap", rep.q90_sup_gap}};
            out.reports.push_back(std::move(j));
        }

        if (want_blocks) {
            const int64_t k = schedule.k_of_n(n);
            ResultTable bv;
            bv.name = "blockvar_n" + std::to_string(n);
            bv.columns = {"j", "T_j", "emp_var", "target", "ratio"};
            bool pass = true;
            for (int64_t j = 1; j <= k; ++j) {
                double sum = 0.0, sum2 = 0.0;
                for (size_t r = 0; r < replicas; ++r) {
                    const double y =
                        static_cast<double>(block_x[r][static_cast<size_t>(j - 1)] -
                                            (j >= 2 ? block_x[r][static_cast<size_t>(j - 2)] : 0));
                    sum += y;
                    sum2 += y * y;
                }
                const double nrep = static_cast<double>(replicas);
                const double var = (sum2 - sum * sum / nrep) / (nrep - 1.0);
                const double gap = static_cast<double>(schedule.gap(j));
                if (gap < 2.0) continue;
                const double target =
                    theory::block_variance_target(gap, moments.variance, sigma_v_sq);
                const double ratio = var / target;
                bv.rows.push_back({static_cast<double>(j), gap, var, target, ratio});
                if (gap >= thresholds.blockvar_min_gap &&
                    !(ratio >= thresholds.blockvar_ratio_lo && ratio <= thresholds.blockvar_ratio_hi))
                    pass = false;
            }
            nlohmann::json j{{"suite", "blockvar"}, {"horizon", n}, {"pass", pass}};
            out.all_pass = out.all_pass && pass;
            out.reports.push_back(std::move(j));
            out.tables.push_back(std::move(bv));
        }
    }

    // Cross-horizon suite verdicts.
    if (has_suite(cfg, "marginal")) {
        std::vector<double> ks;
        for (const auto& r : out.reports)
            if (r["suite"] == "marginal") ks.push_back(r["statistic"].get<double>());
        bool pass = !ks.empty() && ks.back() < thresholds.marginal_final_ks;
        for (size_t i = 1; i < ks.size(); ++i) pass = pass && ks[i] <= ks[i - 1];
        out.reports.push_back(nlohmann::json{{"suite", "marginal_trend"},
                                             {"ks_by_horizon", ks},
                                             {"final_threshold", thresholds.marginal_final_ks},
                                             {"pass", pass}});
        out.all_pass = out.all_pass && pass;
    }
    if (has_suite(cfg, "flatness")) {
        std::vector<double> medians;
        for (const auto& r : out.reports)
            if (r["suite"] == "flatness") medians.push_back(r["median_sup_gap"].get<double>());
        bool pass = !medians.empty();
        for (size_t i = 1; i < medians.size(); ++i) pass = pass && medians[i] < medians[i - 1];
        out.reports.push_back(nlohmann::json{
            {"suite", "flatness_trend"}, {"medians_by_horizon", medians}, {"pass", pass}});
        out.all_pass = out.all_pass && pass;
    }

    out.manifest = nlohmann::json{{"tool", "rwcre"},
                                  {"version", "0.1.0"},
                                  {"seed", cfg.seed},
                                  {"config_hash", fnv1a(cfg.text)},
                                  {"config_text", cfg.text},
                                  {"timestamp", iso_now()},
                                  {"chi_by_horizon", chi_record},
                                  {"oracle_cap", cfg.oracle_cap},
                                  {"workers_hint", workers},
                                  {"sigma_mu_sq", moments.variance},
                                  {"sigma_V_sq", sigma_v_sq}};
    return out;
}

void write_output(const RunOutput& output, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");

    for (const auto& table : output.tables) {
        std::ofstream csv(fs::path(out_dir) / (table.name + ".csv"));
        if (!csv) throw std::runtime_error("unwritable output directory '" + out_dir + "'");
        for (size_t i = 0; i < table.columns.size(); ++i)
            csv << (i ? "," : "") << table.columns[i];
        csv << "\n";
        for (const auto& row : table.rows) {
            for (size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << format_g17(row[i]);
            csv << "\n";
        }
    }

    std::ofstream jsonl(fs::path(out_dir) / "reports.jsonl");
    for (const auto& r : output.reports) jsonl << r.dump() << "\n";

    std::ofstream manifest(fs::path(out_dir) / "manifest.json");
    manifest << output.manifest.dump(2) << "\n";
}

RunOutput run_from_manifest(const std::string& manifest_path, const std::string& out_dir,
                            int workers) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest '" + manifest_path + "'");
    nlohmann::json m;
    in >> m;
    ExperimentConfig cfg = parse_config(m.at("config_text").get<std::string>());
    cfg.seed = m.at("seed").get<uint64_t>();
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return run_experiment(cfg, workers);
}

ResultTable ks_plotdata(std::vector<double> samples,
                        const std::function<double(double)>& target_cdf, const std::string& name) {
    std::sort(samples.begin(), samples.end());
    ResultTable t;
    t.name = name;
    t.columns = {"x", "ecdf", "target_cdf"};
    const double n = static_cast<double>(samples.size());
    for (size_t i = 0; i < samples.size(); ++i)
        t.rows.push_back({samples[i], static_cast<double>(i + 1) / n, target_cdf(samples[i])});
    return t;
}

}  // namespace rwcre
