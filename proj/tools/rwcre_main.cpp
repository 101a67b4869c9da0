// rwcre: Monte Carlo laboratory for random walks in cooling random
// environments. Subcommands map onto the experiment pipeline; exit codes:
// 0 = all selected suites pass, 1 = statistical failure, 2 = usage/config error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rwcre/config.hpp"
#include "rwcre/pmf.hpp"
#include "rwcre/runner.hpp"
#include "rwcre/stats.hpp"
#include "rwcre/theory.hpp"
#include "rwcre/walker.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string manifest_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
    bool dump_paths = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config file");
    cmd->add_option("--from-manifest", o.manifest_path, "re-run a recorded manifest");
    cmd->add_option("--out", o.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", o.seed, "master seed (overrides config)")
        ->each([&](const std::string&) { o.seed_set = true; });
    cmd->add_option("--workers", o.workers, "worker thread count")->default_val(1);
    cmd->add_flag("--dump-paths", o.dump_paths, "write raw (replica,i,X_i) CSV");
}

rwcre::ExperimentConfig resolve_config(const CommonOpts& o,
                                       const std::vector<std::string>& forced_suites) {
    rwcre::ExperimentConfig cfg;
    if (!o.manifest_path.empty()) {
        // run_from_manifest re-runs directly; here we only need the config.
        std::ifstream in(o.manifest_path);
        if (!in) throw std::runtime_error("cannot open manifest '" + o.manifest_path + "'");
        nlohmann::json m;
        in >> m;
        cfg = rwcre::parse_config(m.at("config_text").get<std::string>());
        cfg.seed = m.at("seed").get<uint64_t>();
    } else if (!o.config_path.empty()) {
        cfg = rwcre::load_config(o.config_path);
    } else {
        throw std::runtime_error("either --config or --from-manifest is required");
    }
    if (o.seed_set) cfg.seed = o.seed;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.dump_paths) cfg.dump_paths = true;
    if (!forced_suites.empty()) cfg.suites = forced_suites;
    return cfg;
}

int run_and_report(const rwcre::ExperimentConfig& cfg, int workers) {
    const auto out = rwcre::run_experiment(cfg, workers);
    rwcre::write_output(out, cfg.out_dir);
    for (const auto& r : out.reports) std::cout << r.dump() << "\n";
    std::cout << (out.all_pass ? "PASS" : "FAIL") << "\n";
    return out.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo lab for random walks in cooling random environments"};
    app.require_subcommand(1);

    CommonOpts sim_opts, marg_opts, fdd_opts, flat_opts, oracle_opts;

    auto* sim = app.add_subcommand("simulate", "run replicas and emit per-replica tables");
    add_common(sim, sim_opts);

    auto* targets = app.add_subcommand("targets", "print theoretical targets as CSV");
    double t_xmin = -5.0, t_xmax = 5.0;
    int t_points = 101;
    double t_B = 1.0, t_beta = 2.0, t_C = 1.0, t_sigma_mu_sq = std::log(2.0) * std::log(2.0);
    std::string t_regime = "R1";
    std::vector<double> t_ns;
    targets->add_option("--xmin", t_xmin)->default_val(-5.0);
    targets->add_option("--xmax", t_xmax)->default_val(5.0);
    targets->add_option("--points", t_points)->default_val(101);
    targets->add_option("--regime", t_regime, "R1 or R2")->default_val("R1");
    targets->add_option("--B", t_B)->default_val(1.0);
    targets->add_option("--beta", t_beta)->default_val(2.0);
    targets->add_option("--C", t_C)->default_val(1.0);
    targets->add_option("--sigma-mu-sq", t_sigma_mu_sq, "Var(log rho)");
    targets->add_option("--n", t_ns, "horizons for chi_n rows");

    auto* marg = app.add_subcommand("verify-marginal", "KS of X^n_1 against N(0,1)");
    add_common(marg, marg_opts);
    auto* fdd = app.add_subcommand("verify-fdd", "grid covariance against the limit law");
    add_common(fdd, fdd_opts);
    auto* flat = app.add_subcommand("verify-flatness", "sup-gap trend on [a,1]");
    add_common(flat, flat_opts);

    auto* oracle = app.add_subcommand("oracle-check", "Monte Carlo vs exact small-n law");
    add_common(oracle, oracle_opts);
    int64_t oracle_n = 10;
    int64_t oracle_replicas = 100000;
    oracle->add_option("--n", oracle_n, "horizon for the exact comparison")->default_val(10);
    oracle->add_option("--replicas", oracle_replicas)->default_val(100000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_and_report(resolve_config(sim_opts, {}), sim_opts.workers);
        if (marg->parsed())
            return run_and_report(resolve_config(marg_opts, {"marginal"}), marg_opts.workers);
        if (fdd->parsed()) return run_and_report(resolve_config(fdd_opts, {"fdd"}), fdd_opts.workers);
        if (flat->parsed())
            return run_and_report(resolve_config(flat_opts, {"flatness"}), flat_opts.workers);

        if (targets->parsed()) {
            using namespace rwcre;
            std::cout << "x,p,F\n";
            for (int i = 0; i < t_points; ++i) {
                const double x =
                    t_xmin + (t_xmax - t_xmin) * static_cast<double>(i) /
                                 static_cast<double>(std::max(1, t_points - 1));
                std::cout << format_g17(x) << "," << format_g17(theory::kesten_density(x)) << ","
                          << format_g17(theory::kesten_cdf(x)) << "\n";
            }
            std::cout << "sigma_V_sq," << format_g17(theory::sigma_V_sq()) << "\n";
            if (!t_ns.empty()) {
                theory::ScalingConstants c{};
                c.sigma_mu_sq = t_sigma_mu_sq;
                c.sigma_V_sq = theory::sigma_V_sq();
                if (t_regime == "R2") {
                    c.regime = theory::Regime::R2;
                    c.C = t_C;
                } else {
                    c.regime = theory::Regime::R1;
                    c.B = t_B;
                    c.beta = t_beta;
                }
                std::cout << "n,chi_n\n";
                for (double n : t_ns)
                    std::cout << format_g17(n) << "," << format_g17(theory::chi_n(c, n)) << "\n";
            }
            return 0;
        }

        if (oracle->parsed()) {
            using namespace rwcre;
            auto cfg = resolve_config(oracle_opts, {});
            const ResamplingRule rule = cfg.rule.build();
            CoolingSchedule schedule = cfg.schedule.build();
            schedule.reserve_horizon(oracle_n);
            const Pmf exact = exact_walk_pmf(rule, schedule, oracle_n, cfg.oracle_cap);
            std::vector<int64_t> endpoints(static_cast<size_t>(oracle_replicas));
            for (int64_t r = 0; r < oracle_replicas; ++r)
                endpoints[static_cast<size_t>(r)] =
                    simulate_sampled(rule, schedule, oracle_n, cfg.seed, static_cast<uint32_t>(r), {})
                        .x_n;
            const auto rep = stats::chi_square_gof_samples(endpoints, exact);
            const bool pass = rep.p_value > 0.001;
            nlohmann::json j{{"suite", "oracle-check"}, {"n", oracle_n},
                             {"statistic", rep.statistic}, {"p_value", rep.p_value},
                             {"replicas", oracle_replicas}, {"pass", pass}};
            std::cout << j.dump() << "\n" << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? 0 : 1;
        }
    } catch (const rwcre::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
