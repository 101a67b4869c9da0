#include "rwcre/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rwcre/rng.hpp"

namespace rwcre::stats {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample set");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    return d;
}

double ks_pvalue(double statistic, int64_t n) {
    if (n < 1) throw std::invalid_argument("ks_pvalue: n must be >= 1");
    const double t = std::sqrt(static_cast<double>(n)) * statistic;
    if (t < 1e-3) return 1.0;
    double q = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * t * t);
        q += (j & 1) ? 2.0 * term : -2.0 * term;
        if (term < 1e-18) break;
    }
    return std::min(1.0, std::max(0.0, q));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

GofReport chi_square_gof(const std::vector<int64_t>& observed_support,
                         const std::vector<int64_t>& observed_counts, const Pmf& expected,
                         double min_expected) {
    if (observed_support.size() != observed_counts.size())
        throw std::invalid_argument("chi_square_gof: support/count size mismatch");
    int64_t total = 0;
    std::map<int64_t, int64_t> counts;
    for (size_t i = 0; i < observed_support.size(); ++i) {
        counts[observed_support[i]] += observed_counts[i];
        total += observed_counts[i];
    }
    if (total <= 0) throw std::invalid_argument("chi_square_gof: no observations");

    // Observed mass outside the expected support means the laws are disjoint
    // somewhere; there is no valid Pearson cell for it.
    std::map<int64_t, double> probs;
    for (size_t i = 0; i < expected.support.size(); ++i) probs[expected.support[i]] = expected.prob[i];
    bool any_overlap = false;
    for (const auto& [v, c] : counts) {
        if (probs.count(v)) any_overlap = true;
        else if (c > 0)
            throw std::invalid_argument("chi_square_gof: observed value outside the target support");
    }
    if (!any_overlap) throw std::invalid_argument("chi_square_gof: disjoint supports");

    // Pool adjacent cells (in support order) until expected >= min_expected.
    std::vector<double> exp_cells;
    std::vector<double> obs_cells;
    double e_acc = 0.0, o_acc = 0.0;
    for (size_t i = 0; i < expected.support.size(); ++i) {
        e_acc += expected.prob[i] * static_cast<double>(total);
        const auto it = counts.find(expected.support[i]);
        o_acc += it == counts.end() ? 0.0 : static_cast<double>(it->second);
        if (e_acc >= min_expected) {
            exp_cells.push_back(e_acc);
            obs_cells.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_cells.empty()) throw std::invalid_argument("chi_square_gof: all cells pooled away");
        exp_cells.back() += e_acc;
        obs_cells.back() += o_acc;
    }
    if (exp_cells.size() < 2) throw std::invalid_argument("chi_square_gof: all cells pooled away");

    double stat = 0.0;
    for (size_t i = 0; i < exp_cells.size(); ++i) {
        const double d = obs_cells[i] - exp_cells[i];
        stat += d * d / exp_cells[i];
    }
    const auto df = static_cast<double>(exp_cells.size() - 1);
    const boost::math::chi_squared dist(df);
    GofReport r;
    r.statistic = stat;
    r.p_value = boost::math::cdf(boost::math::complement(dist, stat));
    r.sample_size = total;
    r.target = "chi-square, " + std::to_string(exp_cells.size()) + " cells";
    return r;
}

GofReport chi_square_gof_samples(const std::vector<int64_t>& samples, const Pmf& expected,
                                 double min_expected) {
    std::map<int64_t, int64_t> counts;
    for (int64_t s : samples) ++counts[s];
    std::vector<int64_t> support, c;
    for (const auto& [v, k] : counts) {
        support.push_back(v);
        c.push_back(k);
    }
    return chi_square_gof(support, c, expected, min_expected);
}

GofReport verify_marginal(const std::vector<double>& samples, int64_t min_samples) {
    if (static_cast<int64_t>(samples.size()) < min_samples)
        throw std::invalid_argument("verify_marginal: too few replicas");
    GofReport r;
    r.statistic = ks_statistic(samples, [](double x) { return normal_cdf(x); });
    r.p_value = ks_pvalue(r.statistic, static_cast<int64_t>(samples.size()));
    r.sample_size = static_cast<int64_t>(samples.size());
    r.target = "KS vs N(0,1)";
    return r;
}

namespace {

std::vector<std::vector<double>> covariance(const std::vector<std::vector<double>>& paths,
                                            const std::vector<size_t>& rows) {
    const size_t m = paths.front().size();
    std::vector<double> mean(m, 0.0);
    for (size_t r : rows)
        for (size_t i = 0; i < m; ++i) mean[i] += paths[r][i];
    for (auto& v : mean) v /= static_cast<double>(rows.size());
    std::vector<std::vector<double>> cov(m, std::vector<double>(m, 0.0));
    for (size_t r : rows)
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j)
                cov[i][j] += (paths[r][i] - mean[i]) * (paths[r][j] - mean[j]);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            cov[i][j] /= static_cast<double>(rows.size() - 1);
            cov[j][i] = cov[i][j];
        }
    return cov;
}

std::vector<std::vector<double>> corr_from_cov(const std::vector<std::vector<double>>& cov) {
    const size_t m = cov.size();
    std::vector<std::vector<double>> corr(m, std::vector<double>(m, 0.0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            const double d = std::sqrt(cov[i][i] * cov[j][j]);
            corr[i][j] = d > 0.0 ? cov[i][j] / d : (i == j ? 1.0 : 0.0);
        }
    return corr;
}

}  // namespace

FddReport verify_fdd(const std::vector<std::vector<double>>& paths,
                     const std::vector<double>& grid, theory::Regime regime, double beta, double a,
                     uint64_t bootstrap_seed, int bootstrap_resamples, int64_t horizon) {
    if (grid.empty()) throw std::invalid_argument("verify_fdd: degenerate grid");
    if (paths.size() < 2) throw std::invalid_argument("verify_fdd: too few replicas");
    const size_t m = grid.size();
    const size_t n = paths.size();

    FddReport rep;
    rep.grid = grid;
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    rep.emp_cov = covariance(paths, all);
    rep.emp_corr = corr_from_cov(rep.emp_cov);

    rep.limit_cov.assign(m, std::vector<double>(m, 0.0));
    rep.limit_corr.assign(m, std::vector<double>(m, 0.0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            rep.limit_cov[i][j] = theory::limit_cov(grid[i], grid[j], regime, beta, a);
            const double d = std::sqrt(theory::limit_cov(grid[i], grid[i], regime, beta, a) *
                                       theory::limit_cov(grid[j], grid[j], regime, beta, a));
            rep.limit_corr[i][j] = rep.limit_cov[i][j] / d;
        }

    rep.target_corr = rep.limit_corr;
    if (regime == theory::Regime::R1 && horizon >= 2) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                const double mi = std::floor(grid[i] * static_cast<double>(horizon));
                const double mj = std::floor(grid[j] * static_cast<double>(horizon));
                const double lo = std::min(mi, mj), hi = std::max(mi, mj);
                if (lo < 2.0 || lo == hi) continue;
                rep.target_corr[i][j] = std::pow(lo / hi, 1.0 / (2.0 * beta)) *
                                        std::pow(std::log(lo) / std::log(hi), 2.0);
            }
    }

    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            rep.max_abs_corr_error = std::max(
                rep.max_abs_corr_error, std::abs(rep.emp_corr[i][j] - rep.target_corr[i][j]));

    // Bootstrap SE of covariance entries.
    rep.cov_se.assign(m, std::vector<double>(m, 0.0));
    if (bootstrap_resamples > 1) {
        std::vector<std::vector<double>> sum(m, std::vector<double>(m, 0.0));
        std::vector<std::vector<double>> sum2(m, std::vector<double>(m, 0.0));
        rng::Stream stream(bootstrap_seed, rng::Purpose::Bootstrap, 0);
        std::vector<size_t> rows(n);
        for (int b = 0; b < bootstrap_resamples; ++b) {
            for (size_t i = 0; i < n; ++i) rows[i] = static_cast<size_t>(stream.below(n));
            const auto cov = covariance(paths, rows);
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) {
                    sum[i][j] += cov[i][j];
                    sum2[i][j] += cov[i][j] * cov[i][j];
                }
        }
        const double nb = bootstrap_resamples;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                const double var = (sum2[i][j] - sum[i][j] * sum[i][j] / nb) / (nb - 1.0);
                rep.cov_se[i][j] = var > 0.0 ? std::sqrt(var) : 0.0;
            }
    }

    // Increment independence check (the R1 limit has independent increments).
    if (regime == theory::Regime::R1) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                double mean_t = 0.0, mean_d = 0.0;
                for (size_t r = 0; r < n; ++r) {
                    mean_t += paths[r][i];
                    mean_d += paths[r][j] - paths[r][i];
                }
                mean_t /= static_cast<double>(n);
                mean_d /= static_cast<double>(n);
                double ct = 0.0, cd = 0.0, ctd = 0.0;
                for (size_t r = 0; r < n; ++r) {
                    const double dt = paths[r][i] - mean_t;
                    const double dd = (paths[r][j] - paths[r][i]) - mean_d;
                    ct += dt * dt;
                    cd += dd * dd;
                    ctd += dt * dd;
                }
                if (ct > 0.0 && cd > 0.0)
                    rep.max_abs_increment_corr =
                        std::max(rep.max_abs_increment_corr, std::abs(ctd / std::sqrt(ct * cd)));
            }
    }
    return rep;
}

FlatnessReport verify_flatness(const std::vector<std::vector<double>>& paths,
                               const std::vector<double>& grid, double a, int64_t horizon) {
    size_t ia = grid.size();
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] <= a + 1e-12) ia = i;  // last grid point <= a
    if (ia == grid.size() || grid.back() < 1.0 - 1e-12)
        throw std::invalid_argument("verify_flatness: grid does not cover [a,1]");

    std::vector<double> gaps;
    gaps.reserve(paths.size());
    for (const auto& path : paths) {
        double g = 0.0;
        for (size_t i = ia; i < path.size(); ++i) g = std::max(g, std::abs(path[i] - path[ia]));
        gaps.push_back(g);
    }
    std::sort(gaps.begin(), gaps.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(gaps.size() - 1);
        const size_t lo = static_cast<size_t>(pos);
        const size_t hi = std::min(lo + 1, gaps.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return gaps[lo] * (1.0 - frac) + gaps[hi] * frac;
    };
    FlatnessReport rep;
    rep.horizon = horizon;
    rep.median_sup_gap = quantile(0.5);
    rep.q90_sup_gap = quantile(0.9);
    return rep;
}

}  // namespace rwcre::stats
