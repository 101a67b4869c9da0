#pragma once

// Goodness-of-fit machinery and the theorem-level verification procedures.
// Estimators are pure over immutable sample arrays; bootstrap resampling uses
// its own counter-based stream.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rwcre/pmf.hpp"
#include "rwcre/theory.hpp"

namespace rwcre::stats {

struct GofReport {
    double statistic = 0.0;
    double p_value = 0.0;
    int64_t sample_size = 0;
    std::string target;
};

// Two-sided Kolmogorov-Smirnov distance of the empirical CDF to `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail Q(sqrt(n) * D), clamped to [0,1].
double ks_pvalue(double statistic, int64_t n);

double normal_cdf(double x);

// Pearson chi-square of observed counts against an exact pmf. Adjacent cells
// are pooled until every expected count reaches `min_expected`.
GofReport chi_square_gof(const std::vector<int64_t>& observed_support,
                         const std::vector<int64_t>& observed_counts, const Pmf& expected,
                         double min_expected = 5.0);

// Counts from raw samples, aligned to the pmf support (values outside the
// support are rejected).
GofReport chi_square_gof_samples(const std::vector<int64_t>& samples, const Pmf& expected,
                                 double min_expected = 5.0);

// KS test of X^n_1 samples against N(0,1); needs >= min_samples replicas.
GofReport verify_marginal(const std::vector<double>& samples, int64_t min_samples = 1000);

struct FddReport {
    std::vector<double> grid;
    std::vector<std::vector<double>> emp_cov;
    std::vector<std::vector<double>> emp_corr;
    std::vector<std::vector<double>> cov_se;      // bootstrap standard errors
    std::vector<std::vector<double>> limit_cov;
    std::vector<std::vector<double>> limit_corr;
    std::vector<std::vector<double>> target_corr;  // finite-horizon prediction (see below)
    double max_abs_corr_error = 0.0;               // vs target correlation
    double max_abs_increment_corr = 0.0;           // corr(X_t, X_s - X_t), R1 only
};

// paths: replicas x grid points (already centered and chi-normalized).
// With horizon >= 2 in R1 the correlation target carries the finite-n
// slowly varying factor, corr(t,s) = (m_t/m_s)^(1/2beta) (ln m_t / ln m_s)^2
// with m_t = floor(t*horizon); it decays toward the limit like 1/ln n, far
// too slowly to ignore at reachable horizons. horizon = 0 compares against
// the limit matrix itself.
FddReport verify_fdd(const std::vector<std::vector<double>>& paths,
                     const std::vector<double>& grid, theory::Regime regime, double beta, double a,
                     uint64_t bootstrap_seed, int bootstrap_resamples = 200, int64_t horizon = 0);

struct FlatnessReport {
    int64_t horizon = 0;
    double median_sup_gap = 0.0;
    double q90_sup_gap = 0.0;
};

// sup_{t in [a,1]} |X^n_t - X^n_a| per path; grid must cover [a,1].
FlatnessReport verify_flatness(const std::vector<std::vector<double>>& paths,
                               const std::vector<double>& grid, double a, int64_t horizon);

}  // namespace rwcre::stats
