#pragma once

// Closed-form theoretical targets: the Kesten density/CDF of the Sinai limit
// variable V, its variance, the normalization chi_n for both cooling regimes,
// and the limit covariances of the rescaled path.

#include <cstdint>

namespace rwcre::theory {

enum class Regime { R1, R2 };  // R1 = polynomial (slow), R2 = exponential (fast)

struct ScalingConstants {
    double sigma_mu_sq;  // Var(log rho(0))
    double sigma_V_sq;   // Var(V)
    Regime regime;
    double B = 0.0, beta = 0.0;  // R1
    double C = 0.0;              // R2
};

// Alternating-exponential series density of V. K is the minimum number of
// terms; summation continues until the alternating remainder bound drops
// below 1e-13 (the series only converges slowly at x = 0, where the value is
// exactly 1/2).
double kesten_density(double x, int K = 64);

// Term-wise exact integral of the density, clamped to [0,1].
double kesten_cdf(double x, int K = 64);

// Var(V) = (4096/pi^7) * sum (-1)^k/(2k+1)^7, summed to machine convergence
// with at least K terms.
double sigma_V_sq(int K = 8);

// chi_n(tau) of the Gaussian-fluctuation normalization; requires n >= 2.
double chi_n(const ScalingConstants& c, double n);

// Covariance of the limit process at times (t, s):
// min(t,s)^(1/beta) in R1, identically 1 on [a,1]^2 in R2.
double limit_cov(double t, double s, Regime regime, double beta, double a = 0.0);

// (sigma_mu^2 * sigma_V)^2 * ln^4 T_j; requires T_j >= 2.
double block_variance_target(double T_j, double sigma_mu_sq, double sigma_V_sq);

// chi * (s^(1/beta) - t^(1/beta)); requires 0 <= t < s <= 1.
double increment_var_target(double t, double s, double chi_n_value, double beta);

}  // namespace rwcre::theory
