#include "rwcre/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rwcre::theory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 1 << 22;

double rate(int k) {  // a_k = (2k+1)^2 pi^2 / 8
    const double m = 2.0 * k + 1.0;
    return m * m * kPi * kPi / 8.0;
}

}  // namespace

double kesten_density(double x, int K) {
    if (K < 1) throw std::invalid_argument("kesten_density: K must be >= 1");
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.5;  // (2/pi) * Leibniz sum = 1/2
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = std::exp(-rate(k) * ax) / (2.0 * k + 1.0);
        sum += sign * term;
        sign = -sign;
        if (k + 1 >= K && term < 1e-13) break;
    }
    return (2.0 / kPi) * sum;
}

double kesten_cdf(double x, int K) {
    if (K < 1) throw std::invalid_argument("kesten_cdf: K must be >= 1");
    if (x < 0.0) return 1.0 - kesten_cdf(-x, K);
    // F(x) = 1 - (2/pi) sum (-1)^k exp(-a_k x) / ((2k+1) a_k); the constant
    // part sums exactly to 1 by beta(3) = pi^3/32.
    double tail = 0.0;
    double sign = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = std::exp(-rate(k) * x) / ((2.0 * k + 1.0) * rate(k));
        tail += sign * term;
        sign = -sign;
        if (k + 1 >= K && term < 1e-16) break;
    }
    const double f = 1.0 - (2.0 / kPi) * tail;
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

double sigma_V_sq(int K) {
    if (K < 1) throw std::invalid_argument("sigma_V_sq: K must be >= 1");
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = 1.0 / std::pow(2.0 * k + 1.0, 7.0);
        sum += sign * term;
        sign = -sign;
        if (k + 1 >= K && term < 1e-18) break;
    }
    return 4096.0 / std::pow(kPi, 7.0) * sum;
}

double chi_n(const ScalingConstants& c, double n) {
    if (!(n >= 2.0)) throw std::invalid_argument("chi_n: n must be >= 2");
    const double amp = c.sigma_mu_sq * c.sigma_mu_sq * c.sigma_V_sq;  // (sigma_mu^2 sigma_V)^2
    const double ln = std::log(n);
    if (c.regime == Regime::R1) {
        const double ratio = (c.beta - 1.0) / c.beta;
        return amp * std::pow(ratio, 4.0) * std::pow(n / c.B, 1.0 / c.beta) * std::pow(ln, 4.0);
    }
    return amp / (5.0 * std::pow(c.C, 5.0)) * std::pow(ln, 5.0);
}

double limit_cov(double t, double s, Regime regime, double beta, double a) {
    if (regime == Regime::R1) {
        if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0))
            throw std::invalid_argument("limit_cov: t, s must lie in [0,1]");
        return std::pow(std::min(t, s), 1.0 / beta);
    }
    if (!(t >= a && t <= 1.0 && s >= a && s <= 1.0))
        throw std::invalid_argument("limit_cov: t, s must lie in [a,1]");
    return 1.0;
}

double block_variance_target(double T_j, double sigma_mu_sq, double sigma_V_sq) {
    if (!(T_j >= 2.0)) throw std::invalid_argument("block_variance_target: T_j must be >= 2");
    return sigma_mu_sq * sigma_mu_sq * sigma_V_sq * std::pow(std::log(T_j), 4.0);
}

double increment_var_target(double t, double s, double chi_n_value, double beta) {
    if (!(t >= 0.0 && t < s && s <= 1.0))
        throw std::invalid_argument("increment_var_target: need 0 <= t < s <= 1");
    return chi_n_value * (std::pow(s, 1.0 / beta) - std::pow(t, 1.0 / beta));
}

}  // namespace rwcre::theory
