#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "rwcre/rng.hpp"
#include "rwcre/theory.hpp"

using namespace rwcre;
using boost::math::quadrature::gauss_kronrod;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: term-wise exact integral of |x|^p * p(x) over [0, 40].
double density_moment_series(int p, int terms) {
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double m = 2.0 * k + 1.0;
        const double a = m * m * kPi * kPi / 8.0;
        // int_0^inf x^p e^(-a x) dx = p! / a^(p+1); truncation at 40 is below 1e-300
        double fact = 1.0;
        for (int i = 2; i <= p; ++i) fact *= i;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign / m * fact / std::pow(a, p + 1);
    }
    return 2.0 * (2.0 / kPi) * sum;  // both half-lines
}
}  // namespace

TEST_CASE("kesten density basics") {
    CHECK(theory::kesten_density(0.0) == 0.5);
    CHECK(theory::kesten_density(1.0) == theory::kesten_density(-1.0));
    CHECK(theory::kesten_density(0.3) > 0.0);

    // mass sums to 1 (independent term-wise oracle; the p=0 series decays like
    // m^-3, so it needs many terms to reach 1e-12)
    CHECK(density_moment_series(0, 20000) == doctest::Approx(1.0).epsilon(1e-12));

    // alternating-series convergence for |x| >= 0.01
    for (double x : {0.01, 0.1, 1.0, 3.0}) {
        const double p64 = theory::kesten_density(x, 64);
        const double p128 = theory::kesten_density(x, 128);
        CHECK(std::abs(p64 - p128) < 1e-12);
    }
}

TEST_CASE("kesten cdf") {
    CHECK(theory::kesten_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.0}) {
        CHECK(theory::kesten_cdf(x) + theory::kesten_cdf(-x) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // F(1) agrees with adaptive quadrature of the density on [0,1] plus 1/2
    double err;
    const double quad = gauss_kronrod<double, 61>::integrate(
        [](double x) { return theory::kesten_density(x, 256); }, 0.0, 1.0, 12, 1e-12, &err);
    CHECK(theory::kesten_cdf(1.0) == doctest::Approx(0.5 + quad).epsilon(1e-10));

    // monotone on a dense grid with correct range limits
    double prev = theory::kesten_cdf(-40.0);
    CHECK(prev < 1e-10);
    for (int i = 1; i < 10000; ++i) {
        const double x = -40.0 + 80.0 * static_cast<double>(i) / 9999.0;
        const double f = theory::kesten_cdf(x);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(std::abs(prev - 1.0) < 1e-10);
}

TEST_CASE("sigma_V_sq") {
    const double v = theory::sigma_V_sq();
    CHECK(v == doctest::Approx(61.0 / 45.0).epsilon(1e-12));  // confirmed by the oracles below
    CHECK(std::abs(theory::sigma_V_sq(8) - theory::sigma_V_sq(50)) < 1e-12);

    // independent oracles: term-wise exact x^2 moment and direct quadrature
    CHECK(density_moment_series(2, 200) == doctest::Approx(v).epsilon(1e-10));
    double err;
    const double quad = gauss_kronrod<double, 61>::integrate(
        [](double x) { return x * x * theory::kesten_density(x, 512); }, 0.0, 40.0, 12, 1e-10,
        &err);
    CHECK(2.0 * quad == doctest::Approx(v).epsilon(1e-8));

    // odd moment vanishes
    const double odd = gauss_kronrod<double, 61>::integrate(
        [](double x) { return x * theory::kesten_density(x, 256); }, -30.0, 30.0, 12, 1e-12, &err);
    CHECK(std::abs(odd) < 1e-12);
}

TEST_CASE("chi_n examples") {
    theory::ScalingConstants r1{};
    r1.sigma_mu_sq = 1.0;
    r1.sigma_V_sq = 1.0;  // sigma_mu^2 * sigma_V = 1
    r1.regime = theory::Regime::R1;
    r1.B = 1.0;
    r1.beta = 2.0;
    const double ln4 = std::pow(std::log(1e4), 4.0);
    CHECK(theory::chi_n(r1, 1e4) == doctest::Approx(100.0 / 16.0 * ln4).epsilon(1e-12));
    CHECK(theory::chi_n(r1, 1e4) == doctest::Approx(4.4976e4).epsilon(1e-3));

    theory::ScalingConstants r2{};
    r2.sigma_mu_sq = 1.0;
    r2.sigma_V_sq = 1.0;
    r2.regime = theory::Regime::R2;
    r2.C = 1.0;
    CHECK(theory::chi_n(r2, std::exp(10.0)) == doctest::Approx(2e4).epsilon(1e-10));

    CHECK_THROWS_AS(theory::chi_n(r1, 1.0), std::invalid_argument);
}

TEST_CASE("chi_n ratio limit") {
    theory::ScalingConstants c{};
    c.sigma_mu_sq = 0.7;
    c.sigma_V_sq = 1.3;
    c.regime = theory::Regime::R1;
    c.B = 1.0;
    // The ratio carries a slowly varying (log(tn)/log n)^4 factor that only
    // dies off like 1/log n; with it divided out, the power-law part must hit
    // t^(1/beta) at n = 10^12 within 1%, and the raw ratio must approach the
    // limit monotonically as n grows.
    for (double beta : {1.5, 2.0, 3.0}) {
        c.beta = beta;
        const double n = 1e12;
        for (double t : {0.1, 0.5, 0.9}) {
            const double limit = std::pow(t, 1.0 / beta);
            const double ratio = theory::chi_n(c, std::floor(t * n)) / theory::chi_n(c, n);
            const double slow = std::pow(std::log(std::floor(t * n)) / std::log(n), 4.0);
            CHECK(ratio / slow == doctest::Approx(limit).epsilon(0.01));

            double prev_err = std::numeric_limits<double>::infinity();
            for (double m : {1e6, 1e9, 1e12}) {
                const double r = theory::chi_n(c, std::floor(t * m)) / theory::chi_n(c, m);
                const double err = std::abs(r - limit);
                CHECK(err < prev_err);
                prev_err = err;
            }
        }
    }
}

TEST_CASE("limit covariance") {
    CHECK(theory::limit_cov(0.3, 0.3, theory::Regime::R1, 2.0) ==
          doctest::Approx(std::pow(0.3, 0.5)));
    CHECK(theory::limit_cov(0.25, 1.0, theory::Regime::R1, 2.0) == doctest::Approx(0.5));
    CHECK(theory::limit_cov(0.6, 0.9, theory::Regime::R2, 2.0, 0.5) == 1.0);
    CHECK_THROWS_AS(theory::limit_cov(1.5, 0.5, theory::Regime::R1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(theory::limit_cov(0.3, 0.9, theory::Regime::R2, 2.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("block variance target") {
    CHECK(theory::block_variance_target(std::exp(5.0), 1.0, 1.0) ==
          doctest::Approx(625.0).epsilon(1e-10));
    const double t = 1234.0;
    CHECK(theory::block_variance_target(t * t, 1.0, 1.0) /
              theory::block_variance_target(t, 1.0, 1.0) ==
          doctest::Approx(16.0).epsilon(1e-12));
    CHECK_THROWS_AS(theory::block_variance_target(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("increment variance target and additivity") {
    CHECK(theory::increment_var_target(0.0, 0.7, 3.0, 2.0) ==
          doctest::Approx(3.0 * std::pow(0.7, 0.5)));
    CHECK(theory::increment_var_target(0.25, 1.0, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(theory::increment_var_target(0.5, 0.5, 1.0, 2.0), std::invalid_argument);

    rng::Stream stream(7, rng::Purpose::Bootstrap, 1);
    for (int i = 0; i < 1000; ++i) {
        double t = stream.uniform(), u = stream.uniform(), s = stream.uniform();
        if (t > u) std::swap(t, u);
        if (u > s) std::swap(u, s);
        if (t > u) std::swap(t, u);
        if (!(t < u && u < s)) continue;
        const double chi = 1.0 + 10.0 * stream.uniform();
        const double beta = 1.0 + 3.0 * stream.uniform();
        const double lhs = theory::increment_var_target(t, u, chi, beta) +
                           theory::increment_var_target(u, s, chi, beta);
        const double rhs = theory::increment_var_target(t, s, chi, beta);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}
