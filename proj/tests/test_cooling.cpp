#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rwcre/cooling.hpp"

using namespace rwcre;

TEST_CASE("tau examples") {
    auto poly = CoolingSchedule::polynomial(1.0, 2.0);
    CHECK(poly.tau(0) == 0);
    CHECK(poly.tau(3) == 9);

    auto unit = CoolingSchedule::unit();
    for (int64_t k = 0; k < 100; ++k) CHECK(unit.tau(k) == k);

    // T_k = max(1, round(e^k)) = 3, 7, 20
    auto expo = CoolingSchedule::exponential(1.0);
    CHECK(expo.tau(1) == 3);
    CHECK(expo.tau(3) == 30);

    // T_k = max(1, round(0.45 e^k)) = 1, 3, 9, 25; the minimum-gap clamp
    // keeps tau strictly increasing even when the prefactor rounds to zero.
    auto scaled = CoolingSchedule::exponential(1.0, 0.45);
    CHECK(scaled.tau(1) == 1);
    CHECK(scaled.tau(2) == 4);
    CHECK(scaled.tau(3) == 13);
    CHECK(scaled.tau(4) == 38);
    CHECK(CoolingSchedule::exponential(1.0).scale() == 1.0);
}

TEST_CASE("gap examples") {
    auto poly = CoolingSchedule::polynomial(1.0, 2.0);
    CHECK(poly.gap(3) == 5);
    CHECK(CoolingSchedule::unit().gap(17) == 1);
    CHECK(CoolingSchedule::exponential(1.0).gap(2) == 7);
}

TEST_CASE("k_of_n examples") {
    auto poly = CoolingSchedule::polynomial(1.0, 2.0);
    CHECK(poly.k_of_n(10) == 3);
    CHECK(CoolingSchedule::unit().k_of_n(12345) == 12345);
    CHECK(poly.k_of_n(0) == 0);
    auto expo = CoolingSchedule::exponential(1.0);
    CHECK(expo.k_of_n(2) == 0);  // n < tau(1)
}

TEST_CASE("remainders") {
    auto poly = CoolingSchedule::polynomial(1.0, 2.0);
    const auto [tb, tbc] = poly.remainders(10);
    CHECK(tb == 1);
    CHECK(tbc == 6);
    const auto [z, next] = poly.remainders(9);  // n == tau(3)
    CHECK(z == 0);
    CHECK(next == poly.gap(4));
    auto unit = CoolingSchedule::unit();
    for (int64_t n : {0, 1, 7, 100}) {
        const auto [a, b] = unit.remainders(n);
        CHECK(a == 0);
        CHECK(b == 1);
    }
}

TEST_CASE("bracketing and gap-sum invariants") {
    for (auto s : {CoolingSchedule::polynomial(0.3, 1.5), CoolingSchedule::exponential(0.7),
                   CoolingSchedule::polynomial(2.0, 3.0)}) {
        int64_t acc = 0;
        for (int64_t k = 1; k <= 40; ++k) {
            CHECK(s.gap(k) >= 1);
            acc += s.gap(k);
            CHECK(acc == s.tau(k));
        }
        for (int64_t n : {0, 1, 5, 17, 100, 5000}) {
            const int64_t k = s.k_of_n(n);
            CHECK(s.tau(k) <= n);
            CHECK(n < s.tau(k + 1));
        }
    }
}

TEST_CASE("polynomial asymptotics: k(n) ~ (n/B)^(1/beta)") {
    auto s = CoolingSchedule::polynomial(1.0, 2.0);
    const int64_t n = 100000000;
    const double ratio =
        static_cast<double>(s.k_of_n(n)) / std::pow(static_cast<double>(n), 0.5);
    CHECK(ratio >= 0.99);
    CHECK(ratio <= 1.01);
}

TEST_CASE("exponential asymptotics: k(n) ~ (1/C) log n") {
    auto s = CoolingSchedule::exponential(1.0);
    const double n = 1e15;
    const double ratio = static_cast<double>(s.k_of_n(static_cast<int64_t>(n))) / std::log(n);
    CHECK(std::abs(ratio - 1.0) < 0.05);
}

TEST_CASE("per-gap asymptotics") {
    auto poly = CoolingSchedule::polynomial(1.0, 2.0);
    const int64_t k = 100000;
    CHECK(static_cast<double>(poly.gap(k)) / (2.0 * static_cast<double>(k)) ==
          doctest::Approx(1.0).epsilon(1e-3));
    auto expo = CoolingSchedule::exponential(0.5);
    const int64_t ke = 60;
    CHECK(std::log(static_cast<double>(expo.gap(ke))) / (0.5 * static_cast<double>(ke)) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("explicit schedule") {
    auto s = CoolingSchedule::explicit_times({2, 5, 9});
    CHECK(s.tau(2) == 5);
    CHECK(s.k_of_n(4) == 1);
    CHECK_THROWS_AS(CoolingSchedule::explicit_times({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::explicit_times({2, 5, 4}), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::explicit_times({1, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(s.tau(4), std::out_of_range);
}

TEST_CASE("construction guards and overflow") {
    CHECK_THROWS_AS(CoolingSchedule::polynomial(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::polynomial(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::exponential(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::exponential(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(CoolingSchedule::exponential(1.0).tau(200), std::overflow_error);
}

TEST_CASE("small B still yields strictly increasing integer times") {
    auto s = CoolingSchedule::polynomial(1e-6, 1.2);
    for (int64_t k = 1; k <= 200; ++k) {
        CHECK(s.tau(k) > s.tau(k - 1));
        CHECK(s.tau(k) >= k);
    }
}
