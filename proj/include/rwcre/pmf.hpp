#pragma once

// Exact annealed laws for small horizons. The oracle side of acceptance tests
// is computed in rational arithmetic so the ground truth carries no floating
// error; doubles appear only at the final conversion.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "rwcre/cooling.hpp"
#include "rwcre/rule.hpp"

namespace rwcre {

using Rational = boost::multiprecision::cpp_rational;

struct Pmf {
    std::vector<int64_t> support;  // sorted ascending
    std::vector<double> prob;

    double mean() const;
    double variance() const;
};

struct RationalPmf {
    std::vector<int64_t> support;
    std::vector<Rational> prob;

    Pmf to_double() const;
};

// Finite-support rule as exact rationals (doubles convert exactly).
std::vector<std::pair<Rational, Rational>> rational_atoms(const ResamplingRule& rule);

// Exact annealed law of Z_m (one fresh environment, m steps). Walks over all
// 2^m paths; the annealed weight of a path factorizes over sites as
// E[omega^r (1-omega)^l]. Default cap follows the enumeration budget.
RationalPmf exact_block_pmf_rational(const ResamplingRule& rule, int m, int cap = 12);
Pmf exact_block_pmf(const ResamplingRule& rule, int m, int cap = 12);

// Exact annealed law of X_n: annealed independence of the block decomposition
// makes it the convolution of block laws for T_1..T_k(n) plus the remainder.
RationalPmf exact_walk_pmf_rational(const ResamplingRule& rule, const CoolingSchedule& schedule,
                                    int64_t n, int cap = 12);
Pmf exact_walk_pmf(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                   int cap = 12);

// Law of 2*Binomial(n, p) - n.
Pmf srw_pmf(int64_t n, double p);

}  // namespace rwcre
