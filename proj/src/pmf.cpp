#include "rwcre/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace rwcre {

double Pmf::mean() const {
    double m = 0.0;
    for (size_t i = 0; i < support.size(); ++i) m += prob[i] * static_cast<double>(support[i]);
    return m;
}

double Pmf::variance() const {
    const double m = mean();
    double v = 0.0;
    for (size_t i = 0; i < support.size(); ++i) {
        const double d = static_cast<double>(support[i]) - m;
        v += prob[i] * d * d;
    }
    return v;
}

Pmf RationalPmf::to_double() const {
    Pmf p;
    p.support = support;
    p.prob.reserve(prob.size());
    for (const auto& q : prob) p.prob.push_back(static_cast<double>(q));
    return p;
}

std::vector<std::pair<Rational, Rational>> rational_atoms(const ResamplingRule& rule) {
    if (!rule.has_finite_support())
        throw std::invalid_argument("oracle: rule must have finite support");
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [v, w] : rule.atoms()) out.emplace_back(Rational(v), Rational(w));
    return out;
}

namespace {

// E[omega^r (1-omega)^l] precomputed for all r + l <= m.
class SiteMomentTable {
public:
    SiteMomentTable(const std::vector<std::pair<Rational, Rational>>& atoms, int m) : m_(m) {
        table_.resize(static_cast<size_t>((m + 1) * (m + 1)));
        for (int r = 0; r <= m; ++r)
            for (int l = 0; r + l <= m; ++l) {
                Rational acc = 0;
                for (const auto& [v, w] : atoms) {
                    Rational t = w;
                    for (int i = 0; i < r; ++i) t *= v;
                    const Rational one_minus = Rational(1) - v;
                    for (int i = 0; i < l; ++i) t *= one_minus;
                    acc += t;
                }
                at(r, l) = acc;
            }
    }

    const Rational& operator()(int r, int l) const { return table_[idx(r, l)]; }

private:
    size_t idx(int r, int l) const { return static_cast<size_t>(r * (m_ + 1) + l); }
    Rational& at(int r, int l) { return table_[idx(r, l)]; }

    int m_;
    std::vector<Rational> table_;
};

}  // namespace

RationalPmf exact_block_pmf_rational(const ResamplingRule& rule, int m, int cap) {
    if (m < 0) throw std::invalid_argument("oracle: m must be >= 0");
    if (m > cap) throw std::invalid_argument("oracle: block length exceeds the enumeration cap");
    const auto atoms = rational_atoms(rule);

    RationalPmf out;
    if (m == 0) {
        out.support = {0};
        out.prob = {Rational(1)};
        return out;
    }

    const SiteMomentTable moments(atoms, m);
    const int width = 2 * m + 1;         // sites -m..m, offset by m
    std::vector<int> rights(static_cast<size_t>(width), 0);
    std::vector<int> lefts(static_cast<size_t>(width), 0);
    std::vector<Rational> mass(static_cast<size_t>(width), Rational(0));  // endpoint -m..m

    // Depth-first over all 2^m paths, accumulating per-site step counts.
    const auto dfs = [&](auto&& self, int depth, int pos) -> void {
        if (depth == m) {
            Rational p = 1;
            for (int s = 0; s < width; ++s)
                if (rights[static_cast<size_t>(s)] + lefts[static_cast<size_t>(s)] > 0)
                    p *= moments(rights[static_cast<size_t>(s)], lefts[static_cast<size_t>(s)]);
            mass[static_cast<size_t>(pos + m)] += p;
            return;
        }
        const size_t site = static_cast<size_t>(pos + m);
        ++rights[site];
        self(self, depth + 1, pos + 1);
        --rights[site];
        ++lefts[site];
        self(self, depth + 1, pos - 1);
        --lefts[site];
    };
    dfs(dfs, 0, 0);

    for (int e = -m; e <= m; ++e) {
        const Rational& p = mass[static_cast<size_t>(e + m)];
        if (p != 0) {
            out.support.push_back(e);
            out.prob.push_back(p);
        }
    }
    return out;
}

Pmf exact_block_pmf(const ResamplingRule& rule, int m, int cap) {
    return exact_block_pmf_rational(rule, m, cap).to_double();
}

namespace {

RationalPmf convolve(const RationalPmf& a, const RationalPmf& b) {
    const int64_t lo = a.support.front() + b.support.front();
    const int64_t hi = a.support.back() + b.support.back();
    // Supports have parity gaps; index by offset and skip zero mass.
    std::vector<Rational> mass(static_cast<size_t>(hi - lo + 1), Rational(0));
    for (size_t i = 0; i < a.support.size(); ++i)
        for (size_t j = 0; j < b.support.size(); ++j)
            mass[static_cast<size_t>(a.support[i] + b.support[j] - lo)] += a.prob[i] * b.prob[j];
    RationalPmf out;
    for (int64_t v = lo; v <= hi; ++v) {
        Rational& p = mass[static_cast<size_t>(v - lo)];
        if (p != 0) {
            out.support.push_back(v);
            out.prob.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace

RationalPmf exact_walk_pmf_rational(const ResamplingRule& rule, const CoolingSchedule& schedule,
                                    int64_t n, int cap) {
    if (n < 0) throw std::invalid_argument("oracle: n must be >= 0");
    const int64_t k = schedule.k_of_n(n);
    RationalPmf acc;
    acc.support = {0};
    acc.prob = {Rational(1)};
    for (int64_t j = 1; j <= k; ++j) {
        const int64_t t = schedule.gap(j);
        if (t > cap) throw std::invalid_argument("oracle: block length exceeds the enumeration cap");
        acc = convolve(acc, exact_block_pmf_rational(rule, static_cast<int>(t), cap));
    }
    const int64_t rem = n - schedule.tau(k);
    if (rem > 0) {
        if (rem > cap)
            throw std::invalid_argument("oracle: block length exceeds the enumeration cap");
        acc = convolve(acc, exact_block_pmf_rational(rule, static_cast<int>(rem), cap));
    }
    return acc;
}

Pmf exact_walk_pmf(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                   int cap) {
    return exact_walk_pmf_rational(rule, schedule, n, cap).to_double();
}

Pmf srw_pmf(int64_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("srw_pmf: p must lie in (0,1)");
    Pmf out;
    out.support.reserve(static_cast<size_t>(n + 1));
    out.prob.reserve(static_cast<size_t>(n + 1));
    const double lp = std::log(p), lq = std::log1p(-p);
    for (int64_t k = 0; k <= n; ++k) {
        const double logc = std::lgamma(static_cast<double>(n + 1)) -
                            std::lgamma(static_cast<double>(k + 1)) -
                            std::lgamma(static_cast<double>(n - k + 1));
        out.support.push_back(2 * k - n);
        out.prob.push_back(std::exp(logc + static_cast<double>(k) * lp +
                                    static_cast<double>(n - k) * lq));
    }
    return out;
}

}  // namespace rwcre
