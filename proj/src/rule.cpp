#include "rwcre/rule.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwcre {

namespace {

void check_atoms(const std::vector<std::pair<double, double>>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("rule: empty support");
    double total = 0.0;
    for (const auto& [v, w] : atoms) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("rule: support value outside (0,1)");
        if (!(w > 0.0)) throw std::invalid_argument("rule: non-positive weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("rule: weights do not sum to 1");
}

double log_rho(double omega) { return std::log((1.0 - omega) / omega); }

}  // namespace

ResamplingRule ResamplingRule::two_point(double v0, double v1) {
    ResamplingRule r;
    r.kind_ = RuleKind::TwoPoint;
    r.atoms_ = {{v0, 0.5}, {v1, 0.5}};
    check_atoms(r.atoms_);
    r.cum_ = {0.5, 1.0};
    return r;
}

ResamplingRule ResamplingRule::finite_support(std::vector<std::pair<double, double>> atoms) {
    ResamplingRule r;
    r.kind_ = RuleKind::FiniteSupport;
    check_atoms(atoms);
    r.atoms_ = std::move(atoms);
    double c = 0.0;
    for (const auto& [v, w] : r.atoms_) {
        (void)v;
        c += w;
        r.cum_.push_back(c);
    }
    r.cum_.back() = 1.0;
    return r;
}

ResamplingRule ResamplingRule::symmetric_beta(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("rule: beta shape must be positive");
    ResamplingRule r;
    r.kind_ = RuleKind::SymmetricBeta;
    r.shape_ = shape;
    return r;
}

LogRhoMoments ResamplingRule::log_rho_moments() const {
    if (has_finite_support()) {
        double m = 0.0, m2 = 0.0;
        for (const auto& [v, w] : atoms_) {
            const double l = log_rho(v);
            m += w * l;
            m2 += w * l * l;
        }
        return {m, m2 - m * m};
    }
    // Beta(a,a): E[log rho] = 0 by the symmetry omega -> 1-omega; the second
    // moment needs quadrature. log^2 rho * density is integrable for a > 0.
    const boost::math::beta_distribution<double> beta(shape_, shape_);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const auto integrand = [&](double u) {
        const double l = log_rho(u);
        return l * l * boost::math::pdf(beta, u);
    };
    const double m2 = integrator.integrate(integrand, 0.0, 1.0, 1e-10);
    return {0.0, m2};
}

Validation ResamplingRule::validate_recurrent(double tol) const {
    const auto [mean, var] = log_rho_moments();
    if (!std::isfinite(mean) || std::abs(mean) > tol)
        return {false, "nonzero drift: E[log rho] = " + std::to_string(mean)};
    if (!(var > 0.0))
        return {false, "zero variance of log rho"};
    if (!std::isfinite(var))
        return {false, "infinite variance of log rho"};
    return {true, ""};
}

double ResamplingRule::mean_omega() const {
    if (kind_ == RuleKind::SymmetricBeta) return 0.5;
    double m = 0.0;
    for (const auto& [v, w] : atoms_) m += w * v;
    return m;
}

double ResamplingRule::draw(double u) const {
    if (kind_ == RuleKind::SymmetricBeta) {
        const boost::math::beta_distribution<double> beta(shape_, shape_);
        return boost::math::quantile(beta, u);
    }
    for (size_t i = 0; i + 1 < cum_.size(); ++i)
        if (u < cum_[i]) return atoms_[i].first;
    return atoms_.back().first;
}

}  // namespace rwcre
