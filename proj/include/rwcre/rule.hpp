#pragma once

// Resampling rule alpha: the marginal law of a single environment value
// omega(x) in (0,1), with the log-rho moments that decide recurrence.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rwcre {

enum class RuleKind { TwoPoint, FiniteSupport, SymmetricBeta };

struct LogRhoMoments {
    double mean;
    double variance;
};

struct Validation {
    bool accepted;
    std::string reason;  // empty when accepted
};

class ResamplingRule {
public:
    // Two support values, weight 1/2 each.
    static ResamplingRule two_point(double v0, double v1);
    // Arbitrary finite support {(value, weight)}.
    static ResamplingRule finite_support(std::vector<std::pair<double, double>> atoms);
    // Beta(a, a) on (0,1).
    static ResamplingRule symmetric_beta(double shape);

    RuleKind kind() const { return kind_; }
    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
    double beta_shape() const { return shape_; }
    bool has_finite_support() const { return kind_ != RuleKind::SymmetricBeta; }

    // E[log rho(0)] and Var(log rho(0)), rho(0) = (1-omega)/omega.
    // Closed form on finite support, adaptive quadrature for symmetric-beta.
    LogRhoMoments log_rho_moments() const;

    // Accept iff |E[log rho]| <= tol and 0 < Var < inf.
    Validation validate_recurrent(double tol = kDefaultTolerance) const;

    double mean_omega() const;

    // Maps one uniform in (0,1) to a draw from alpha.
    double draw(double u) const;

    static constexpr double kDefaultTolerance = 1e-9;

private:
    ResamplingRule() = default;

    RuleKind kind_ = RuleKind::TwoPoint;
    std::vector<std::pair<double, double>> atoms_;  // (value, weight), cumulative order
    std::vector<double> cum_;                       // cumulative weights for draw()
    double shape_ = 0.0;
};

}  // namespace rwcre
