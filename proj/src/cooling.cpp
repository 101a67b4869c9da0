#include "rwcre/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwcre {

namespace {
constexpr int64_t kMaxTime = std::numeric_limits<int64_t>::max() / 2;
}

CoolingSchedule CoolingSchedule::polynomial(double B, double beta) {
    if (!(B > 0.0)) throw std::invalid_argument("schedule: B must be positive");
    if (!(beta > 1.0)) throw std::invalid_argument("schedule: beta must exceed 1");
    CoolingSchedule s;
    s.kind_ = ScheduleKind::Polynomial;
    s.B_ = B;
    s.beta_ = beta;
    s.tau_ = {0};
    return s;
}

CoolingSchedule CoolingSchedule::exponential(double C, double scale) {
    if (!(C > 0.0)) throw std::invalid_argument("schedule: C must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("schedule: scale must be positive");
    CoolingSchedule s;
    s.kind_ = ScheduleKind::Exponential;
    s.C_ = C;
    s.scale_ = scale;
    s.tau_ = {0};
    return s;
}

CoolingSchedule CoolingSchedule::unit() {
    CoolingSchedule s;
    s.kind_ = ScheduleKind::Unit;
    return s;
}

CoolingSchedule CoolingSchedule::explicit_times(std::vector<int64_t> taus) {
    CoolingSchedule s;
    s.kind_ = ScheduleKind::Explicit;
    s.tau_ = {0};
    int64_t k = 0;
    for (int64_t t : taus) {
        ++k;
        if (t <= s.tau_.back())
            throw std::invalid_argument("schedule: explicit times must be strictly increasing");
        if (t < k) throw std::invalid_argument("schedule: explicit times must satisfy tau(k) >= k");
        s.tau_.push_back(t);
    }
    return s;
}

int64_t CoolingSchedule::compute_next(int64_t k) const {
    const int64_t prev = tau_[static_cast<size_t>(k - 1)];
    int64_t t;
    switch (kind_) {
        case ScheduleKind::Polynomial: {
            const double raw = B_ * std::pow(static_cast<double>(k), beta_);
            if (raw > static_cast<double>(kMaxTime))
                throw std::overflow_error("schedule: tau(k) overflows the time type");
            t = std::max({prev + 1, k, static_cast<int64_t>(std::floor(raw))});
            break;
        }
        case ScheduleKind::Exponential: {
            const double g = scale_ * std::exp(C_ * static_cast<double>(k));
            if (g > static_cast<double>(kMaxTime) ||
                static_cast<double>(prev) + g > static_cast<double>(kMaxTime))
                throw std::overflow_error("schedule: tau(k) overflows the time type");
            t = prev + std::max<int64_t>(1, std::llround(g));
            break;
        }
        case ScheduleKind::Explicit:
            throw std::out_of_range("schedule: k beyond the explicit time table");
        case ScheduleKind::Unit:
        default:
            t = k;
            break;
    }
    return t;
}

void CoolingSchedule::ensure(int64_t k) const {
    while (static_cast<int64_t>(tau_.size()) <= k)
        tau_.push_back(compute_next(static_cast<int64_t>(tau_.size())));
}

void CoolingSchedule::reserve_horizon(int64_t n) {
    if (kind_ == ScheduleKind::Unit) return;
    if (kind_ == ScheduleKind::Explicit) {
        if (tau_.back() <= n)
            throw std::out_of_range("schedule: explicit time table ends before the horizon");
        return;
    }
    while (tau_.back() <= n) ensure(static_cast<int64_t>(tau_.size()));
}

int64_t CoolingSchedule::tau(int64_t k) const {
    if (k < 0) throw std::invalid_argument("schedule: k must be >= 0");
    if (kind_ == ScheduleKind::Unit) return k;
    ensure(k);
    return tau_[static_cast<size_t>(k)];
}

int64_t CoolingSchedule::gap(int64_t k) const {
    if (k < 1) throw std::invalid_argument("schedule: gap needs k >= 1");
    return tau(k) - tau(k - 1);
}

int64_t CoolingSchedule::k_of_n(int64_t n) const {
    if (n < 0) throw std::invalid_argument("schedule: n must be >= 0");
    if (kind_ == ScheduleKind::Unit) return n;
    if (kind_ != ScheduleKind::Explicit)
        while (tau_.back() <= n) ensure(static_cast<int64_t>(tau_.size()));
    else if (tau_.back() <= n)
        throw std::out_of_range("schedule: explicit time table ends before n");
    const auto it = std::upper_bound(tau_.begin(), tau_.end(), n);
    return static_cast<int64_t>(it - tau_.begin()) - 1;
}

std::pair<int64_t, int64_t> CoolingSchedule::remainders(int64_t n) const {
    const int64_t k = k_of_n(n);
    return {n - tau(k), tau(k + 1) - n};
}

}  // namespace rwcre
