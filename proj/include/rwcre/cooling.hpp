#pragma once

// Cooling map tau: strictly increasing resampling times with tau(0) = 0 and
// tau(k) >= k. Polynomial schedules realize T_k ~ beta*B*k^(beta-1), the
// exponential ones log T_k ~ C*k.

#include <cstdint>
#include <utility>
#include <vector>

namespace rwcre {

enum class ScheduleKind { Polynomial, Exponential, Unit, Explicit };

class CoolingSchedule {
public:
    static CoolingSchedule polynomial(double B, double beta);
    // T_k = max(1, round(scale * e^(C*k))); any scale > 0 keeps log T_k ~ C*k.
    static CoolingSchedule exponential(double C, double scale = 1.0);
    static CoolingSchedule unit();
    // Explicit tau(1), tau(2), ... (tau(0)=0 implied), strictly increasing, tau(k) >= k.
    static CoolingSchedule explicit_times(std::vector<int64_t> taus);

    ScheduleKind kind() const { return kind_; }
    double B() const { return B_; }
    double beta() const { return beta_; }
    double C() const { return C_; }
    double scale() const { return scale_; }

    // Grow the memo table so that every query with tau(k) or n inside the
    // horizon is a pure read. Call once before spawning workers.
    void reserve_horizon(int64_t n);

    int64_t tau(int64_t k) const;
    int64_t gap(int64_t k) const;  // T_k = tau(k) - tau(k-1)

    // max{k : tau(k) <= n}
    int64_t k_of_n(int64_t n) const;

    // (T_bar_n, T_bar_n^c) = (n - tau(k(n)), tau(k(n)+1) - n)
    std::pair<int64_t, int64_t> remainders(int64_t n) const;

private:
    CoolingSchedule() = default;

    int64_t compute_next(int64_t k) const;  // tau(k) given table up to k-1
    void ensure(int64_t k) const;

    ScheduleKind kind_ = ScheduleKind::Unit;
    double B_ = 0.0, beta_ = 0.0, C_ = 0.0, scale_ = 1.0;
    // tau_[k] = tau(k); tau_[0] = 0. Unused for the unit schedule.
    mutable std::vector<int64_t> tau_;
};

}  // namespace rwcre
