#pragma once

// Quenched RWCRE dynamics: +1 with probability omega_k(x) under the block-k
// environment, refreshed at every tau(k). simulate() is a pure function of
// (rule, schedule, n, seed, replica), identical across hosts and worker counts.

#include <cstdint>
#include <functional>
#include <vector>

#include "rwcre/cooling.hpp"
#include "rwcre/rule.hpp"

namespace rwcre {

struct Trajectory {
    std::vector<int64_t> x;  // X_0..X_n
    int64_t n = 0;
    uint32_t replica = 0;
};

struct BlockIncrements {
    std::vector<int64_t> y;  // Y_1..Y_k(n)
    int64_t y_bar = 0;       // X_n - X_tau(k(n))
    int64_t y_bar_c = 0;     // X_tau(k(n)+1) - X_n, when the path extends that far (else 0)
};

struct ScaledPath {
    std::vector<double> t;
    std::vector<double> value;
    double chi = 0.0;
};

// Test hook: when set, omega(block, site) bypasses rule/seed entirely.
using EnvOverride = std::function<double(uint32_t block, int64_t site)>;

Trajectory simulate(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                    uint64_t seed, uint32_t replica, const EnvOverride* override_env = nullptr);

// Streaming variant for large horizons: records X only at the requested
// sorted node indices and at every block boundary tau(j) <= n.
struct SampledRun {
    std::vector<int64_t> node_x;   // X at nodes[i]
    std::vector<int64_t> block_x;  // X at tau(1)..tau(k(n))
    int64_t x_n = 0;
};

SampledRun simulate_sampled(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                            uint64_t seed, uint32_t replica, const std::vector<int64_t>& nodes);

BlockIncrements decompose(const Trajectory& traj, const CoolingSchedule& schedule);

struct Centering {
    std::vector<double> mean;
    std::vector<double> std_error;
};

// Pointwise sample mean (with standard error) across replicas; `values` is
// replicas x nodes.
Centering center(const std::vector<std::vector<double>>& values);

// Eq.-style linear interpolation: X^n_t = (X~_{floor(tn)} + frac * step) / sqrt(chi).
ScaledPath scaled_path(const Trajectory& traj, const std::vector<double>& centering_mean,
                       double chi, const std::vector<double>& grid);

// The same arithmetic from node samples: x_floor/x_ceil are the raw positions
// at floor(t*n) and floor(t*n)+1 for each grid point, centered by mean_floor /
// mean_ceil.
std::vector<double> scaled_values(const std::vector<double>& grid, int64_t n,
                                  const std::vector<int64_t>& x_floor,
                                  const std::vector<int64_t>& x_ceil,
                                  const std::vector<double>& mean_floor,
                                  const std::vector<double>& mean_ceil, double chi);

}  // namespace rwcre
