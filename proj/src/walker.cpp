#include "rwcre/walker.hpp"

#include <cmath>
#include <stdexcept>

#include "rwcre/env.hpp"
#include "rwcre/rng.hpp"

namespace rwcre {

Trajectory simulate(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                    uint64_t seed, uint32_t replica, const EnvOverride* override_env) {
    if (n < 0) throw std::invalid_argument("simulate: n must be >= 0");
    Trajectory traj;
    traj.n = n;
    traj.replica = replica;
    traj.x.reserve(static_cast<size_t>(n + 1));
    traj.x.push_back(0);

    Environment env(rule, seed, replica, 0);
    uint32_t block = 0;
    int64_t next_refresh = schedule.tau(1);
    int64_t pos = 0;
    for (int64_t i = 0; i < n; ++i) {
        while (i >= next_refresh) {
            ++block;
            env.rebind(block);
            next_refresh = schedule.tau(block + 1);
        }
        const double omega =
            override_env ? (*override_env)(block, pos) : env.omega(pos);
        const double u = rng::step_uniform(seed, replica, static_cast<uint64_t>(i));
        pos += (u < omega) ? 1 : -1;
        traj.x.push_back(pos);
    }
    return traj;
}

SampledRun simulate_sampled(const ResamplingRule& rule, const CoolingSchedule& schedule, int64_t n,
                            uint64_t seed, uint32_t replica, const std::vector<int64_t>& nodes) {
    if (n < 0) throw std::invalid_argument("simulate_sampled: n must be >= 0");
    SampledRun run;
    run.node_x.resize(nodes.size());

    Environment env(rule, seed, replica, 0);
    uint32_t block = 0;
    int64_t next_refresh = schedule.tau(1);
    int64_t pos = 0;
    size_t node_idx = 0;
    while (node_idx < nodes.size() && nodes[node_idx] == 0) run.node_x[node_idx++] = 0;
    for (int64_t i = 0; i < n; ++i) {
        while (i >= next_refresh) {
            ++block;
            env.rebind(block);
            run.block_x.push_back(pos);  // X at tau(block)
            next_refresh = schedule.tau(block + 1);
        }
        const double omega = env.omega(pos);
        const double u = rng::step_uniform(seed, replica, static_cast<uint64_t>(i));
        pos += (u < omega) ? 1 : -1;
        while (node_idx < nodes.size() && nodes[node_idx] == i + 1) run.node_x[node_idx++] = pos;
    }
    // A boundary exactly at n belongs to the decomposition too.
    if (schedule.tau(block + 1) == n) run.block_x.push_back(pos);
    run.x_n = pos;
    return run;
}

BlockIncrements decompose(const Trajectory& traj, const CoolingSchedule& schedule) {
    const int64_t n = traj.n;
    if (static_cast<int64_t>(traj.x.size()) != n + 1)
        throw std::invalid_argument("decompose: trajectory/horizon mismatch");
    BlockIncrements inc;
    const int64_t k = schedule.k_of_n(n);
    int64_t prev = 0;
    for (int64_t j = 1; j <= k; ++j) {
        const int64_t t = schedule.tau(j);
        inc.y.push_back(traj.x[static_cast<size_t>(t)] - prev);
        prev = traj.x[static_cast<size_t>(t)];
    }
    inc.y_bar = traj.x[static_cast<size_t>(n)] - prev;
    inc.y_bar_c = 0;
    return inc;
}

Centering center(const std::vector<std::vector<double>>& values) {
    if (values.size() < 2) throw std::invalid_argument("center: need at least 2 replicas");
    const size_t m = values.front().size();
    Centering c;
    c.mean.assign(m, 0.0);
    c.std_error.assign(m, 0.0);
    // Compensated pointwise mean keeps aggregation bit-stable.
    for (size_t j = 0; j < m; ++j) {
        double sum = 0.0, comp = 0.0;
        for (const auto& row : values) {
            const double y = row[j] - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        c.mean[j] = sum / static_cast<double>(values.size());
    }
    for (size_t j = 0; j < m; ++j) {
        double ss = 0.0;
        for (const auto& row : values) {
            const double d = row[j] - c.mean[j];
            ss += d * d;
        }
        const double var = ss / static_cast<double>(values.size() - 1);
        c.std_error[j] = std::sqrt(var / static_cast<double>(values.size()));
    }
    return c;
}

std::vector<double> scaled_values(const std::vector<double>& grid, int64_t n,
                                  const std::vector<int64_t>& x_floor,
                                  const std::vector<int64_t>& x_ceil,
                                  const std::vector<double>& mean_floor,
                                  const std::vector<double>& mean_ceil, double chi) {
    if (!(chi > 0.0)) throw std::invalid_argument("scaled_values: chi must be positive");
    const double inv = 1.0 / std::sqrt(chi);
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double tn = grid[i] * static_cast<double>(n);
        const double frac = tn - std::floor(tn);
        const double lo = static_cast<double>(x_floor[i]) - mean_floor[i];
        if (frac == 0.0) {
            out[i] = lo * inv;
        } else {
            const double hi = static_cast<double>(x_ceil[i]) - mean_ceil[i];
            out[i] = (lo + frac * (hi - lo)) * inv;
        }
    }
    return out;
}

ScaledPath scaled_path(const Trajectory& traj, const std::vector<double>& centering_mean,
                       double chi, const std::vector<double>& grid) {
    if (!(chi > 0.0)) throw std::invalid_argument("scaled_path: chi must be positive");
    if (static_cast<int64_t>(centering_mean.size()) != traj.n + 1)
        throw std::invalid_argument("scaled_path: centering vector length mismatch");
    ScaledPath sp;
    sp.t = grid;
    sp.chi = chi;
    const double inv = 1.0 / std::sqrt(chi);
    for (double t : grid) {
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("scaled_path: grid outside [0,1]");
        const double tn = t * static_cast<double>(traj.n);
        const auto lo_idx = static_cast<size_t>(std::floor(tn));
        const double frac = tn - std::floor(tn);
        const double lo = static_cast<double>(traj.x[lo_idx]) - centering_mean[lo_idx];
        double v = lo;
        if (frac > 0.0) {
            const double hi = static_cast<double>(traj.x[lo_idx + 1]) - centering_mean[lo_idx + 1];
            v += frac * (hi - lo);
        }
        sp.value.push_back(v * inv);
    }
    return sp;
}

}  // namespace rwcre
