#pragma once

// Lazy environment realization. omega(x) for one (replica, block) is a pure
// function of (seed, replica, block, site); the cache only avoids recomputing
// Philox calls and never changes values. Each replica owns its Environment.

#include <cstdint>
#include <vector>

#include "rwcre/rng.hpp"
#include "rwcre/rule.hpp"

namespace rwcre {

class Environment {
public:
    Environment(const ResamplingRule& rule, uint64_t seed, uint32_t replica, uint32_t block = 0)
        : rule_(&rule), seed_(seed), replica_(replica), block_(block) {}

    uint32_t replica() const { return replica_; }
    uint32_t block() const { return block_; }

    // Switch to a new cooling block; cached values of the old block are dropped.
    void rebind(uint32_t block) {
        block_ = block;
        ++epoch_;
    }

    double omega(int64_t site) {
        if (site < lo_ || site >= hi_) grow(site);
        const size_t idx = static_cast<size_t>(site - lo_);
        if (epoch_tag_[idx] != epoch_) {
            value_[idx] = (*rule_).draw(rng::env_uniform(seed_, replica_, block_, site));
            epoch_tag_[idx] = epoch_;
        }
        return value_[idx];
    }

private:
    void grow(int64_t site);

    const ResamplingRule* rule_;
    uint64_t seed_;
    uint32_t replica_;
    uint32_t block_;
    uint32_t epoch_ = 1;
    int64_t lo_ = 0, hi_ = 0;  // cached window [lo_, hi_)
    std::vector<double> value_;
    std::vector<uint32_t> epoch_tag_;
};

}  // namespace rwcre
