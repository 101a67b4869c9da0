#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. SC'11).
// Every draw is a pure function of (seed, purpose, stream ids, counter),
// so replicas are reproducible under any parallel schedule.

#include <array>
#include <cstdint>

namespace rwcre::rng {

inline uint64_t mix64(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

enum class Purpose : uint64_t {
    Env       = 0xE4F1A9C2D6B35E01ULL,
    Step      = 0x5B8C3DA7F20E9B17ULL,
    Bootstrap = 0x1D7E6F04A98C52C3ULL,
};

struct Key {
    uint32_t k0, k1;
};

inline Key make_key(uint64_t seed, Purpose purpose) {
    const uint64_t k = mix64(seed ^ static_cast<uint64_t>(purpose));
    return Key{static_cast<uint32_t>(k), static_cast<uint32_t>(k >> 32)};
}

inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, Key key) {
    constexpr uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    uint32_t k0 = key.k0, k1 = key.k1;
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = static_cast<uint64_t>(M0) * ctr[0];
        const uint64_t p1 = static_cast<uint64_t>(M1) * ctr[2];
        const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
        const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        k0 += W0;
        k1 += W1;
    }
    return ctr;
}

// Strictly inside (0,1): ((x>>11)+0.5) * 2^-53.
inline double to_unit(uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline uint64_t words_to_u64(uint32_t hi, uint32_t lo) {
    return (static_cast<uint64_t>(hi) << 32) | lo;
}

// One uniform per (replica, block, site); drives environment draws.
inline double env_uniform(uint64_t seed, uint32_t replica, uint32_t block, int64_t site) {
    const uint64_t s = static_cast<uint64_t>(site);
    const std::array<uint32_t, 4> ctr = {static_cast<uint32_t>(s), static_cast<uint32_t>(s >> 32),
                                         block, replica};
    const auto w = philox4x32(ctr, make_key(seed, Purpose::Env));
    return to_unit(words_to_u64(w[0], w[1]));
}

// One uniform per (replica, step). Two steps share one Philox block.
inline double step_uniform(uint64_t seed, uint32_t replica, uint64_t step) {
    const uint64_t c = step >> 1;
    const std::array<uint32_t, 4> ctr = {static_cast<uint32_t>(c), static_cast<uint32_t>(c >> 32),
                                         0u, replica};
    const auto w = philox4x32(ctr, make_key(seed, Purpose::Step));
    return (step & 1) ? to_unit(words_to_u64(w[2], w[3])) : to_unit(words_to_u64(w[0], w[1]));
}

// Sequential stream for bootstrap resampling and other scratch randomness.
class Stream {
public:
    Stream(uint64_t seed, Purpose purpose, uint32_t stream_id)
        : key_(make_key(seed, purpose)), stream_id_(stream_id) {}

    double uniform() {
        if (have_ == 0) {
            const std::array<uint32_t, 4> ctr = {static_cast<uint32_t>(counter_),
                                                 static_cast<uint32_t>(counter_ >> 32), stream_id_,
                                                 0u};
            buf_ = philox4x32(ctr, key_);
            ++counter_;
            have_ = 2;
        }
        --have_;
        const int i = 2 * (1 - have_);
        return to_unit(words_to_u64(buf_[static_cast<size_t>(i)], buf_[static_cast<size_t>(i) + 1]));
    }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    Key key_;
    uint32_t stream_id_;
    uint64_t counter_ = 0;
    std::array<uint32_t, 4> buf_{};
    int have_ = 0;
};

}  // namespace rwcre::rng
