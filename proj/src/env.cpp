#include "rwcre/env.hpp"

#include <algorithm>

namespace rwcre {

void Environment::grow(int64_t site) {
    // Two-sided window, doubled past the requested site. Sinai localization
    // keeps visited ranges small, so growth is rare after warm-up.
    const int64_t margin = 64;
    int64_t new_lo = lo_, new_hi = hi_;
    if (value_.empty()) {
        new_lo = site - margin;
        new_hi = site + margin;
    }
    while (site < new_lo) new_lo -= std::max<int64_t>(margin, (new_hi - new_lo));
    while (site >= new_hi) new_hi += std::max<int64_t>(margin, (new_hi - new_lo));

    std::vector<double> value(static_cast<size_t>(new_hi - new_lo));
    std::vector<uint32_t> tag(static_cast<size_t>(new_hi - new_lo), 0u);
    for (int64_t s = lo_; s < hi_; ++s) {
        value[static_cast<size_t>(s - new_lo)] = value_[static_cast<size_t>(s - lo_)];
        tag[static_cast<size_t>(s - new_lo)] = epoch_tag_[static_cast<size_t>(s - lo_)];
    }
    lo_ = new_lo;
    hi_ = new_hi;
    value_ = std::move(value);
    epoch_tag_ = std::move(tag);
}

}  // namespace rwcre
