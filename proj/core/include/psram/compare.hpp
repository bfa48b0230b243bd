#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "psram/error.hpp"

namespace psram {

// max_i |a_i - b_i| / max(|b_i|, max_j |b_j|).  0 when both are identical.
inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("compared vectors differ in length");
    double scale = 0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d > 0) worst = std::max(worst, d / std::max(std::abs(b[i]), scale));
    }
    return worst;
}

}  // namespace psram
