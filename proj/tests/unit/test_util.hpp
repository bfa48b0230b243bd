#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "psram/workloads/sod.hpp"

namespace psram::test {

// Largest |a - b| per component, scaled by that component's largest |b|.
inline double max_rel_err(const EulerState& a, const EulerState& b) {
    double worst = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        double scale = 0;
        for (const auto& w : b.cells) scale = std::max(scale, std::abs(w[c]));
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = std::abs(a.cells[i][c] - b.cells[i][c]);
            if (d > 0) worst = std::max(worst, d / std::max(std::abs(b.cells[i][c]), scale));
        }
    }
    return worst;
}

inline double max_rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    double scale = 0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d > 0) worst = std::max(worst, d / std::max(std::abs(b[i]), scale));
    }
    return worst;
}

}  // namespace psram::test
