#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace ipdsaw {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_sum_exp(const std::vector<double>& terms) {
    double m = kNegInf;
    for (double t : terms)
        if (t > m) m = t;
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

} // namespace ipdsaw
