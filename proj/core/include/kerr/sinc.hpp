#pragma once

#include <cmath>

namespace kerr {

// sin(x)/x with the removable singularity filled by its even series.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// (sin x - x cos x)/x^2: first-moment companion of sinc over [-1,1],
// -> x/3 as x -> 0. Series branch avoids the cancellation below |x| ~ 0.1.
inline double sinc_moment(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 + x2 * (-1.0 / 30.0 + x2 * (1.0 / 840.0 - x2 / 45360.0)));
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x);
}

}  // namespace kerr
