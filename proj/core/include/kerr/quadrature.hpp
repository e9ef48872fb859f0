#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "kerr/vec2.hpp"

namespace kerr {

using Complex = std::complex<double>;

// Gauss-Legendre rule on [-1,1]. Nodes strictly ascending, exactly symmetric
// about 0; weights positive, summing to 2.
struct QuadratureRule {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence, converged to 1e-15
// and cached per order. Valid n: 2..512.
const QuadratureRule& gauss_legendre(int n);

struct QuadResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;      // |value(n) - value(n/2)| for fixed rules
    std::int64_t evaluations = 0;
    double abs_mass = 0.0;            // sum of |w * f|: scale for residual checks
};

// Tensor-product integral of f over [-1,1]^2 with the given rule.
// Throws NumericalError on a non-finite sample.
QuadResult integrate_box2(const std::function<Complex(double, double)>& f,
                          const QuadratureRule& rule);

// Adaptive panel integration over the plane for integrands bounded by
// C exp(-decay_width^2 |k - center|^2). The domain is truncated at
// 6 decay lengths (tail mass < 1e-15 of the bound), covered by panels with an
// embedded 8x8 / 4x4 Gauss-Legendre error estimate, and the worst panels are
// split until the summed panel error is below tol relative to the running
// value. Deterministic: panel order and splits depend only on the inputs.
// Throws NumericalError once the 1e7 sample budget is exhausted.
QuadResult integrate_gaussian_plane(const std::function<Complex(Vec2)>& f,
                                    Vec2 center, double decay_width, double tol);

}  // namespace kerr
