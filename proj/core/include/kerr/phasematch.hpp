#pragma once

#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/vec2.hpp"

namespace kerr {

// Longitudinal wave-vector component for transverse part kperp:
// sqrt((2 pi/lambda)^2 - |kperp|^2). Throws ValidationError on evanescent
// input (|kperp| >= 2 pi/lambda).
double kz_exact(double lambda, Vec2 kperp);

// Quadratic (paraxial) expansion about an axis tilted by theta in the x-z
// plane:
//   (2 pi/l) cos(t) - [ (l/(2 pi)) |k|^2 / cos(t) - (2 pi/l) sin^2(t)/cos(t) ] / 2
// Enforces the same |theta| < 15 deg gate as validate_config.
double kz_paraxial(double lambda, double theta, Vec2 kperp);

struct MismatchBreakdown {
    double quadratic_part = 0.0;  // terms quadratic in the transverse vectors, 1/m
    double angle_part = 0.0;      // the constant Theta, 1/m
    double total = 0.0;           // quadratic_part + angle_part
};

// Precomputed coefficients of the mismatch quadratic form, for hot loops:
//   a1 |k1|^2 + a2 |k2|^2 + a3 |k3|^2
//     + cross (k1.k2 - k1.k3 - k2.k3) + Theta
struct MismatchForm {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;  // m
    double cross = 0.0;                   // m
    double Theta = 0.0;                   // 1/m

    double operator()(Vec2 k1, Vec2 k2, Vec2 k3) const {
        return a1 * norm2(k1) + a2 * norm2(k2) + a3 * norm2(k3) +
               cross * (dot(k1, k2) - dot(k1, k3) - dot(k2, k3)) + Theta;
    }
};

MismatchForm mismatch_form(const ExperimentConfig& cfg, const DerivedParams& prm);

// Critical phase mismatch kz1 + kz2 - kz3 - kz4 in the paraxial expansion,
// with k4 eliminated by transverse momentum conservation (k4 = k1 + k2 - k3;
// every ki measured from the common z axis; the beam tilts enter through the
// sec factors and the constant Theta). Requires the energy-conservation
// constraint to hold to 1e-6 relative; throws ValidationError otherwise.
MismatchBreakdown delta_kz_crit(const ExperimentConfig& cfg, const DerivedParams& prm,
                                Vec2 k1, Vec2 k2, Vec2 k3);

}  // namespace kerr
