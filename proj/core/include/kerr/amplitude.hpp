#pragma once

#include <complex>

#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/quadrature.hpp"
#include "kerr/vec2.hpp"

namespace kerr {

// Pair of detection-plane positions, with the scaled radii used throughout
// the reduced stages: x1 = |r1|/w1, x2 = |r2|/w2.
struct ScreenPoint {
    Vec2 r1, r2;                 // m
    double x1 = 0.0, x2 = 0.0;   // dimensionless
};

ScreenPoint make_screen_point(Vec2 r1, Vec2 r2, const DerivedParams& prm);
// both positions on the +x axis at the given scaled radii
ScreenPoint screen_point_scaled(double x1, double x2, const DerivedParams& prm);

enum class AmplitudeStage { S0, S1 };

struct Amplitude {
    Complex value{0.0, 0.0};
    AmplitudeStage stage = AmplitudeStage::S0;
};

// Pump envelope in transverse momentum space:
// sqrt(2 pi) w exp(-w^2 |k - q|^2), q along +x. which selects pump 3 or 4.
double pump_momentum_profile(int which, Vec2 kperp, const ExperimentConfig& cfg,
                             const DerivedParams& prm);

// Back-focal-plane map of the 2f imaging system: k = (2 pi/(lambda f)) r.
Vec2 lens_map(Vec2 r, double lambda, double f);

// Exact complex coefficients at thickness parameter t in [-1,1]:
//   alpha = 1 - i t tau (sec t4 - (l1/l4) sec t1)
//   beta  = 1 - i t tau (sec t4 - (l2/l4) sec t2)
//   gamma = 1 - i t tau sec t4
//   delta = (1+s) - i t tau a
//   A = alpha - gamma^2/delta, B likewise from beta, C from gamma.
// At t = 0 (or tau = 0): A = B = C = c1. The first-order expansion of
// (A - c1)/(i t tau) is c3_lin (NOT the standard c3; they differ by
// a/(1+s)^2), and correspondingly for B -> c4_lin, C -> c2_lin.
struct StageCoefficients {
    Complex alpha, beta, gamma, delta;
    Complex A, B, C;
};

StageCoefficients stage_coefficients(double t, const ExperimentConfig& cfg,
                                     const DerivedParams& prm);

// Direct transverse-momentum integral over k3: the two pump envelopes times
// sinc(L/2 * mismatch), evaluated at the lens images of (r1, r2), with
// k4 = k1 + k2 - k3. Includes the lens prefactor 1/(lambda1 lambda2 f^2) and
// the (2 pi)^-2 measure. tol is the relative tolerance of the adaptive plane
// integration. Requires a closed conservation constraint (1e-6 relative).
Amplitude amplitude_s0(const ScreenPoint& pt, const ExperimentConfig& cfg,
                       const DerivedParams& prm, double tol);

// Thickness-parameter integral with exact coefficients:
//   (1/w4^2) \int_{-1}^{1} exp(i L Theta t/2 + Q(t)) / delta(t) dt
//   Q(t) = -A(t) x1^2 - B(t) x2^2 - 2 C(t) (r1.r2)/(w1 w2)
Amplitude amplitude_s1(const ScreenPoint& pt, const ExperimentConfig& cfg,
                       const DerivedParams& prm, const QuadratureRule& rule);

}  // namespace kerr
