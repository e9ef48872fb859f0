#pragma once

#include "kerr/config.hpp"

namespace kerr {

// Scalars derived from a configuration. Dimensionless unless noted.
struct DerivedParams {
    double w1 = 0.0, w2 = 0.0;   // detection-plane scale widths, m:
                                 //   w1 = f*lambda1/(2 pi w4), w2 = f*lambda2/(2 pi w3)
    double s = 0.0;              // pump waist ratio squared, (w3/w4)^2
    double zR = 0.0;             // Rayleigh range of pump 4, pi w4^2/lambda4, m
    double tau = 0.0;            // thin-crystal parameter, L/(8 zR)
    double a = 0.0;              // sec(t4) + (l3/l4) sec(t3)
    double Theta = 0.0;          // axis-tilt mismatch constant, 1/m:
                                 //   pi * [sin^2(t1)/(l1 c1) + sin^2(t2)/(l2 c2)
                                 //         - sin^2(t3)/(l3 c3) - sin^2(t4)/(l4 c4)]
    // first-order coefficient constants (standard form)
    double c1 = 0.0;             // s/(1+s)
    double c2 = 0.0;             // sec(t4) (1-s^2)/(1+s)^2
    double c3 = 0.0;             // c2 + (l1/l4) sec(t1)
    double c4 = 0.0;             // c2 + (l2/l4) sec(t2)
    // coefficients the exact tau-expansion of A, B, C actually produces:
    // shifted from the standard set by -a/(1+s)^2 (see stage_coefficients).
    // The sinc-argument combination c3+c4-2*c2 is identical for both sets;
    // the first-order probability stages use the _lin set.
    double c2_lin = 0.0, c3_lin = 0.0, c4_lin = 0.0;
    double R0sq = 0.0;           // ring radius squared in scaled units, L*Theta*cos(t4)/4
    double q3 = 0.0, q4 = 0.0;   // pump transverse momentum shifts along +x,
                                 //   (2 pi/lambda) sin(theta), 1/m
};

// Validates cfg (throws ValidationError listing the violations) and computes
// every derived scalar. Does NOT require the conservation constraint.
DerivedParams derive_params(const ExperimentConfig& cfg);

}  // namespace kerr
