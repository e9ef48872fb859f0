#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kerr/amplitude.hpp"
#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/quadrature.hpp"

namespace kerr {

// Approximation stages of the radial detection probability, coarsest last:
//   S1        double thickness-parameter integral, exact coefficients
//   S2        the same integral with every tau-dependence linearized
//   S3Printed closed sinc^2 form around the standard ring radius R0sq
//   S3Reduced closed form integrating the linearized integrand exactly,
//             including the surviving first-order prefactor term
enum class Stage { S1, S2, S3Printed, S3Reduced };

const char* stage_column(Stage s);                 // "s1", "s2", "s3_printed", "s3_reduced"
const char* stage_flag(Stage s);                   // "s1", "s2", "s3p", "s3r"
Stage stage_from_flag(const std::string& flag);    // throws ValidationError

// Coefficient sums of the linearized two-parameter integrand at (t1, t2):
//   U = 2 c1 + i tau c3_lin (t1 - t2)
//   V = 2 c1 + i tau c4_lin (t1 - t2)
//   W = 2 c1 + i tau c2_lin (t1 - t2)
// Real at t1 == t2; conjugate-symmetric under swapping t1 and t2.
struct FirstOrderCoeffs {
    Complex U, V, W;
};

FirstOrderCoeffs first_order_coeffs(double t1, double t2, const DerivedParams& prm);

struct ProbabilityValue {
    double x = 0.0;      // scaled radius
    double value = 0.0;  // arbitrary but stage-consistent scale; nonnegative up
                         // to the stage's truncation and quadrature residual
    Stage stage = Stage::S1;
};

// S1: Re of the tensor-product integral over (t1, t2) of
//   exp(i L Theta (t1-t2)/2 - (U - W^2/V) x^2) / (delta(t1) conj(delta(t2)) V)
// with U = A(t1)+conj(A(t2)), V = B(t1)+conj(B(t2)), W = C(t1)+conj(C(t2)).
// Throws NumericalError if |V| < 1e-9 anywhere on the node grid, or if the
// Hermitian-symmetry imaginary residual exceeds its bound.
ProbabilityValue prob_s1(double x, const ExperimentConfig& cfg,
                         const DerivedParams& prm, const QuadratureRule& rule);

// S2: same integral of the fully linearized integrand
//   C0 (1 + i tau b (t1-t2)) exp(i phi(x) (t1-t2))
//   phi(x) = L Theta/2 - tau kappa x^2,  kappa = c3+c4-2 c2,
//   C0 = 1/((1+s)^2 2 c1),  b = a/(1+s) - c4_lin/(2 c1)
ProbabilityValue prob_s2(double x, const ExperimentConfig& cfg,
                         const DerivedParams& prm, const QuadratureRule& rule);

// S3 closed forms (no quadrature):
//   printed: [2 w2^2 / (w3^2 (w3^2+w4^2))] sinc^2(2 sec(t4) tau (x^2 - R0sq))
//   reduced: C0 [ 4 sinc^2(phi) - 8 tau b sinc(phi) (sin phi - phi cos phi)/phi^2 ]
ProbabilityValue prob_s3_printed(double x, const ExperimentConfig& cfg,
                                 const DerivedParams& prm);
ProbabilityValue prob_s3_reduced(double x, const ExperimentConfig& cfg,
                                 const DerivedParams& prm);

// max |a_i - b_i| between two equally sized value vectors (used on
// peak-normalized profiles; 0 for identical inputs)
double profile_max_deviation(const std::vector<double>& a, const std::vector<double>& b);

struct StagePairDeviation {
    Stage a = Stage::S1, b = Stage::S1;
    double max_dev = 0.0;   // on peak-normalized curves over the grid
};

// Side-by-side comparison of all four stages on one grid.
struct DiscrepancyReport {
    std::vector<double> grid;
    std::vector<StagePairDeviation> pairs;   // all 6 unordered stage pairs
    double argmax_x[4] = {0, 0, 0, 0};       // grid argmax per stage, Stage order
    double printed_R0sq = 0.0;               // ring radius^2, standard form
    double reduced_peak_x2 = 0.0;            // ring radius^2 implied by the
                                             // reduced form: max(0, (L Theta/2)/(tau kappa))
    bool argmax_disagrees = false;           // printed vs reduced argmax differ by
                                             // more than 1% of the ring radius
};

DiscrepancyReport stage_report(const ExperimentConfig& cfg, const DerivedParams& prm,
                               const std::vector<double>& grid,
                               const QuadratureRule& rule);

}  // namespace kerr
