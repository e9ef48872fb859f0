#pragma once

#include <string>
#include <vector>

namespace kerr {

// How the energy-conservation constraint
//   cos(theta1)/lambda1 + cos(theta2)/lambda2
//     - cos(theta3)/lambda3 - cos(theta4)/lambda4 = 0
// is enforced before any mismatch evaluation.
enum class Closure {
    None,             // caller promises the constraint already holds
    SolveLambda4,     // solve for lambda4
    SolveSignalPair,  // set theta2 = theta1 and solve lambda1 = lambda2
};

std::string to_string(Closure c);
Closure closure_from_string(const std::string& s);  // throws ValidationError

// Physical scenario. Internally SI: lengths in meters, angles in radians.
// Wavelengths are the in-medium values. Beams 3,4 are the pumps; 1,2 the
// detected pair. All beam axes lie in the x-z plane, tilted by theta from z.
struct ExperimentConfig {
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda4 = 0.0;  // m
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta4 = 0.0;      // rad
    double L = 0.0;               // crystal length, m
    double w3 = 0.0, w4 = 0.0;    // pump waists, m
    double f = 0.0;               // imaging lens focal length, m
    Closure closure = Closure::None;
};

struct ValidationReport {
    std::vector<std::string> violations;  // hard errors
    std::vector<std::string> warnings;    // e.g. thin-crystal parameter large
    bool ok() const { return violations.empty(); }
};

// Checks finiteness, positivity, wavelength range [100 nm, 10 um] and the
// paraxial gate |theta| < 15 deg on every beam.
ValidationReport validate_config(const ExperimentConfig& cfg);

// Residual of the conservation constraint (1/m), and the same divided by the
// largest of the four term magnitudes.
double conservation_residual(const ExperimentConfig& cfg);
double conservation_residual_rel(const ExperimentConfig& cfg);

// Applies cfg.closure and returns the adjusted config (closure field kept).
// Throws ValidationError when closure is None or no physical solution exists.
ExperimentConfig close_conservation(const ExperimentConfig& cfg);

// JSON interface. Recognized keys:
//   lambda1_nm..lambda4_nm, theta1_deg..theta4_deg, L_mm, w3_mm, w4_mm, f_m,
//   closure ("none" | "solve_lambda4" | "solve_signal_pair")
// Unknown keys are an error. Keys the closure overwrites may be omitted
// (lambda4_nm under solve_lambda4; lambda1_nm, lambda2_nm, theta2_deg under
// solve_signal_pair). Returns the config as given; closure is NOT applied.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace kerr
