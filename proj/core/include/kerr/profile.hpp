#pragma once

#include <map>
#include <string>
#include <vector>

#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/probability.hpp"
#include "kerr/quadrature.hpp"

namespace kerr {

enum class Normalization { PeakUnit, Raw };

// One scanned curve family: x grid plus one value vector per stage.
struct Profile {
    std::string scenario;                          // "fig2", "fig3", "custom"
    std::string label;                             // e.g. "theta1_0p5"
    std::vector<double> x;                         // strictly increasing, from 0
    std::vector<Stage> stages;                     // canonical emission order
    std::map<Stage, std::vector<double>> values;   // aligned with x
    Normalization normalization = Normalization::PeakUnit;
    std::map<Stage, double> raw_peak;              // peak before normalization
};

struct ScenarioEntry {
    std::string label;
    ExperimentConfig cfg;   // closure already applied
};

struct ScenarioSet {
    std::string name;
    std::vector<ScenarioEntry> entries;
    double default_xmax = 0.0;
};

// fig3 geometry choice: by default pump 3 stays on axis (theta3 = 0) while
// theta4 sweeps, which keeps the ring trends strictly monotone; the symmetric
// variant tilts both pumps together (theta3 = theta4), degenerate at
// theta4 = theta1 where the mismatch constant vanishes identically.
struct Fig3Options {
    bool symmetric_pumps = false;
};

// Built-in scenario families:
//   fig2: theta1 = theta2 sweep {0, 0.5, 1, 2, 4} deg, pumps on axis
//   fig3: theta1 = theta2 = 1 deg, theta4 sweep {0, 0.5, 1, 1.5} deg
// Common: L = 2 mm, lambda3 = lambda4 = 633 nm, w3 = w4 = 1 mm, pair closure;
// f chosen so the scale width w2 is exactly 1 mm. Throws ValidationError on
// an unknown name.
ScenarioSet scenario(const std::string& name, const Fig3Options& opt = {});

// Single-entry set (name "custom") around an already closed configuration.
ScenarioSet scenario_from_config(const ExperimentConfig& cfg);

// Default scan frame: 1.5x the largest ring radius estimate (standard or
// reduced), with a fixed fallback of 4.0 when both vanish (collinear sets).
double default_xmax(const ExperimentConfig& cfg, const DerivedParams& prm);

struct GridSpec {
    int npoints = 2001;   // >= 16
    double xmax = 0.0;    // > 0
};

// Scans every requested stage over the uniform grid [0, xmax]. Deterministic
// for fixed inputs regardless of nthreads; stage evaluation failures are
// rethrown with the offending x attached.
Profile scan_profile(const ExperimentConfig& cfg, const DerivedParams& prm,
                     const std::vector<Stage>& stages, const GridSpec& grid,
                     const QuadratureRule& rule, Normalization norm, int nthreads);

struct Peak {
    double radius = 0.0;   // 3-point parabolic refinement of the grid maximum
    double height = 0.0;
    double fwhm = 0.0;     // linear interpolation of the half-height crossings;
                           // mirrored one-sided width when a crossing is off-grid
};

struct PeakSet {
    std::vector<Peak> peaks;
};

// Local maxima of one stage curve above prominence * global max. Grid-edge
// maxima count (single-neighbor test); a constant profile has no peaks.
PeakSet find_peaks(const Profile& p, Stage stage, double prominence);

// Concurrency cap: KERR_RINGS_THREADS when set (>= 1), otherwise
// hardware_concurrency clamped to [1, 8].
int resolve_thread_cap();

}  // namespace kerr
