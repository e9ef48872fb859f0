#include "kerr/probability.hpp"

#include <algorithm>
#include <cmath>

#include "kerr/errors.hpp"
#include "kerr/sinc.hpp"
#include "prob_kernels.hpp"

namespace kerr {

const char* stage_column(Stage s) {
    switch (s) {
        case Stage::S1: return "s1";
        case Stage::S2: return "s2";
        case Stage::S3Printed: return "s3_printed";
        case Stage::S3Reduced: return "s3_reduced";
    }
    return "s1";
}

const char* stage_flag(Stage s) {
    switch (s) {
        case Stage::S1: return "s1";
        case Stage::S2: return "s2";
        case Stage::S3Printed: return "s3p";
        case Stage::S3Reduced: return "s3r";
    }
    return "s1";
}

Stage stage_from_flag(const std::string& flag) {
    if (flag == "s1") return Stage::S1;
    if (flag == "s2") return Stage::S2;
    if (flag == "s3p") return Stage::S3Printed;
    if (flag == "s3r") return Stage::S3Reduced;
    throw ValidationError("unknown stage flag '" + flag +
                          "' (expected s1, s2, s3p or s3r)");
}

FirstOrderCoeffs first_order_coeffs(double t1, double t2, const DerivedParams& prm) {
    const double d = prm.tau * (t1 - t2);
    FirstOrderCoeffs c;
    c.U = Complex(2.0 * prm.c1, d * prm.c3_lin);
    c.V = Complex(2.0 * prm.c1, d * prm.c4_lin);
    c.W = Complex(2.0 * prm.c1, d * prm.c2_lin);
    return c;
}

ProbabilityValue prob_s1(double x, const ExperimentConfig& cfg,
                         const DerivedParams& prm, const QuadratureRule& rule) {
    const detail::S1Kernel kernel(cfg, prm, rule);
    return {x, kernel.eval(x), Stage::S1};
}

ProbabilityValue prob_s2(double x, const ExperimentConfig& cfg,
                         const DerivedParams& prm, const QuadratureRule& rule) {
    const detail::S2Kernel kernel(cfg, prm, rule);
    return {x, kernel.eval(x), Stage::S2};
}

ProbabilityValue prob_s3_printed(double x, const ExperimentConfig& cfg,
                                 const DerivedParams& prm) {
    const double w3sq = cfg.w3 * cfg.w3;
    const double w4sq = cfg.w4 * cfg.w4;
    const double pref = 2.0 * prm.w2 * prm.w2 / (w3sq * (w3sq + w4sq));
    const double sec4 = 1.0 / std::cos(cfg.theta4);
    const double arg = 2.0 * sec4 * prm.tau * (x * x - prm.R0sq);
    const double sc = sinc(arg);
    return {x, pref * sc * sc, Stage::S3Printed};
}

ProbabilityValue prob_s3_reduced(double x, const ExperimentConfig& cfg,
                                 const DerivedParams& prm) {
    const double kappa = prm.c3 + prm.c4 - 2.0 * prm.c2;
    const double C0 = 1.0 / ((1.0 + prm.s) * (1.0 + prm.s) * 2.0 * prm.c1);
    const double b = prm.a / (1.0 + prm.s) - prm.c4_lin / (2.0 * prm.c1);
    const double phi = 0.5 * cfg.L * prm.Theta - prm.tau * kappa * x * x;
    const double sc = sinc(phi);
    const double v = C0 * (4.0 * sc * sc - 8.0 * prm.tau * b * sc * sinc_moment(phi));
    return {x, v, Stage::S3Reduced};
}

double profile_max_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ValidationError("profile_max_deviation: size mismatch");
    double dev = 0.0;
    for (size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

namespace {

void peak_normalize(std::vector<double>& v) {
    if (v.empty()) return;
    const double peak = *std::max_element(v.begin(), v.end());
    if (peak > 0.0)
        for (double& x : v) x /= peak;
}

double grid_argmax(const std::vector<double>& grid, const std::vector<double>& v) {
    const size_t i = std::max_element(v.begin(), v.end()) - v.begin();
    return grid[i];
}

}  // namespace

DiscrepancyReport stage_report(const ExperimentConfig& cfg, const DerivedParams& prm,
                               const std::vector<double>& grid,
                               const QuadratureRule& rule) {
    if (grid.empty()) throw ValidationError("stage_report: empty grid");

    const detail::S1Kernel k1(cfg, prm, rule);
    const detail::S2Kernel k2(cfg, prm, rule);
    std::vector<double> v[4];
    for (int s = 0; s < 4; ++s) v[s].reserve(grid.size());
    for (double x : grid) {
        v[0].push_back(k1.eval(x));
        v[1].push_back(k2.eval(x));
        v[2].push_back(prob_s3_printed(x, cfg, prm).value);
        v[3].push_back(prob_s3_reduced(x, cfg, prm).value);
    }

    DiscrepancyReport rep;
    rep.grid = grid;
    for (int s = 0; s < 4; ++s) {
        rep.argmax_x[s] = grid_argmax(grid, v[s]);
        peak_normalize(v[s]);
    }
    static const Stage all[4] = {Stage::S1, Stage::S2, Stage::S3Printed,
                                 Stage::S3Reduced};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            rep.pairs.push_back({all[i], all[j], profile_max_deviation(v[i], v[j])});

    rep.printed_R0sq = prm.R0sq;
    const double kappa = prm.c3 + prm.c4 - 2.0 * prm.c2;
    rep.reduced_peak_x2 =
        std::max(0.0, 0.5 * cfg.L * prm.Theta / (prm.tau * kappa));
    const double ring = rep.printed_R0sq > 0.0 ? std::sqrt(rep.printed_R0sq)
                                               : grid.back() - grid.front();
    rep.argmax_disagrees =
        std::abs(rep.argmax_x[2] - rep.argmax_x[3]) > 0.01 * ring;
    return rep;
}

}  // namespace kerr
