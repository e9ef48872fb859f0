// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances and runtime limits are pinned here, not configurable.
//
// Usage: acceptance --cli <path-to-kerr-rings-binary>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kerr/amplitude.hpp"
#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/errors.hpp"
#include "kerr/phasematch.hpp"
#include "kerr/probability.hpp"
#include "kerr/profile.hpp"
#include "kerr/quadrature.hpp"
#include "kerr/sinc.hpp"

using namespace kerr;
namespace fs = std::filesystem;

namespace {

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFail(msg);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criteria

// the quadratic mismatch form must recompose the direct paraxial branch sum
std::string c1_recomposition() {
    const ExperimentConfig cfg = scenario("fig2").entries[2].cfg;
    const DerivedParams prm = derive_params(cfg);
    const MismatchForm form = mismatch_form(cfg, prm);

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> comp(-1e4, 1e4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec2 k1{comp(rng), comp(rng)};
        const Vec2 k2{comp(rng), comp(rng)};
        const Vec2 k3{comp(rng), comp(rng)};
        const Vec2 k4 = k1 + k2 - k3;
        const double direct = kz_paraxial(cfg.lambda1, cfg.theta1, k1) +
                              kz_paraxial(cfg.lambda2, cfg.theta2, k2) -
                              kz_paraxial(cfg.lambda3, cfg.theta3, k3) -
                              kz_paraxial(cfg.lambda4, cfg.theta4, k4);
        const double composed = form(k1, k2, k3);
        const double scale = std::max(
            {std::abs(direct), std::abs(composed), std::abs(prm.Theta), 1.0});
        worst = std::max(worst, std::abs(direct - composed) / scale);
    }
    require(worst <= 1e-9, "recomposition deviation " + num(worst) + " > 1e-9");
    return "worst rel " + num(worst) + " over 1000 draws";
}

// closure exactness on the degenerate case plus residuals on every scenario
std::string c2_closure() {
    ExperimentConfig sym;
    sym.lambda1 = sym.lambda2 = sym.lambda3 = 633e-9;
    sym.L = 2e-3;
    sym.w3 = sym.w4 = 1e-3;
    sym.f = 9.926;
    sym.closure = Closure::SolveLambda4;
    const ExperimentConfig closed = close_conservation(sym);
    require(closed.lambda4 == 633e-9,
            "symmetric degenerate closure not bitwise 633 nm");

    double worst = 0.0;
    int count = 0;
    for (const ScenarioSet& set :
         {scenario("fig2"), scenario("fig3"), scenario("fig3", {true})}) {
        for (const ScenarioEntry& e : set.entries) {
            worst = std::max(worst, conservation_residual_rel(e.cfg));
            ++count;
        }
    }
    require(worst <= 1e-12,
            "constraint residual " + num(worst) + " > 1e-12");
    return "exact degenerate solve; worst residual " + num(worst) + " over " +
           std::to_string(count) + " configs";
}

// momentum-space integral proportional to the thickness integral with one
// complex constant across screen points
std::string c3_amplitude_ladder() {
    const ExperimentConfig cfg = scenario("fig2").entries.front().cfg;
    const DerivedParams prm = derive_params(cfg);
    const QuadratureRule& rule = gauss_legendre(64);

    const Vec2 p1[5] = {{0, 0}, {0.6, 0}, {1.0, 0.5}, {0, 0.7}, {1.5, -1.0}};
    const Vec2 p2[5] = {{0, 0}, {0.6, 0}, {0.5, -0.2}, {0.7, 0}, {-1.0, 0.5}};
    Complex ratio{0.0, 0.0};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const ScreenPoint pt = make_screen_point(
            {p1[i].x * prm.w1, p1[i].y * prm.w1},
            {p2[i].x * prm.w2, p2[i].y * prm.w2}, prm);
        const Complex a0 = amplitude_s0(pt, cfg, prm, 1e-6).value;
        const Complex a1 = amplitude_s1(pt, cfg, prm, rule).value;
        if (i == 0) {
            ratio = a0 / a1;
        } else {
            worst = std::max(worst, std::abs(a0 - ratio * a1) / std::abs(a0));
        }
    }
    require(worst <= 1e-3, "proportionality residual " + num(worst) + " > 1e-3");
    return "single constant fits 5 points, worst rel " + num(worst);
}

// pair probability against brute-force integration of the squared amplitude
// over the second detection plane
std::string c4_plane_integral() {
    const ExperimentConfig cfg = scenario("fig2").entries[2].cfg;
    const DerivedParams prm = derive_params(cfg);
    const QuadratureRule& rule = gauss_legendre(64);
    const double pref =
        M_PI * prm.w2 * prm.w2 / (cfg.w4 * cfg.w4 * cfg.w4 * cfg.w4);

    double worst = 0.0;
    for (double x : {0.0, 0.6, 1.23, 1.8, 2.46}) {
        const Vec2 r1{x * prm.w1, 0.0};
        auto dens = [&](Vec2 r2) -> Complex {
            const ScreenPoint pt = make_screen_point(r1, r2, prm);
            return {std::norm(amplitude_s1(pt, cfg, prm, rule).value), 0.0};
        };
        const QuadResult brute = integrate_gaussian_plane(
            dens, {-prm.w2 * x, 0.0}, 0.9 / prm.w2, 1e-7);
        const double direct = pref * prob_s1(x, cfg, prm, rule).value;
        worst = std::max(worst,
                         std::abs(brute.value.real() - direct) / std::abs(direct));
    }
    require(worst <= 1e-4, "plane-integral deviation " + num(worst) + " > 1e-4");
    return "worst rel " + num(worst) + " at 5 radii";
}

// the linearized stage must sit within 10 tau of the exact stage, and halving
// the slab must shrink the deviation at better than first order
std::string c5_truncation_order() {
    const ExperimentConfig cfg = scenario("fig2").entries[2].cfg;
    const DerivedParams prm = derive_params(cfg);
    const QuadratureRule& rule = gauss_legendre(64);
    const double xtop = 2.0 * std::sqrt(prm.R0sq);

    auto deviation = [&](const ExperimentConfig& c) {
        const DerivedParams p = derive_params(c);
        double dev = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double x = xtop * i / 20.0;
            const double s1 = prob_s1(x, c, p, rule).value;
            const double s2 = prob_s2(x, c, p, rule).value;
            dev = std::max(dev, std::abs(s2 - s1) / std::abs(s1));
        }
        return dev;
    };

    const double dev1 = deviation(cfg);
    require(dev1 <= 10.0 * prm.tau,
            "deviation " + num(dev1) + " > 10 tau = " + num(10.0 * prm.tau));

    ExperimentConfig half = cfg;
    half.L *= 0.5;
    const double dev2 = deviation(half);
    require(dev2 > 0.0, "halved-slab deviation vanished");
    const double order = std::log2(dev1 / dev2);
    require(order >= 1.5, "empirical order " + num(order) + " < 1.5");
    return "deviation " + num(dev1) + " <= 10 tau, halving order " + num(order);
}

// reduced closed form against the linearized quadrature stage on every
// built-in configuration
std::string c6_closed_form() {
    const QuadratureRule& rule = gauss_legendre(128);
    double worst = 0.0;
    for (const ScenarioSet& set : {scenario("fig2"), scenario("fig3")}) {
        for (const ScenarioEntry& e : set.entries) {
            const DerivedParams prm = derive_params(e.cfg);
            std::vector<double> s2v, s3v;
            double peak = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double x = set.default_xmax * i / 49.0;
                s2v.push_back(prob_s2(x, e.cfg, prm, rule).value);
                s3v.push_back(prob_s3_reduced(x, e.cfg, prm).value);
                peak = std::max(peak, s2v.back());
            }
            for (int i = 0; i < 50; ++i)
                worst = std::max(worst, std::abs(s3v[i] - s2v[i]) / peak);
        }
    }
    require(worst <= 1e-6, "closed-form deviation " + num(worst) + " > 1e-6");
    return "worst peak-relative dev " + num(worst) + " over 9 configs";
}

// qualitative ring trends of the standard closed form across both families
std::string c7_ring_trends() {
    auto stats = [](const ScenarioSet& set) {
        std::vector<Peak> out;
        for (const ScenarioEntry& e : set.entries) {
            const DerivedParams prm = derive_params(e.cfg);
            const Profile p =
                scan_profile(e.cfg, prm, {Stage::S3Printed},
                             {2001, set.default_xmax}, gauss_legendre(16),
                             Normalization::PeakUnit, 2);
            const PeakSet ps = find_peaks(p, Stage::S3Printed, 0.5);
            require(ps.peaks.size() == 1,
                    "config " + e.label + ": expected a single dominant peak, got " +
                        std::to_string(ps.peaks.size()));
            out.push_back(ps.peaks[0]);
        }
        return out;
    };

    const std::vector<Peak> f2 = stats(scenario("fig2"));
    require(f2[0].radius == 0.0, "collinear profile must peak on the axis");
    for (size_t i = 1; i < f2.size(); ++i) {
        require(f2[i].radius > f2[i - 1].radius,
                "pair-tilt sweep: ring radii not strictly increasing");
        require(f2[i].fwhm < f2[i - 1].fwhm,
                "pair-tilt sweep: widths not strictly decreasing");
    }
    const std::vector<Peak> f3 = stats(scenario("fig3"));
    for (size_t i = 1; i < f3.size(); ++i) {
        require(f3[i].radius < f3[i - 1].radius,
                "pump-tilt sweep: ring radii not strictly decreasing");
        require(f3[i].fwhm > f3[i - 1].fwhm,
                "pump-tilt sweep: widths not strictly increasing");
    }
    return "radii 0 < " + num(f2[1].radius) + " < ... < " + num(f2[4].radius) +
           "; pump sweep inverts both trends";
}

// the side-by-side report must flag the printed-vs-reduced ring disagreement
std::string c8_stage_report() {
    const ScenarioSet fig2 = scenario("fig2");
    const ExperimentConfig cfg = fig2.entries[2].cfg;
    const DerivedParams prm = derive_params(cfg);
    std::vector<double> grid(2001);
    for (int i = 0; i < 2001; ++i) grid[i] = fig2.default_xmax * i / 2000.0;
    const DiscrepancyReport rep = stage_report(cfg, prm, grid, gauss_legendre(64));

    require(std::abs(rep.printed_R0sq / 1.5121 - 1.0) <= 1e-3,
            "printed ring radius^2 " + num(rep.printed_R0sq) + " != 1.5121");
    require(std::abs(rep.reduced_peak_x2 / 30018.93 - 1.0) <= 1e-6,
            "reduced ring radius^2 " + num(rep.reduced_peak_x2) + " != 30018.93");
    require(rep.argmax_disagrees,
            "printed and reduced argmax unexpectedly agree");
    require(rep.pairs.size() == 6, "expected 6 stage pairs");
    return "rings at x^2 = " + num(rep.printed_R0sq) + " vs " +
           num(rep.reduced_peak_x2) + ", disagreement recorded";
}

// quadrature bedrock: polynomial exactness and the oscillatory reference
std::string c9_quadrature() {
    double worst = 0.0;
    for (int n : {2, 4, 8, 16}) {
        const QuadratureRule& rule = gauss_legendre(n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double sum = 0.0;
            for (int i = 0; i < rule.n; ++i)
                sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
            worst = std::max(worst, std::abs(sum - exact));
        }
    }
    require(worst <= 1e-13, "polynomial exactness residual " + num(worst));

    const double ref = 4.0 * sinc(1.0) * sinc(1.0);
    const QuadResult q = integrate_box2(
        [](double t1, double t2) { return std::exp(Complex(0.0, t1 - t2)); },
        gauss_legendre(32));
    const double phase_err = std::abs(q.value - Complex(ref, 0.0));
    require(phase_err <= 1e-10, "phase-integral residual " + num(phase_err));
    return "poly residual " + num(worst) + ", phase residual " + num(phase_err);
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(in.good(), "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// two CLI invocations must leave byte-identical output trees
std::string c10_determinism(const std::string& cli) {
    require(!cli.empty(), "--cli <path> not given");
    const fs::path base = fs::temp_directory_path();
    const fs::path dirs[2] = {base / "kerr_rings_accept_a",
                              base / "kerr_rings_accept_b"};
    const std::set<std::string> expected = {
        "fig2_theta1_0.csv", "fig2_theta1_0p5.csv", "fig2_theta1_1.csv",
        "fig2_theta1_2.csv", "fig2_theta1_4.csv"};

    for (const fs::path& d : dirs) {
        fs::remove_all(d);
        const std::string cmd = cli + " run --scenario fig2 --out " + d.string() +
                                " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        require(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                "CLI run failed with status " +
                    std::to_string(rc == -1 ? rc : WEXITSTATUS(rc)));
        std::set<std::string> got;
        for (const auto& ent : fs::directory_iterator(d))
            got.insert(ent.path().filename().string());
        require(got == expected, "unexpected file set in " + d.string());
    }

    size_t bytes = 0;
    for (const std::string& name : expected) {
        const std::string a = read_bytes(dirs[0] / name);
        const std::string b = read_bytes(dirs[1] / name);
        require(a == b, name + " differs between runs");
        bytes += a.size();
    }
    for (const fs::path& d : dirs) fs::remove_all(d);
    return "5 files, " + std::to_string(bytes / 2) + " bytes per tree, identical";
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    struct Criterion {
        int id;
        const char* name;
        double time_limit;   // s
        std::function<std::string()> body;
    };
    const Criterion criteria[] = {
        {1, "phase-mismatch recomposition", 5.0, c1_recomposition},
        {2, "conservation closure", 1.0, c2_closure},
        {3, "momentum vs thickness integral", 60.0, c3_amplitude_ladder},
        {4, "plane-integrated pair probability", 60.0, c4_plane_integral},
        {5, "linearization truncation order", 30.0, c5_truncation_order},
        {6, "closed form vs quadrature stage", 10.0, c6_closed_form},
        {7, "ring radius and width trends", 5.0, c7_ring_trends},
        {8, "stage discrepancy report", 10.0, c8_stage_report},
        {9, "quadrature exactness", 1.0, c9_quadrature},
        {10, "deterministic scenario output", 30.0,
         [&cli] { return c10_determinism(cli); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (pass && secs > c.time_limit) {
            pass = false;
            detail += " [exceeded " + num(c.time_limit) + " s budget]";
        }
        std::printf("%s criterion %d: %s (%s; %.2f s)\n", pass ? "PASS" : "FAIL",
                    c.id, c.name, detail.c_str(), secs);
        if (!pass) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
