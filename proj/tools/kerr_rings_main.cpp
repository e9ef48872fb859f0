// kerr-rings: radial detection-probability profiles of photon pairs from
// four-wave mixing in a Kerr slab, across the full approximation ladder
// (exact momentum integral, thickness-parameter integral, linearized
// integral, closed forms).

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kerr/amplitude.hpp"
#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/emit.hpp"
#include "kerr/errors.hpp"
#include "kerr/probability.hpp"
#include "kerr/profile.hpp"
#include "kerr/quadrature.hpp"
#include "kerr/sinc.hpp"

namespace {

using namespace kerr;

struct RunOptions {
    std::string config_path;
    std::string scenario_name;
    std::string stages = "s1,s2,s3p,s3r";
    std::string out_dir = ".";
    std::string format = "csv";
    int points = 2001;
    double xmax = 0.0;
    bool raw_scale = false;
    bool report = false;
    bool oracle_checks = false;
    bool fig3_symmetric = false;
};

std::vector<Stage> parse_stages(const std::string& csv) {
    std::vector<Stage> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const Stage s = stage_from_flag(tok);
        bool dup = false;
        for (Stage have : out) dup = dup || have == s;
        if (!dup) out.push_back(s);
    }
    if (out.empty())
        throw ValidationError("run: --stages selected no stage");
    return out;
}

// quick internal consistency checks across the ladder; failures exit 3
void oracle_checks() {
    const QuadratureRule& r64 = gauss_legendre(64);

    // two-parameter quadrature against the closed phase integral
    const double ref = 4.0 * sinc(1.0) * sinc(1.0);
    const QuadResult q = integrate_box2(
        [](double t1, double t2) {
            return std::exp(Complex(0.0, t1 - t2));
        },
        r64);
    if (std::abs(q.value - Complex(ref, 0.0)) > 1e-10)
        throw NumericalError("oracle check failed: phase integral vs closed value");
    std::cout << "oracle check quadrature: ok\n";

    // direct momentum integral against the thickness-parameter integral on
    // the collinear degenerate set (proportionality, complex constant free)
    const ScenarioSet fig2 = scenario("fig2");
    {
        const ExperimentConfig& cfg = fig2.entries.front().cfg;
        const DerivedParams prm = derive_params(cfg);
        const double xs[3][2] = {{0.0, 0.0}, {0.6, 0.0}, {1.0, 0.5}};
        Complex ratio{0.0, 0.0};
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const ScreenPoint pt = screen_point_scaled(xs[i][0], xs[i][1], prm);
            const Complex a0 = amplitude_s0(pt, cfg, prm, 1e-6).value;
            const Complex a1 = amplitude_s1(pt, cfg, prm, r64).value;
            if (i == 0)
                ratio = a0 / a1;
            else
                worst = std::max(worst, std::abs(a0 - ratio * a1) / std::abs(a0));
        }
        if (worst > 1e-3)
            throw NumericalError("oracle check failed: momentum vs parameter integral");
        std::cout << "oracle check amplitude ladder: ok\n";
    }

    // linearized quadrature stage against its closed form on the ring config
    {
        const ExperimentConfig& cfg = fig2.entries[2].cfg;   // 1 deg pair tilt
        const DerivedParams prm = derive_params(cfg);
        const QuadratureRule& r128 = gauss_legendre(128);
        const double ring = std::sqrt(prm.R0sq);
        double worst = 0.0;
        for (double x : {0.0, 0.5 * ring, ring, 1.1 * ring, 1.2 * ring}) {
            const double s2 = prob_s2(x, cfg, prm, r128).value;
            const double s3 = prob_s3_reduced(x, cfg, prm).value;
            worst = std::max(worst, std::abs(s2 - s3) / std::abs(s2));
        }
        if (worst > 1e-6)
            throw NumericalError("oracle check failed: linearized stage vs closed form");
        std::cout << "oracle check closed form: ok\n";
    }
}

int do_run(const RunOptions& o) {
    ScenarioSet set;
    if (!o.scenario_name.empty()) {
        set = scenario(o.scenario_name, Fig3Options{o.fig3_symmetric});
    } else {
        ExperimentConfig cfg = load_config(o.config_path);
        if (cfg.closure != Closure::None) cfg = close_conservation(cfg);
        const ValidationReport rep = validate_config(cfg);
        if (!rep.ok()) {
            for (const auto& v : rep.violations) std::cerr << "config: " << v << "\n";
            throw ValidationError("run: invalid configuration");
        }
        set = scenario_from_config(cfg);
    }

    if (o.oracle_checks) oracle_checks();

    const std::vector<Stage> stages = parse_stages(o.stages);
    const EmitFormat fmt = format_from_string(o.format);
    const char* ext = fmt == EmitFormat::Csv ? ".csv" : ".json";
    const QuadratureRule& rule = gauss_legendre(64);
    const int threads = resolve_thread_cap();
    GridSpec grid;
    grid.npoints = o.points;
    grid.xmax = o.xmax > 0.0 ? o.xmax : set.default_xmax;

    const std::filesystem::path out_dir(o.out_dir);
    for (const ScenarioEntry& entry : set.entries) {
        const DerivedParams prm = derive_params(entry.cfg);
        for (const auto& w : validate_config(entry.cfg).warnings)
            std::cerr << "warning: " << w << "\n";

        Profile p = scan_profile(entry.cfg, prm, stages, grid, rule,
                                 o.raw_scale ? Normalization::Raw
                                             : Normalization::PeakUnit,
                                 threads);
        p.scenario = set.name;
        p.label = entry.label;

        const std::string base = set.name == "custom"
                                     ? entry.label
                                     : set.name + "_" + entry.label;
        const std::string path = (out_dir / (base + ext)).string();
        emit_file(p, path, fmt);
        std::cout << "wrote " << path << "\n";

        if (o.report) {
            const DiscrepancyReport rep = stage_report(entry.cfg, prm, p.x, rule);
            const std::string rpath =
                (out_dir / (base + std::string("_report") + ext)).string();
            emit_file(rep, rpath, fmt);
            std::cout << "wrote " << rpath << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial pair-detection profiles for four-wave mixing in a Kerr slab"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "scan profiles and write data files");
    RunOptions o;
    CLI::Option* cfg_opt =
        run->add_option("--config", o.config_path, "JSON configuration file")
            ->check(CLI::ExistingFile);
    CLI::Option* sc_opt =
        run->add_option("--scenario", o.scenario_name, "built-in scenario set")
            ->check(CLI::IsMember({"fig2", "fig3"}));
    cfg_opt->excludes(sc_opt);
    sc_opt->excludes(cfg_opt);
    run->add_option("--stages", o.stages,
                    "comma-separated stages: s1,s2,s3p,s3r (default all)");
    run->add_option("--points", o.points, "grid points (>= 16, default 2001)")
        ->check(CLI::Range(16, 10000000));
    run->add_option("--xmax", o.xmax, "scan frame in scaled radius units")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", o.out_dir, "output directory (default .)");
    run->add_option("--format", o.format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--raw-scale", o.raw_scale,
                  "emit raw values instead of peak-normalized");
    run->add_flag("--report", o.report, "also write a stage discrepancy report");
    run->add_flag("--oracle-checks", o.oracle_checks,
                  "run cross-stage consistency checks after the scan");
    run->add_flag("--fig3-symmetric-pumps", o.fig3_symmetric,
                  "fig3 variant with both pumps tilted together");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (o.config_path.empty() && o.scenario_name.empty()) {
        std::cerr << "run: one of --config or --scenario is required\n";
        return 2;
    }

    try {
        return do_run(o);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
