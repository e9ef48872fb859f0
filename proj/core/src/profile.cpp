#include "kerr/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "kerr/errors.hpp"
#include "prob_kernels.hpp"

namespace kerr {

namespace {

constexpr double kDeg = M_PI / 180.0;

// deg value rendered as a file-name friendly token: 0.5 -> "0p5"
std::string angle_token(double deg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", deg);
    for (char* c = buf; *c; ++c)
        if (*c == '.') *c = 'p';
    return buf;
}

ExperimentConfig scenario_base() {
    ExperimentConfig cfg;
    cfg.lambda3 = cfg.lambda4 = 633e-9;
    cfg.L = 2e-3;
    cfg.w3 = cfg.w4 = 1e-3;
    cfg.f = 1.0;   // placeholder until the w2-normalizing focal length is set
    cfg.closure = Closure::SolveSignalPair;
    return cfg;
}

// close the pair constraint, then pick f so the beam-2 scale width w2 is
// exactly 1 mm (profiles over scaled radii are f-independent; this keeps the
// emitted metadata tidy)
ExperimentConfig finalize_entry(ExperimentConfig cfg) {
    ExperimentConfig closed = close_conservation(cfg);
    closed.f = 2.0 * M_PI * closed.w3 * 1e-3 / closed.lambda2;
    return closed;
}

double ring_estimate(const ExperimentConfig& cfg, const DerivedParams& prm) {
    const double kappa = prm.c3 + prm.c4 - 2.0 * prm.c2;
    const double reduced =
        prm.tau * kappa > 0.0
            ? 0.5 * cfg.L * prm.Theta / (prm.tau * kappa)
            : 0.0;
    return std::max({prm.R0sq, reduced, 0.0});
}

}  // namespace

double default_xmax(const ExperimentConfig& cfg, const DerivedParams& prm) {
    const double ring = ring_estimate(cfg, prm);
    return ring > 0.0 ? 1.5 * std::sqrt(ring) : 4.0;
}

ScenarioSet scenario(const std::string& name, const Fig3Options& opt) {
    ScenarioSet set;
    set.name = name;
    if (name == "fig2") {
        for (double deg : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            ExperimentConfig cfg = scenario_base();
            cfg.theta1 = cfg.theta2 = deg * kDeg;
            set.entries.push_back({"theta1_" + angle_token(deg), finalize_entry(cfg)});
        }
    } else if (name == "fig3") {
        for (double deg : {0.0, 0.5, 1.0, 1.5}) {
            ExperimentConfig cfg = scenario_base();
            cfg.theta1 = cfg.theta2 = 1.0 * kDeg;
            cfg.theta4 = deg * kDeg;
            cfg.theta3 = opt.symmetric_pumps ? cfg.theta4 : 0.0;
            set.entries.push_back({"theta4_" + angle_token(deg), finalize_entry(cfg)});
        }
    } else {
        throw ValidationError("scenario: unknown name '" + name +
                              "' (expected fig2 or fig3)");
    }
    double ring = 0.0;
    for (const auto& e : set.entries)
        ring = std::max(ring, ring_estimate(e.cfg, derive_params(e.cfg)));
    set.default_xmax = ring > 0.0 ? 1.5 * std::sqrt(ring) : 4.0;
    return set;
}

ScenarioSet scenario_from_config(const ExperimentConfig& cfg) {
    ScenarioSet set;
    set.name = "custom";
    set.entries.push_back({"custom", cfg});
    set.default_xmax = default_xmax(cfg, derive_params(cfg));
    return set;
}

namespace {

// contiguous-range fan-out; per-index writes keep results independent of the
// thread count
void parallel_for(size_t n, int nthreads, const std::function<void(size_t)>& body) {
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(n ? n : 1)));
    if (nthreads == 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    const size_t chunk = (n + nthreads - 1) / nthreads;
    auto run = [&body](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) body(i);
    };
    for (int t = 1; t < nthreads; ++t) {
        const size_t b = std::min(n, chunk * t);
        const size_t e = std::min(n, chunk * (t + 1));
        if (b < e) pool.emplace_back(run, b, e);
    }
    run(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
}

}  // namespace

Profile scan_profile(const ExperimentConfig& cfg, const DerivedParams& prm,
                     const std::vector<Stage>& stages, const GridSpec& grid,
                     const QuadratureRule& rule, Normalization norm, int nthreads) {
    if (grid.npoints < 16)
        throw ValidationError("scan_profile: npoints must be >= 16");
    if (!(grid.xmax > 0.0))
        throw ValidationError("scan_profile: xmax must be positive");
    if (stages.empty())
        throw ValidationError("scan_profile: at least one stage required");

    Profile p;
    p.normalization = norm;
    const int n = grid.npoints;
    p.x.resize(n);
    for (int i = 0; i < n; ++i) p.x[i] = grid.xmax * i / (n - 1);

    auto wants = [&stages](Stage s) {
        return std::find(stages.begin(), stages.end(), s) != stages.end();
    };
    for (Stage s : {Stage::S1, Stage::S2, Stage::S3Printed, Stage::S3Reduced})
        if (wants(s)) {
            p.stages.push_back(s);
            p.values[s].assign(n, 0.0);
        }

    std::optional<detail::S1Kernel> k1;
    std::optional<detail::S2Kernel> k2;
    if (p.values.count(Stage::S1)) k1.emplace(cfg, prm, rule);
    if (p.values.count(Stage::S2)) k2.emplace(cfg, prm, rule);

    // raw output slots resolved before the fan-out; workers only touch
    // distinct indices of preallocated vectors
    auto slot = [&p](Stage s) -> double* {
        auto v = p.values.find(s);
        return v == p.values.end() ? nullptr : v->second.data();
    };
    double* out_s1 = slot(Stage::S1);
    double* out_s2 = slot(Stage::S2);
    double* out_s3p = slot(Stage::S3Printed);
    double* out_s3r = slot(Stage::S3Reduced);

    std::mutex err_mu;
    size_t err_index = std::numeric_limits<size_t>::max();
    std::string err_msg;

    auto body = [&](size_t i) {
        try {
            const double x = p.x[i];
            if (out_s1) out_s1[i] = k1->eval(x);
            if (out_s2) out_s2[i] = k2->eval(x);
            if (out_s3p) out_s3p[i] = prob_s3_printed(x, cfg, prm).value;
            if (out_s3r) out_s3r[i] = prob_s3_reduced(x, cfg, prm).value;
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (i < err_index) {
                err_index = i;
                err_msg = e.what();
            }
        }
    };
    parallel_for(static_cast<size_t>(n), nthreads, body);

    if (err_index != std::numeric_limits<size_t>::max()) {
        std::ostringstream os;
        os << "scan_profile: stage evaluation failed at x=" << p.x[err_index]
           << ": " << err_msg;
        throw NumericalError(os.str());
    }

    for (Stage s : p.stages) {
        auto& v = p.values[s];
        const double peak = *std::max_element(v.begin(), v.end());
        p.raw_peak[s] = peak;
        if (norm == Normalization::PeakUnit && peak > 0.0)
            for (double& val : v) val /= peak;
    }
    return p;
}

namespace {

// linear-interpolated crossing of level inside [x0,x1]; returns x at the level
double cross_at(double x0, double v0, double x1, double v1, double level) {
    const double den = v1 - v0;
    if (std::abs(den) < 1e-300) return x1;
    const double t = (level - v0) / den;
    return x0 + t * (x1 - x0);
}

}  // namespace

PeakSet find_peaks(const Profile& p, Stage stage, double prominence) {
    auto it = p.values.find(stage);
    if (it == p.values.end())
        throw ValidationError("find_peaks: stage not present in the profile");
    const std::vector<double>& v = it->second;
    const std::vector<double>& xs = p.x;
    PeakSet out;
    const size_t n = v.size();
    if (n < 3) return out;

    const double gmax = *std::max_element(v.begin(), v.end());
    const double thr = prominence * gmax;

    std::vector<size_t> cand;
    if (v[0] > v[1]) cand.push_back(0);
    for (size_t i = 1; i + 1 < n; ++i) {
        if (v[i] >= v[i - 1] && v[i] >= v[i + 1] &&
            (v[i] > v[i - 1] || v[i] > v[i + 1]))
            cand.push_back(i);
    }
    if (v[n - 1] > v[n - 2]) cand.push_back(n - 1);

    // collapse plateau twins (equal neighbors both qualifying)
    std::vector<size_t> keep;
    for (size_t idx : cand) {
        if (!keep.empty() && idx == keep.back() + 1 && v[idx] == v[keep.back()])
            continue;
        if (v[idx] >= thr) keep.push_back(idx);
    }

    for (size_t i : keep) {
        Peak pk;
        double d = 0.0;
        if (i > 0 && i + 1 < n) {
            const double den = v[i - 1] - 2.0 * v[i] + v[i + 1];
            if (std::abs(den) > 1e-300) {
                d = 0.5 * (v[i - 1] - v[i + 1]) / den;
                d = std::clamp(d, -0.5, 0.5);
            }
            const double h = xs[1] - xs[0];
            pk.radius = xs[i] + d * h;
            pk.height = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * d;
        } else {
            pk.radius = xs[i];
            pk.height = v[i];
        }

        const double half = 0.5 * pk.height;
        double left = std::numeric_limits<double>::quiet_NaN();
        double right = std::numeric_limits<double>::quiet_NaN();
        for (size_t j = i; j > 0; --j) {
            if (v[j - 1] <= half && v[j] >= half) {
                left = cross_at(xs[j - 1], v[j - 1], xs[j], v[j], half);
                break;
            }
        }
        for (size_t j = i; j + 1 < n; ++j) {
            if (v[j + 1] <= half && v[j] >= half) {
                right = cross_at(xs[j], v[j], xs[j + 1], v[j + 1], half);
                break;
            }
        }
        const bool has_l = !std::isnan(left);
        const bool has_r = !std::isnan(right);
        if (has_l && has_r)
            pk.fwhm = right - left;
        else if (has_r)
            pk.fwhm = 2.0 * (right - pk.radius);   // mirrored one-sided width
        else if (has_l)
            pk.fwhm = 2.0 * (pk.radius - left);
        else
            pk.fwhm = 0.0;
        out.peaks.push_back(pk);
    }
    return out;
}

int resolve_thread_cap() {
    if (const char* env = std::getenv("KERR_RINGS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && *env != '\0' && v >= 1)
            return static_cast<int>(std::min<long>(v, 64));
        std::fprintf(stderr,
                     "warning: KERR_RINGS_THREADS='%s' ignored (want an integer >= 1)\n",
                     env);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<int>(std::min(hw, 8u));
}

}  // namespace kerr
