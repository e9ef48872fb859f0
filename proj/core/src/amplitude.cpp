#include "kerr/amplitude.hpp"

#include <cmath>

#include "kerr/errors.hpp"
#include "kerr/phasematch.hpp"
#include "kerr/sinc.hpp"

namespace kerr {

ScreenPoint make_screen_point(Vec2 r1, Vec2 r2, const DerivedParams& prm) {
    ScreenPoint pt;
    pt.r1 = r1;
    pt.r2 = r2;
    pt.x1 = norm(r1) / prm.w1;
    pt.x2 = norm(r2) / prm.w2;
    return pt;
}

ScreenPoint screen_point_scaled(double x1, double x2, const DerivedParams& prm) {
    return make_screen_point({x1 * prm.w1, 0.0}, {x2 * prm.w2, 0.0}, prm);
}

double pump_momentum_profile(int which, Vec2 kperp, const ExperimentConfig& cfg,
                             const DerivedParams& prm) {
    double w = 0.0, q = 0.0;
    if (which == 3) {
        w = cfg.w3;
        q = prm.q3;
    } else if (which == 4) {
        w = cfg.w4;
        q = prm.q4;
    } else {
        throw ValidationError("pump_momentum_profile: which must be 3 or 4");
    }
    const Vec2 d{kperp.x - q, kperp.y};
    return std::sqrt(2.0 * M_PI) * w * std::exp(-w * w * norm2(d));
}

Vec2 lens_map(Vec2 r, double lambda, double f) {
    const double c = 2.0 * M_PI / (lambda * f);
    return {c * r.x, c * r.y};
}

StageCoefficients stage_coefficients(double t, const ExperimentConfig& cfg,
                                     const DerivedParams& prm) {
    const double sec1 = 1.0 / std::cos(cfg.theta1);
    const double sec2 = 1.0 / std::cos(cfg.theta2);
    const double sec4 = 1.0 / std::cos(cfg.theta4);
    const double tt = t * prm.tau;

    StageCoefficients sc;
    sc.alpha = Complex(1.0, -tt * (sec4 - (cfg.lambda1 / cfg.lambda4) * sec1));
    sc.beta = Complex(1.0, -tt * (sec4 - (cfg.lambda2 / cfg.lambda4) * sec2));
    sc.gamma = Complex(1.0, -tt * sec4);
    sc.delta = Complex(1.0 + prm.s, -tt * prm.a);
    const Complex gg = sc.gamma * sc.gamma / sc.delta;
    sc.A = sc.alpha - gg;
    sc.B = sc.beta - gg;
    sc.C = sc.gamma - gg;
    return sc;
}

Amplitude amplitude_s0(const ScreenPoint& pt, const ExperimentConfig& cfg,
                       const DerivedParams& prm, double tol) {
    const Vec2 k1 = lens_map(pt.r1, cfg.lambda1, cfg.f);
    const Vec2 k2 = lens_map(pt.r2, cfg.lambda2, cfg.f);
    const Vec2 K = k1 + k2;

    // consE gate lives in delta_kz_crit; reuse it for the check, then keep
    // the precomputed form for the hot loop
    (void)delta_kz_crit(cfg, prm, {0, 0}, {0, 0}, {0, 0});
    const MismatchForm form = mismatch_form(cfg, prm);

    const double w3sq = cfg.w3 * cfg.w3;
    const double w4sq = cfg.w4 * cfg.w4;
    const double wsq = w3sq + w4sq;
    // product of the two pump Gaussians peaks where the weighted centers meet
    const Vec2 q3v{prm.q3, 0.0};
    const Vec2 q4v{prm.q4, 0.0};
    const Vec2 center = (1.0 / wsq) * (w3sq * q3v + w4sq * (K - q4v));
    const double halfL = 0.5 * cfg.L;

    auto integrand = [&](Vec2 k3) -> Complex {
        const Vec2 k4 = K - k3;
        const double m3 = pump_momentum_profile(3, k3, cfg, prm);
        const double m4 = pump_momentum_profile(4, k4, cfg, prm);
        const double mis = form(k1, k2, k3);
        return Complex(m3 * m4 * sinc(halfL * mis), 0.0);
    };

    const QuadResult r =
        integrate_gaussian_plane(integrand, center, std::sqrt(wsq), tol);
    const double pref =
        1.0 / (cfg.lambda1 * cfg.lambda2 * cfg.f * cfg.f * 4.0 * M_PI * M_PI);
    return {pref * r.value, AmplitudeStage::S0};
}

Amplitude amplitude_s1(const ScreenPoint& pt, const ExperimentConfig& cfg,
                       const DerivedParams& prm, const QuadratureRule& rule) {
    const double cross = dot(pt.r1, pt.r2) / (prm.w1 * prm.w2);
    const double x1sq = pt.x1 * pt.x1;
    const double x2sq = pt.x2 * pt.x2;
    const double halfLTheta = 0.5 * cfg.L * prm.Theta;

    Complex acc{0.0, 0.0};
    for (int i = 0; i < rule.n; ++i) {
        const double t = rule.nodes[i];
        const StageCoefficients sc = stage_coefficients(t, cfg, prm);
        const Complex Q =
            -sc.A * x1sq - sc.B * x2sq - 2.0 * sc.C * cross;
        acc += rule.weights[i] *
               std::exp(Complex(0.0, halfLTheta * t) + Q) / sc.delta;
    }
    return {acc / (cfg.w4 * cfg.w4), AmplitudeStage::S1};
}

}  // namespace kerr
