#include "kerr/phasematch.hpp"

#include <cmath>
#include <sstream>

#include "kerr/errors.hpp"

namespace kerr {

double kz_exact(double lambda, Vec2 kperp) {
    const double k0 = 2.0 * M_PI / lambda;
    const double t2 = norm2(kperp);
    if (t2 >= k0 * k0)
        throw ValidationError("kz_exact: evanescent input, |kperp| >= 2 pi/lambda");
    return std::sqrt(k0 * k0 - t2);
}

double kz_paraxial(double lambda, double theta, Vec2 kperp) {
    if (std::abs(theta) >= 15.0 * M_PI / 180.0)
        throw ValidationError("kz_paraxial: theta violates the paraxial gate (|theta| < 15 deg)");
    const double k0 = 2.0 * M_PI / lambda;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return k0 * ct - 0.5 * (norm2(kperp) / (k0 * ct) - k0 * st * st / ct);
}

MismatchForm mismatch_form(const ExperimentConfig& cfg, const DerivedParams& prm) {
    const double sec1 = 1.0 / std::cos(cfg.theta1);
    const double sec2 = 1.0 / std::cos(cfg.theta2);
    const double sec3 = 1.0 / std::cos(cfg.theta3);
    const double sec4 = 1.0 / std::cos(cfg.theta4);
    const double inv4pi = 1.0 / (4.0 * M_PI);
    MismatchForm m;
    m.a1 = (cfg.lambda4 * sec4 - cfg.lambda1 * sec1) * inv4pi;
    m.a2 = (cfg.lambda4 * sec4 - cfg.lambda2 * sec2) * inv4pi;
    m.a3 = (cfg.lambda3 * sec3 + cfg.lambda4 * sec4) * inv4pi;
    m.cross = cfg.lambda4 * sec4 / (2.0 * M_PI);
    m.Theta = prm.Theta;
    return m;
}

MismatchBreakdown delta_kz_crit(const ExperimentConfig& cfg, const DerivedParams& prm,
                                Vec2 k1, Vec2 k2, Vec2 k3) {
    const double rel = conservation_residual_rel(cfg);
    if (!(rel <= 1e-6)) {
        std::ostringstream os;
        os << "delta_kz_crit: conservation residual " << rel
           << " (relative) exceeds 1e-6; apply close_conservation first";
        throw ValidationError(os.str());
    }
    const MismatchForm m = mismatch_form(cfg, prm);
    MismatchBreakdown out;
    out.quadratic_part = m.a1 * norm2(k1) + m.a2 * norm2(k2) + m.a3 * norm2(k3) +
                         m.cross * (dot(k1, k2) - dot(k1, k3) - dot(k2, k3));
    out.angle_part = m.Theta;
    out.total = out.quadratic_part + out.angle_part;
    return out;
}

}  // namespace kerr
