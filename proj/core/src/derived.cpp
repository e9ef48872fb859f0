#include "kerr/derived.hpp"

#include <cmath>
#include <sstream>

#include "kerr/errors.hpp"

namespace kerr {

DerivedParams derive_params(const ExperimentConfig& cfg) {
    const ValidationReport rep = validate_config(cfg);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "derive_params: invalid config:";
        for (const auto& v : rep.violations) os << " [" << v << "]";
        throw ValidationError(os.str());
    }

    DerivedParams p;
    const double twopi = 2.0 * M_PI;
    p.w1 = cfg.f * cfg.lambda1 / (twopi * cfg.w4);
    p.w2 = cfg.f * cfg.lambda2 / (twopi * cfg.w3);
    const double ratio = cfg.w3 / cfg.w4;
    p.s = ratio * ratio;
    p.zR = M_PI * cfg.w4 * cfg.w4 / cfg.lambda4;
    p.tau = cfg.L / (8.0 * p.zR);

    const double sec1 = 1.0 / std::cos(cfg.theta1);
    const double sec2 = 1.0 / std::cos(cfg.theta2);
    const double sec3 = 1.0 / std::cos(cfg.theta3);
    const double sec4 = 1.0 / std::cos(cfg.theta4);
    p.a = sec4 + (cfg.lambda3 / cfg.lambda4) * sec3;

    auto tilt = [](double theta, double lambda) {
        const double sn = std::sin(theta);
        return M_PI * sn * sn / (lambda * std::cos(theta));
    };
    p.Theta = tilt(cfg.theta1, cfg.lambda1) + tilt(cfg.theta2, cfg.lambda2) -
              tilt(cfg.theta3, cfg.lambda3) - tilt(cfg.theta4, cfg.lambda4);

    const double onep = 1.0 + p.s;
    p.c1 = p.s / onep;
    p.c2 = sec4 * (1.0 - p.s * p.s) / (onep * onep);
    p.c3 = p.c2 + (cfg.lambda1 / cfg.lambda4) * sec1;
    p.c4 = p.c2 + (cfg.lambda2 / cfg.lambda4) * sec2;
    const double shift = p.a / (onep * onep);
    p.c2_lin = p.c2 - shift;
    p.c3_lin = p.c3 - shift;
    p.c4_lin = p.c4 - shift;

    p.R0sq = 0.25 * cfg.L * p.Theta * std::cos(cfg.theta4);
    p.q3 = twopi / cfg.lambda3 * std::sin(cfg.theta3);
    p.q4 = twopi / cfg.lambda4 * std::sin(cfg.theta4);
    return p;
}

}  // namespace kerr
