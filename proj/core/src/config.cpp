#include "kerr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kerr/errors.hpp"

namespace kerr {

namespace {

constexpr double kDeg = M_PI / 180.0;
constexpr double kParaxialGateDeg = 15.0;
constexpr double kLambdaMin = 100e-9;   // 100 nm
constexpr double kLambdaMax = 10e-6;    // 10 um

void check_lambda(double v, const char* name, std::vector<std::string>& out) {
    if (!std::isfinite(v)) {
        out.push_back(std::string(name) + " must be finite");
    } else if (v < kLambdaMin || v > kLambdaMax) {
        out.push_back(std::string(name) + " out of range [100 nm, 10 um]");
    }
}

void check_theta(double v, const char* name, std::vector<std::string>& out) {
    if (!std::isfinite(v)) {
        out.push_back(std::string(name) + " must be finite");
    } else if (std::abs(v) >= kParaxialGateDeg * kDeg) {
        out.push_back(std::string(name) + " violates the paraxial gate (|theta| < 15 deg)");
    }
}

void check_positive(double v, const char* name, std::vector<std::string>& out) {
    if (!std::isfinite(v) || !(v > 0.0))
        out.push_back(std::string(name) + " must be positive");
}

}  // namespace

std::string to_string(Closure c) {
    switch (c) {
        case Closure::None: return "none";
        case Closure::SolveLambda4: return "solve_lambda4";
        case Closure::SolveSignalPair: return "solve_signal_pair";
    }
    return "none";
}

Closure closure_from_string(const std::string& s) {
    if (s == "none") return Closure::None;
    if (s == "solve_lambda4") return Closure::SolveLambda4;
    if (s == "solve_signal_pair") return Closure::SolveSignalPair;
    throw ValidationError("unknown closure mode '" + s +
                          "' (expected none, solve_lambda4 or solve_signal_pair)");
}

ValidationReport validate_config(const ExperimentConfig& cfg) {
    ValidationReport rep;
    check_lambda(cfg.lambda1, "lambda1", rep.violations);
    check_lambda(cfg.lambda2, "lambda2", rep.violations);
    check_lambda(cfg.lambda3, "lambda3", rep.violations);
    check_lambda(cfg.lambda4, "lambda4", rep.violations);
    check_theta(cfg.theta1, "theta1", rep.violations);
    check_theta(cfg.theta2, "theta2", rep.violations);
    check_theta(cfg.theta3, "theta3", rep.violations);
    check_theta(cfg.theta4, "theta4", rep.violations);
    check_positive(cfg.L, "L", rep.violations);
    check_positive(cfg.w3, "w3", rep.violations);
    check_positive(cfg.w4, "w4", rep.violations);
    check_positive(cfg.f, "f", rep.violations);
    if (rep.ok()) {
        // thin-crystal parameter L/(8 zR); the first-order stages assume it small
        const double tau = cfg.L * cfg.lambda4 / (8.0 * M_PI * cfg.w4 * cfg.w4);
        if (tau > 1e-2) {
            std::ostringstream os;
            os << "thin-crystal parameter tau=" << tau
               << " exceeds 1e-2; first-order stages are unreliable";
            rep.warnings.push_back(os.str());
        }
    }
    return rep;
}

double conservation_residual(const ExperimentConfig& cfg) {
    return std::cos(cfg.theta1) / cfg.lambda1 + std::cos(cfg.theta2) / cfg.lambda2 -
           std::cos(cfg.theta3) / cfg.lambda3 - std::cos(cfg.theta4) / cfg.lambda4;
}

double conservation_residual_rel(const ExperimentConfig& cfg) {
    const double t1 = std::cos(cfg.theta1) / cfg.lambda1;
    const double t2 = std::cos(cfg.theta2) / cfg.lambda2;
    const double t3 = std::cos(cfg.theta3) / cfg.lambda3;
    const double t4 = std::cos(cfg.theta4) / cfg.lambda4;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
    if (!(scale > 0.0)) return std::numeric_limits<double>::infinity();
    return std::abs((t1 + t2) - (t3 + t4)) / scale;
}

ExperimentConfig close_conservation(const ExperimentConfig& cfg) {
    ExperimentConfig out = cfg;
    switch (cfg.closure) {
        case Closure::None:
            throw ValidationError("close_conservation: closure mode is none");
        case Closure::SolveLambda4: {
            const double den = std::cos(cfg.theta1) / cfg.lambda1 +
                               std::cos(cfg.theta2) / cfg.lambda2 -
                               std::cos(cfg.theta3) / cfg.lambda3;
            if (!(den > 0.0))
                throw ValidationError(
                    "close_conservation: no physical lambda4 (nonpositive denominator)");
            out.lambda4 = std::cos(cfg.theta4) / den;
            break;
        }
        case Closure::SolveSignalPair: {
            out.theta2 = cfg.theta1;
            const double den = std::cos(cfg.theta3) / cfg.lambda3 +
                               std::cos(cfg.theta4) / cfg.lambda4;
            if (!(den > 0.0))
                throw ValidationError(
                    "close_conservation: no physical pair wavelength (nonpositive denominator)");
            out.lambda1 = out.lambda2 = 2.0 * std::cos(cfg.theta1) / den;
            break;
        }
    }
    return out;
}

namespace {

double require_number(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key))
        throw ValidationError("config: missing required key '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ValidationError("config: key '" + key + "' must be a number");
    return v.get<double>();
}

double optional_number(const nlohmann::json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ValidationError("config: key '" + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

    static const std::set<std::string> known = {
        "lambda1_nm", "lambda2_nm", "lambda3_nm", "lambda4_nm",
        "theta1_deg", "theta2_deg", "theta3_deg", "theta4_deg",
        "L_mm", "w3_mm", "w4_mm", "f_m", "closure"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw ValidationError("config: unknown key '" + it.key() + "'");
    }

    ExperimentConfig cfg;
    if (j.contains("closure")) {
        const auto& c = j.at("closure");
        if (!c.is_string())
            throw ValidationError("config: key 'closure' must be a string");
        cfg.closure = closure_from_string(c.get<std::string>());
    }

    const bool pair_solved = cfg.closure == Closure::SolveSignalPair;
    const bool l4_solved = cfg.closure == Closure::SolveLambda4;

    cfg.lambda1 = (pair_solved ? optional_number(j, "lambda1_nm", 0.0)
                               : require_number(j, "lambda1_nm")) * 1e-9;
    cfg.lambda2 = (pair_solved ? optional_number(j, "lambda2_nm", 0.0)
                               : require_number(j, "lambda2_nm")) * 1e-9;
    cfg.lambda3 = require_number(j, "lambda3_nm") * 1e-9;
    cfg.lambda4 = (l4_solved ? optional_number(j, "lambda4_nm", 0.0)
                             : require_number(j, "lambda4_nm")) * 1e-9;
    cfg.theta1 = require_number(j, "theta1_deg") * kDeg;
    cfg.theta2 = (pair_solved ? optional_number(j, "theta2_deg", 0.0)
                              : require_number(j, "theta2_deg")) * kDeg;
    cfg.theta3 = require_number(j, "theta3_deg") * kDeg;
    cfg.theta4 = require_number(j, "theta4_deg") * kDeg;
    cfg.L = require_number(j, "L_mm") * 1e-3;
    cfg.w3 = require_number(j, "w3_mm") * 1e-3;
    cfg.w4 = require_number(j, "w4_mm") * 1e-3;
    cfg.f = require_number(j, "f_m");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace kerr
