#pragma once

// Shared node-pair kernels for the two quadrature probability stages.
// Building one kernel per (config, rule) amortizes the coefficient work over
// a whole profile scan; evaluation per x is a flat deterministic sum.

#include <cmath>
#include <vector>

#include "kerr/amplitude.hpp"
#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/errors.hpp"
#include "kerr/quadrature.hpp"

namespace kerr::detail {

// residual gate shared by both kernels: tolerate cancellation at profile
// nulls by adding an absolute floor tied to the summed term magnitudes
inline double check_real(const Complex& acc, double mass, const char* who) {
    if (std::abs(acc.imag()) > 1e-10 * std::abs(acc.real()) + 1e-13 * mass)
        throw NumericalError(std::string(who) +
                             ": Hermitian-symmetry imaginary residual out of bounds");
    return acc.real();
}

// exact-coefficient integrand, integrated exactly over the detection plane of
// beam 2: exp(i L Theta dt/2 - (U - W^2/V) x^2) / (delta1 conj(delta2) V)
class S1Kernel {
  public:
    S1Kernel(const ExperimentConfig& cfg, const DerivedParams& prm,
             const QuadratureRule& rule) {
        const double halfLTheta = 0.5 * cfg.L * prm.Theta;
        const int n = rule.n;
        std::vector<StageCoefficients> sc(n);
        for (int i = 0; i < n; ++i) sc[i] = stage_coefficients(rule.nodes[i], cfg, prm);
        terms_.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Complex U = sc[i].A + std::conj(sc[j].A);
                const Complex V = sc[i].B + std::conj(sc[j].B);
                const Complex W = sc[i].C + std::conj(sc[j].C);
                if (std::abs(V) < 1e-9)
                    throw NumericalError("prob_s1: |V| below 1e-9 on the node grid");
                const double w = rule.weights[i] * rule.weights[j];
                const double dt = rule.nodes[i] - rule.nodes[j];
                Term t;
                t.e0 = w * std::exp(Complex(0.0, halfLTheta * dt)) /
                       (sc[i].delta * std::conj(sc[j].delta) * V);
                t.abs_e0 = std::abs(t.e0);
                t.g = U - W * W / V;
                terms_.push_back(t);
            }
        }
    }

    double eval(double x) const {
        const double x2 = x * x;
        Complex acc{0.0, 0.0};
        double mass = 0.0;
        for (const Term& t : terms_) {
            const double er = std::exp(-t.g.real() * x2);
            acc += t.e0 * std::polar(er, -t.g.imag() * x2);
            mass += t.abs_e0 * er;
        }
        return check_real(acc, mass, "prob_s1");
    }

  private:
    struct Term {
        Complex e0;
        double abs_e0 = 0.0;
        Complex g;
    };
    std::vector<Term> terms_;
};

// fully linearized integrand: C0 (1 + i tau b dt) exp(i phi(x) dt)
class S2Kernel {
  public:
    S2Kernel(const ExperimentConfig& cfg, const DerivedParams& prm,
             const QuadratureRule& rule) {
        halfLTheta_ = 0.5 * cfg.L * prm.Theta;
        tau_kappa_ = prm.tau * (prm.c3 + prm.c4 - 2.0 * prm.c2);
        const double C0 =
            1.0 / ((1.0 + prm.s) * (1.0 + prm.s) * 2.0 * prm.c1);
        const double b = prm.a / (1.0 + prm.s) - prm.c4_lin / (2.0 * prm.c1);
        const int n = rule.n;
        terms_.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double w = rule.weights[i] * rule.weights[j];
                Term t;
                t.dt = rule.nodes[i] - rule.nodes[j];
                t.pref = w * C0 * Complex(1.0, prm.tau * b * t.dt);
                t.abs_pref = std::abs(t.pref);
                terms_.push_back(t);
            }
        }
    }

    double eval(double x) const {
        const double phi = halfLTheta_ - tau_kappa_ * x * x;
        Complex acc{0.0, 0.0};
        double mass = 0.0;
        for (const Term& t : terms_) {
            acc += t.pref * std::polar(1.0, phi * t.dt);
            mass += t.abs_pref;
        }
        return check_real(acc, mass, "prob_s2");
    }

  private:
    struct Term {
        double dt = 0.0;
        Complex pref;
        double abs_pref = 0.0;
    };
    std::vector<Term> terms_;
    double halfLTheta_ = 0.0;
    double tau_kappa_ = 0.0;
};

}  // namespace kerr::detail
