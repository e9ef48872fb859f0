#include "kerr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "kerr/errors.hpp"

namespace kerr {

namespace {

QuadratureRule make_rule(int n) {
    QuadratureRule r;
    r.n = n;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);
    if (n == 1) {
        r.weights[0] = 2.0;
        return r;
    }
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // root i counted from +1 downward; standard initial guess
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / pp;
            z -= step;
            if (std::abs(step) <= 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.nodes[n - 1 - i] = z;
        r.nodes[i] = -z;          // mirror for exact symmetry
        r.weights[n - 1 - i] = w;
        r.weights[i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

// shared cache; map keeps rule addresses stable
const QuadratureRule& cached_rule(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(make_rule(n));
    return *slot;
}

Complex tensor_sum(const std::function<Complex(double, double)>& f,
                   const QuadratureRule& r, double* abs_mass) {
    Complex acc{0.0, 0.0};
    double mass = 0.0;
    for (int i = 0; i < r.n; ++i) {
        for (int j = 0; j < r.n; ++j) {
            const Complex v = f(r.nodes[i], r.nodes[j]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericalError("integrate_box2: non-finite integrand sample");
            const double w = r.weights[i] * r.weights[j];
            acc += w * v;
            mass += std::abs(w * v);
        }
    }
    if (abs_mass) *abs_mass = mass;
    return acc;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 2 || n > 512)
        throw ValidationError("gauss_legendre: order must be in [2, 512], got " +
                              std::to_string(n));
    return cached_rule(n);
}

QuadResult integrate_box2(const std::function<Complex(double, double)>& f,
                          const QuadratureRule& rule) {
    if (rule.n < 1) throw ValidationError("integrate_box2: empty rule");
    QuadResult out;
    out.value = tensor_sum(f, rule, &out.abs_mass);
    const QuadratureRule& half = cached_rule(std::max(1, rule.n / 2));
    out.error_estimate = std::abs(out.value - tensor_sum(f, half, nullptr));
    out.evaluations = static_cast<std::int64_t>(rule.n) * rule.n +
                      static_cast<std::int64_t>(half.n) * half.n;
    return out;
}

namespace {

struct Panel {
    double x0, x1, y0, y1;
    Complex val;       // 8x8 estimate
    double err;        // |8x8 - 4x4|
    double mass;       // sum |w*f| on the 8x8 rule
};

constexpr std::int64_t kPlaneBudget = 10'000'000;

Panel eval_panel(const std::function<Complex(Vec2)>& f,
                 double x0, double x1, double y0, double y1,
                 std::int64_t* evals) {
    const QuadratureRule& fine = cached_rule(8);
    const QuadratureRule& coarse = cached_rule(4);
    const double hx = 0.5 * (x1 - x0), cx = 0.5 * (x0 + x1);
    const double hy = 0.5 * (y1 - y0), cy = 0.5 * (y0 + y1);
    const double jac = hx * hy;

    auto run = [&](const QuadratureRule& r, double* mass) {
        Complex acc{0.0, 0.0};
        double m = 0.0;
        for (int i = 0; i < r.n; ++i) {
            for (int j = 0; j < r.n; ++j) {
                const Vec2 p{cx + hx * r.nodes[i], cy + hy * r.nodes[j]};
                const Complex v = f(p);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw NumericalError("integrate_gaussian_plane: non-finite integrand sample");
                const double w = jac * r.weights[i] * r.weights[j];
                acc += w * v;
                m += std::abs(w * v);
            }
        }
        if (mass) *mass = m;
        return acc;
    };

    Panel p{x0, x1, y0, y1, {}, 0.0, 0.0};
    p.val = run(fine, &p.mass);
    p.err = std::abs(p.val - run(coarse, nullptr));
    *evals += 64 + 16;
    return p;
}

}  // namespace

QuadResult integrate_gaussian_plane(const std::function<Complex(Vec2)>& f,
                                    Vec2 center, double decay_width, double tol) {
    if (!(decay_width > 0.0))
        throw ValidationError("integrate_gaussian_plane: decay_width must be positive");
    if (!(tol > 0.0))
        throw ValidationError("integrate_gaussian_plane: tol must be positive");

    const double R = 6.0 / decay_width;   // tail mass < 1e-15 of the Gaussian bound
    std::int64_t evals = 0;
    std::vector<Panel> panels;
    const int n0 = 4;
    panels.reserve(n0 * n0);
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n0; ++j) {
            const double x0 = center.x - R + 2.0 * R * i / n0;
            const double x1 = center.x - R + 2.0 * R * (i + 1) / n0;
            const double y0 = center.y - R + 2.0 * R * j / n0;
            const double y1 = center.y - R + 2.0 * R * (j + 1) / n0;
            panels.push_back(eval_panel(f, x0, x1, y0, y1, &evals));
        }
    }

    for (;;) {
        Complex total{0.0, 0.0};
        double errsum = 0.0, mass = 0.0, errmax = 0.0;
        for (const Panel& p : panels) {
            total += p.val;
            errsum += p.err;
            mass += p.mass;
            errmax = std::max(errmax, p.err);
        }
        const double scale = std::max(std::abs(total), 1e-300);
        if (errsum <= tol * scale || errsum == 0.0) {
            QuadResult out;
            out.value = total;
            out.error_estimate = errsum;
            out.evaluations = evals;
            out.abs_mass = mass;
            return out;
        }
        if (evals > kPlaneBudget)
            throw NumericalError(
                "integrate_gaussian_plane: evaluation budget exhausted before "
                "reaching tolerance");

        // split every panel holding a sizable share of the error; in-place
        // replacement keeps the ordering (and thus the sum) deterministic
        const double threshold = 0.5 * errmax;
        std::vector<Panel> next;
        next.reserve(panels.size() * 2);
        for (const Panel& p : panels) {
            if (p.err >= threshold) {
                const double xm = 0.5 * (p.x0 + p.x1);
                const double ym = 0.5 * (p.y0 + p.y1);
                next.push_back(eval_panel(f, p.x0, xm, p.y0, ym, &evals));
                next.push_back(eval_panel(f, p.x0, xm, ym, p.y1, &evals));
                next.push_back(eval_panel(f, xm, p.x1, p.y0, ym, &evals));
                next.push_back(eval_panel(f, xm, p.x1, ym, p.y1, &evals));
            } else {
                next.push_back(p);
            }
        }
        panels.swap(next);
    }
}

}  // namespace kerr
