#include "pzk/potential.hpp"

#include <cmath>
#include <numbers>

namespace pzk {

static constexpr double kTwoPi = 2.0 * std::numbers::pi;

double escape_radius(const Polynomial& f) {
    double s = 0.0;
    for (int k = 0; k < f.degree(); ++k) s += std::abs(f.coefficients()[static_cast<std::size_t>(k)]);
    return 2.0 * (1.0 + s);
}

GreenEvaluation green(const Polynomial& f, const Complex& z, const GreenOptions& opts) {
    if (opts.tol <= 0) throw Error("tolerance must be positive");
    GreenEvaluation g;
    g.escape_radius = escape_radius(f);
    const int d = f.degree();
    Complex w = z;
    int n = 0;
    while (n < opts.cap && std::abs(w) <= g.escape_radius) {
        w = f(w);
        ++n;
    }
    if (std::abs(w) <= g.escape_radius) {
        g.value = 0.0;
        g.iterations_used = opts.cap;
        return g;
    }
    // G = d^-n log|w| plus corrections d^-(k+1) log|f(w_k)/w_k^d| -> 0
    const double overflow_guard = std::pow(10.0, 250.0 / d);
    double scale = std::pow(static_cast<double>(d), -n);
    double value = scale * std::log(std::abs(w));
    while (n < opts.cap) {
        if (std::abs(w) > overflow_guard) break;  // remaining corrections are below any tol
        Complex next = f(w);
        double wd = static_cast<double>(d) * std::log(std::abs(w));
        double correction = (std::log(std::abs(next)) - wd) * scale / d;
        value += correction;
        w = next;
        ++n;
        scale /= d;
        if (std::abs(correction) < opts.tol) break;
    }
    g.value = value;
    g.iterations_used = n;
    return g;
}

double critical_escape_level(const Polynomial& f, const GreenOptions& opts) {
    double r = 0.0;
    for (const auto& [c, mult] : critical_points(f).points) {
        (void)mult;
        r = std::max(r, green(f, c, opts).value);
    }
    return r;
}

double far_field_threshold(const Polynomial& f) {
    return std::max(21.0, std::log(1e8 * escape_radius(f)));
}

Complex log_boettcher_far(const Polynomial& f, const Complex& z) {
    const int d = f.degree();
    const double overflow_guard = std::pow(10.0, 250.0 / d);
    Complex acc = std::log(z);
    Complex w = z;
    double scale = 1.0 / d;
    for (int k = 0; k < 64; ++k) {
        if (std::abs(w) > overflow_guard) break;
        Complex next = f(w);
        Complex wd = std::pow(w, d);
        Complex u = next / wd;
        acc += scale * std::log(u);  // principal branch, u near 1 beyond R
        w = next;
        scale /= d;
        if (std::abs(u - Complex{1.0, 0.0}) < 1e-18) break;
    }
    return acc;
}

static Complex d_log_boettcher(const Polynomial& f, const Complex& z) {
    // (log phi)'(z) = lim d^-n (f^n)'(z) / f^n(z)
    const int d = f.degree();
    const double overflow_guard = std::pow(10.0, 250.0 / d);
    Complex w = z;
    Complex dw{1.0, 0.0};
    double scale = 1.0;
    Complex best = dw / w;
    for (int k = 0; k < 64; ++k) {
        dw = f.derivative_at(w) * dw;
        w = f(w);
        scale /= d;
        if (!is_finite(w) || std::abs(w) > overflow_guard) break;
        best = scale * dw / w;
        if (std::abs(w) > 1e30) break;  // ratio has converged to machine precision
    }
    return best;
}

Complex far_field_point(const Polynomial& f, double h, double angle_turns) {
    const int d = f.degree();
    Complex target{h, kTwoPi * angle_turns};
    // seed from the asymptotic inverse phi^{-1}(w) = w - a_{d-1}/d + O(1/w)
    Complex w = std::exp(target);
    Complex z = w - f.coefficients()[static_cast<std::size_t>(d - 1)] / static_cast<double>(d);
    for (int it = 0; it < 8; ++it) {
        Complex val = log_boettcher_far(f, z);
        Complex err = val - target;
        // compare angles mod 2pi
        err = Complex{err.real(), std::remainder(err.imag(), kTwoPi)};
        if (std::abs(err) < 1e-14) break;
        z -= err / d_log_boettcher(f, z);
    }
    return z;
}

Complex boettcher(const Polynomial& f, const Complex& z) {
    const int d = f.degree();
    double R = escape_radius(f);
    GreenEvaluation g = green(f, z);
    if (g.value <= 0.0) throw Error("below critical equipotential");
    double rf = critical_escape_level(f);
    if (g.value <= rf) throw Error("below critical equipotential");

    // forward the orbit beyond R, take log phi there, pull the argument back
    std::vector<Complex> orbit{z};
    while (std::abs(orbit.back()) <= R) {
        if (orbit.size() > 4096) throw Error("escape too slow for Boettcher evaluation");
        orbit.push_back(f(orbit.back()));
    }
    Complex lp = log_boettcher_far(f, orbit.back());
    double arg = lp.imag();
    for (std::size_t k = orbit.size() - 1; k > 0; --k) {
        const Complex& prev = orbit[k - 1];
        double want = std::arg(prev);
        // candidates (arg + 2 pi j)/d, j = 0..d-1; nearest to the point's own argument
        double best_arg = 0.0, best_dist = 1e300;
        for (int j = 0; j < d; ++j) {
            double cand = (arg + kTwoPi * j) / d;
            double dist = std::abs(std::remainder(cand - want, kTwoPi));
            if (dist < best_dist) { best_dist = dist; best_arg = cand; }
        }
        arg = std::remainder(best_arg, kTwoPi);
    }
    return std::exp(Complex{g.value, arg});
}

RayPointResult solve_ray_point(const Polynomial& f, const Angle& t, double h, const Complex& seed) {
    RayPointResult r;
    r.point = seed;
    if (h <= 0) throw Error("potential must be positive");
    const int d = f.degree();
    double h_far = far_field_threshold(f);

    int n = 0;
    double hn = h;
    while (hn < h_far) {
        hn *= d;
        ++n;
    }
    // exact far angle d^n t mod 1 by modular exponentiation
    std::int64_t num = t.num % t.den;
    for (int k = 0; k < n; ++k) num = static_cast<std::int64_t>((static_cast<__int128>(num) * d) % t.den);
    Complex target = far_field_point(f, hn, static_cast<double>(num) / static_cast<double>(t.den));

    // Newton in log-log coordinates: solve Log(f^n(z)/target) = 0 with the
    // multiplicative update z <- z exp(-err / (z (f^n)'(z)/f^n(z))).  The
    // seed's far image sits on the same far-field ray as the target, so the
    // principal branch is the right one; for power maps one step is exact.
    Complex z = seed;
    for (int it = 0; it < 32; ++it) {
        auto jet = f.iterate_jet(z, n);
        if (!is_finite(jet.value) || !is_finite(z)) return r;
        Complex err = std::log(jet.value / target);
        r.residual = std::abs(err);
        Complex slope = z * jet.d1 / jet.value;  // d log f^n / d log z
        if (!is_finite(slope) || std::abs(slope) < 1e-300) return r;
        Complex delta = err / slope;
        // the image error saturates at slope * ulp, so convergence is
        // measured by the z-space step
        if (std::abs(delta) <= 1e-13) {
            r.point = z * std::exp(-delta);
            r.converged = true;
            return r;
        }
        if (std::abs(delta) > 2.0) delta *= 2.0 / std::abs(delta);
        z *= std::exp(-delta);
    }
    return r;
}

}  // namespace pzk
