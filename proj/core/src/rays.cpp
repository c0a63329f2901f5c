#include "pzk/rays.hpp"

#include <cmath>

namespace pzk {

std::string to_string(RayStatus s) {
    switch (s) {
        case RayStatus::reached_target: return "reached_target";
        case RayStatus::stalled: return "stalled";
        case RayStatus::bifurcation_suspected: return "bifurcation_suspected";
    }
    return "?";
}

RayTrace trace_ray(const Polynomial& f, const Angle& t, double target_potential,
                   const TraceOptions& opts) {
    if (!(target_potential > 0) || !(target_potential < opts.initial_potential))
        throw Error("need 0 < target_potential < initial potential");
    if (!(opts.step_ratio > 0) || !(opts.step_ratio < 1))
        throw Error("step ratio must lie in (0,1)");

    RayTrace trace;
    trace.angle = t;

    // approach phase: walk in from the far field down to the initial potential
    double h_far = far_field_threshold(f);
    Complex z = far_field_point(f, h_far, static_cast<double>(t.num) / static_cast<double>(t.den));
    double h = h_far;
    const int d = f.degree();
    while (h > opts.initial_potential) {
        double next = std::max(h / d, opts.initial_potential);
        auto r = solve_ray_point(f, t, next, z);
        if (!r.converged) {
            // the approach region is tame; treat failure as a hard stall
            trace.status = RayStatus::stalled;
            trace.terminal_potential = h;
            return trace;
        }
        z = r.point;
        h = next;
    }

    auto record = [&](const Complex& p, double pot) {
        trace.samples.push_back({p, pot});
    };
    record(z, h);

    // sampling phase with adaptive halving near suspected bifurcations
    double ratio = opts.step_ratio;
    int halvings = 0;
    while (h > target_potential) {
        double next = std::max(h * ratio, target_potential);
        auto r = solve_ray_point(f, t, next, z);
        bool ok = r.converged;
        if (ok) {
            // a Newton solve can land on a neighboring preimage branch while
            // converging cleanly; the jump is caught by walking back up
            auto back = solve_ray_point(f, t, h, r.point);
            ok = back.converged && std::abs(back.point - z) <= 1e-7 * (1.0 + std::abs(z));
        }
        if (!ok) {
            ratio = std::sqrt(ratio);  // halve the step in log scale
            ++halvings;
            if (halvings > opts.max_halvings) {
                trace.status = RayStatus::bifurcation_suspected;
                trace.terminal_potential = h;
                return trace;
            }
            continue;
        }
        z = r.point;
        h = next;
        record(z, h);
    }
    trace.terminal_potential = h;
    trace.status = RayStatus::reached_target;
    return trace;
}

static bool newton_fixed_point(const Polynomial& f, int p, Complex& x, double tol, double* residual) {
    Complex z = x;
    for (int it = 0; it < 60; ++it) {
        auto jet = f.iterate_jet(z, p);
        if (!is_finite(jet.value)) return false;
        Complex g = jet.value - z;
        if (std::abs(g) <= tol) {
            x = z;
            *residual = std::abs(g);
            return true;
        }
        Complex dg = jet.d1 - 1.0;
        if (std::abs(dg) < 1e-300) return false;
        z -= g / dg;
        if (!is_finite(z)) return false;
    }
    auto jet = f.iterate_jet(z, p);
    if (is_finite(jet.value) && std::abs(jet.value - z) <= tol) {
        x = z;
        *residual = std::abs(jet.value - z);
        return true;
    }
    return false;
}

LandingPoint landing_point(const Polynomial& f, const Angle& t, const LandingOptions& opts) {
    LandingPoint lp;
    lp.angle = t;

    TraceOptions traceopts = opts.trace;
    RayTrace trace = trace_ray(f, t, opts.terminal_potential, traceopts);
    lp.trace_status = trace.status;
    if (trace.samples.empty()) return lp;
    Complex terminal = trace.samples.back().point;
    lp.point = terminal;
    if (trace.status != RayStatus::reached_target) return lp;

    AngleOrbit orbit = angle_orbit(t, f.degree());
    int pre = orbit.preperiod;
    int per = orbit.period;

    // periodic anchor: refine the landing point of the ray d^pre * t
    Complex anchor = f.iterate(terminal, pre);
    if (!is_finite(anchor)) return lp;
    Complex seed = anchor;
    double residual = 0.0;
    if (!newton_fixed_point(f, per, anchor, opts.tol, &residual)) return lp;
    // Newton must stay local to the traced terminal, otherwise the wrong
    // fixed point was reached and the certificate would lie.
    double guard = 0.05 * (1.0 + escape_radius(f));
    if (std::abs(anchor - seed) > guard) return lp;

    // the ray period can exceed the point period (several rays on one
    // cycle); certificates report the exact point period
    double match = std::sqrt(opts.tol) * (1.0 + std::abs(anchor));
    int point_period = per;
    for (int q = 1; q < per; ++q) {
        if (per % q != 0) continue;
        if (std::abs(f.iterate(anchor, q) - anchor) <= match) { point_period = q; break; }
    }
    Complex multiplier = f.iterate_jet(anchor, point_period).d1;

    if (pre == 0) {
        lp.point = anchor;
        lp.residual = residual;
        lp.certificate.kind = CertificateKind::periodic;
        lp.certificate.preperiod = 0;
        lp.certificate.period = point_period;
        lp.certificate.multiplier = multiplier;
        return lp;
    }

    // pull the anchor back through the preperiod with Newton on f^pre(x) = anchor
    Complex x = terminal;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
        auto jet = f.iterate_jet(x, pre);
        if (!is_finite(jet.value)) break;
        Complex g = jet.value - anchor;
        if (std::abs(g) <= opts.tol) { ok = true; break; }
        if (std::abs(jet.d1) < 1e-300) break;
        x -= g / jet.d1;
        if (!is_finite(x)) break;
    }
    if (!ok || std::abs(x - terminal) > guard) return lp;

    // exact point preperiod: first entry of the forward orbit into the cycle
    std::vector<Complex> cycle_pts;
    Complex c = anchor;
    for (int j = 0; j < point_period; ++j) { cycle_pts.push_back(c); c = f(c); }
    int point_pre = pre;
    Complex w = x;
    for (int j = 0; j <= pre; ++j) {
        bool on_cycle = false;
        for (const Complex& cp : cycle_pts)
            if (std::abs(w - cp) <= match) on_cycle = true;
        if (on_cycle) { point_pre = j; break; }
        w = f(w);
    }

    lp.point = x;
    lp.residual = std::abs(f.iterate(x, pre) - anchor);
    if (point_pre == 0) {
        lp.certificate.kind = CertificateKind::periodic;
        lp.certificate.preperiod = 0;
    } else {
        lp.certificate.kind = CertificateKind::preperiodic;
        lp.certificate.preperiod = point_pre;
    }
    lp.certificate.period = point_period;
    lp.certificate.multiplier = multiplier;
    return lp;
}

std::vector<Complex> equipotential_polyline(const Polynomial& f, double h, int n_samples) {
    if (n_samples < 3) throw Error("equipotential needs at least 3 samples");
    double rf = critical_escape_level(f);
    if (!(h > rf))
        throw Error("equipotential height must exceed the critical escape level (curve may be disconnected)");

    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n_samples));
    Complex seed{0.0, 0.0};
    bool have_seed = false;
    for (int j = 0; j < n_samples; ++j) {
        Angle t(j, n_samples);
        if (!have_seed) {
            // walk in from the far field along the first angle
            double h_far = far_field_threshold(f);
            Complex z = far_field_point(f, h_far, static_cast<double>(t.num) / t.den);
            double cur = h_far;
            while (cur > h) {
                double next = std::max(cur / f.degree(), h);
                auto r = solve_ray_point(f, t, next, z);
                if (!r.converged) throw Error("equipotential continuation failed during approach");
                z = r.point;
                cur = next;
            }
            seed = z;
            have_seed = true;
            pts.push_back(z);
            continue;
        }
        auto r = solve_ray_point(f, t, h, seed);
        if (!r.converged) {
            // refine by stepping the angle in halves from the previous sample
            // (the curve is smooth above r_f, only the seed was too far)
            Complex z = seed;
            bool fixed = false;
            for (int sub = 1; sub <= 6 && !fixed; ++sub) {
                int steps = 1 << sub;
                z = seed;
                bool fail = false;
                for (int s = 1; s <= steps; ++s) {
                    // exact sub-angle: (j-1)/n + s/(n*steps)
                    Angle sub_t(static_cast<std::int64_t>(j - 1) * steps + s,
                                static_cast<std::int64_t>(n_samples) * steps);
                    auto rr = solve_ray_point(f, sub_t, h, z);
                    if (!rr.converged) { fail = true; break; }
                    z = rr.point;
                }
                fixed = !fail;
            }
            if (!fixed) throw Error("equipotential continuation failed at angle " + t.str());
            r.point = z;
            r.converged = true;
        }
        seed = r.point;
        pts.push_back(r.point);
    }
    return pts;
}

}  // namespace pzk
