#pragma once

#include "pzk/potential.hpp"

namespace pzk {

enum class RayStatus { reached_target, stalled, bifurcation_suspected };

std::string to_string(RayStatus s);

struct RaySample {
    Complex point;
    double potential;
};

struct RayTrace {
    Angle angle;
    std::vector<RaySample> samples;   // potentials strictly decreasing
    double terminal_potential = 0.0;
    RayStatus status = RayStatus::stalled;
};

struct TraceOptions {
    double initial_potential = 1.0;   // puzzle construction truncates at height 1
    double step_ratio = 0.5;
    double trace_tol = 1e-9;
    int max_halvings = 8;             // then the ray is declared bifurcation_suspected
};

// Newton continuation down the ray of angle t to target_potential.
RayTrace trace_ray(const Polynomial& f, const Angle& t, double target_potential,
                   const TraceOptions& opts = {});

enum class CertificateKind { periodic, preperiodic, uncertified };

struct LandingCertificate {
    CertificateKind kind = CertificateKind::uncertified;
    int preperiod = 0;
    int period = 0;
    Complex multiplier{0.0, 0.0};
};

struct LandingPoint {
    Angle angle;
    Complex point{0.0, 0.0};
    LandingCertificate certificate;
    double residual = 0.0;
    RayStatus trace_status = RayStatus::stalled;
};

struct LandingOptions {
    double tol = 1e-9;
    double terminal_potential = 1e-8;
    TraceOptions trace;
};

// Trace to low potential, then certify against the (pre)periodic structure of
// the angle: Newton on f^p(x) = x for the periodic part, pulled back through
// the preperiod.  Uncertified results carry the best point found.
LandingPoint landing_point(const Polynomial& f, const Angle& t, const LandingOptions& opts = {});

// n_samples points with G_f = h, ordered by external angle j/n.
std::vector<Complex> equipotential_polyline(const Polynomial& f, double h, int n_samples);

}  // namespace pzk
