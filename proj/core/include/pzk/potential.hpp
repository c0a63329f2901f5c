#pragma once

#include "pzk/angle.hpp"
#include "pzk/polynomial.hpp"

namespace pzk {

struct GreenEvaluation {
    double value = 0.0;       // 0 iff no escape within the cap
    int iterations_used = 0;
    double escape_radius = 0.0;
};

struct GreenOptions {
    double tol = 1e-12;
    int cap = 2048;
};

// Escape-rate potential lim d^-n log+|f^n(z)|, summed as a telescoping
// series once the orbit passes the escape radius.
GreenEvaluation green(const Polynomial& f, const Complex& z, const GreenOptions& opts = {});

// R = 2 (1 + sum |a_i|); beyond it the orbit escapes monotonically.
double escape_radius(const Polynomial& f);

// Critical escape level r_f = max G over critical points (0 when the
// critical orbits are bounded).
double critical_escape_level(const Polynomial& f, const GreenOptions& opts = {});

// log of the Boettcher coordinate at a far-field point: principal branches
// are valid once every forward iterate stays beyond the escape radius.
Complex log_boettcher_far(const Polynomial& f, const Complex& z);

// phi_f(z) normalized by phi(z)/z -> 1 at infinity.  Requires
// green(f,z) > r_f.  Below the escape radius the d-th root branch is chosen
// nearest to the orbit point's own argument, which is provably correct for
// orbit points beyond R and heuristic for the pre-escape prefix.
Complex boettcher(const Polynomial& f, const Complex& z);

// Point z with G_f(z) = h and external angle t, for h at or beyond the
// far-field threshold where phi is invertible by Newton from z ~ e^{h+2pi i t}.
Complex far_field_point(const Polynomial& f, double h, double angle_turns);

double far_field_threshold(const Polynomial& f);

// Solve for the point at (potential h, angle t) by Newton on the pulled-back
// equation f^n(z) = far_field_point(d^n h, d^n t), seeded nearby.  The seed
// must already be close (continuation); failure is reported, not guessed.
struct RayPointResult {
    Complex point;
    bool converged = false;
    double residual = 0.0;
};
RayPointResult solve_ray_point(const Polynomial& f, const Angle& t, double h, const Complex& seed);

}  // namespace pzk
