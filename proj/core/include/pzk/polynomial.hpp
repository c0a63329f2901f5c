#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pzk/runtime.hpp"

namespace pzk {

using Complex = std::complex<double>;

bool is_finite(const Complex& z);

// Plain coefficient polynomial, ascending powers.  No normal-form
// constraints; used for derivatives, root finding and intermediate algebra.
struct CoeffPoly {
    std::vector<Complex> coef;  // coef[k] multiplies z^k

    int degree() const { return static_cast<int>(coef.size()) - 1; }
    Complex eval(const Complex& z) const;                 // Horner
    Complex eval_derivative(const Complex& z) const;
    CoeffPoly derivative() const;
    void trim(double eps = 0.0);                          // drop tiny leading coefficients
};

// Monic polynomial z^d + a_{d-1} z^{d-1} + ... + a_2 z^2 + a_0 with the
// linear coefficient pinned to zero, so 0 is always a critical point.
class Polynomial {
public:
    Polynomial(int degree, std::vector<Complex> coefficients, std::string label = "");

    static Polynomial quadratic(const Complex& c, std::string label = "");        // z^2 + c
    static Polynomial cubic(const Complex& a2, const Complex& a0, std::string label = "");  // z^3 + a2 z^2 + a0
    static Polynomial power_map(int d);                                           // z^d

    int degree() const { return degree_; }
    const std::vector<Complex>& coefficients() const { return coef_.coef; }
    const std::string& label() const { return label_; }
    const CoeffPoly& as_coeff_poly() const { return coef_; }

    Complex operator()(const Complex& z) const { return coef_.eval(z); }
    Complex derivative_at(const Complex& z) const { return coef_.eval_derivative(z); }

    // n-fold iterate; the jet variants also push forward first (and second)
    // derivatives with respect to z along the orbit.
    Complex iterate(const Complex& z, int n) const;
    struct Jet {
        Complex value, d1, d2;
    };
    Jet iterate_jet(const Complex& z, int n) const;

private:
    int degree_;
    CoeffPoly coef_;
    std::string label_;
};

// f(z) evaluated with the normal-form coefficient list.  Overflow surfaces
// as a non-finite value usable as an escaped-to-infinity sentinel.
Complex evaluate(const Polynomial& f, const Complex& z);

// Exact coefficient-wise derivative; the result in general breaks the
// normal-form invariant, hence a CoeffPoly.
CoeffPoly derivative(const Polynomial& f);

struct CriticalSet {
    std::vector<std::pair<Complex, int>> points;  // (location, multiplicity)
    int multiplicity_sum() const;
};

CriticalSet critical_points(const Polynomial& f, double tol = 1e-12);

struct RootFindOptions {
    int max_iterations = 256;
    double tol = 1e-12;
};

// Aberth-Ehrlich simultaneous iteration.  Deterministic: initial guesses sit
// on a fixed ring of radius 1 + max|a_i| with a fixed angular offset.
std::vector<Complex> find_roots(const CoeffPoly& p, double tol = 1e-12,
                                const RootFindOptions& opts = {});

enum class CycleClass { superattracting, attracting, repelling, neutral };

std::string to_string(CycleClass c);

struct Cycle {
    std::vector<Complex> points;  // orbit, f(points[i]) == points[i+1 mod p]
    int period = 1;
    Complex multiplier{0.0, 0.0};
    CycleClass classification = CycleClass::superattracting;
};

struct PeriodicCycleOptions {
    bool exact_period = true;
    double tol = 1e-10;
    int grid = 64;           // seeds per axis for the composed-map search (p >= 3)
    int newton_cap = 64;
};

// All cycles of f whose (exact, when requested) period is p.  For p <= 2 the
// polynomial f^p(z) - z is expanded and solved completely; for larger p the
// roots are found by Newton on the composed map from a seed grid, which is
// complete at desk scale but not guaranteed exhaustive.
std::vector<Cycle> periodic_cycles(const Polynomial& f, int p,
                                   const PeriodicCycleOptions& opts = {});

// Product of f' over the orbit, with the classification band
// |rho| <-> 1 +- 1e-9.
Complex cycle_multiplier(const Polynomial& f, const Cycle& cycle);

CycleClass classify_multiplier(const Complex& rho, double neutral_band = 1e-9);

// Composition g(h(z)) on coefficient lists (used for p = 2 cycle solving).
CoeffPoly compose(const CoeffPoly& g, const CoeffPoly& h);

}  // namespace pzk
