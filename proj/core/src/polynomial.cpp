#include "pzk/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pzk {

bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex CoeffPoly::eval(const Complex& z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex CoeffPoly::eval_derivative(const Complex& z) const {
    Complex acc{0.0, 0.0};
    for (int k = degree(); k >= 1; --k) acc = acc * z + coef[static_cast<std::size_t>(k)] * static_cast<double>(k);
    return acc;
}

CoeffPoly CoeffPoly::derivative() const {
    CoeffPoly d;
    if (coef.size() <= 1) {
        d.coef = {Complex{0.0, 0.0}};
        return d;
    }
    d.coef.resize(coef.size() - 1);
    for (std::size_t k = 1; k < coef.size(); ++k)
        d.coef[k - 1] = coef[k] * static_cast<double>(k);
    return d;
}

void CoeffPoly::trim(double eps) {
    while (coef.size() > 1 && std::abs(coef.back()) <= eps) coef.pop_back();
}

Polynomial::Polynomial(int degree, std::vector<Complex> coefficients, std::string label)
    : degree_(degree), label_(std::move(label)) {
    if (degree < 2) throw Error("polynomial degree must be >= 2");
    if (coefficients.size() != static_cast<std::size_t>(degree) + 1)
        throw Error("coefficient list must have degree+1 entries");
    for (const Complex& c : coefficients)
        if (!is_finite(c)) throw Error("polynomial coefficients must be finite");
    if (coefficients.back() != Complex{1.0, 0.0})
        throw Error("normal form requires a monic polynomial (leading coefficient 1)");
    if (coefficients[1] != Complex{0.0, 0.0})
        throw Error("normal form requires a vanishing linear coefficient");
    coef_.coef = std::move(coefficients);
}

Polynomial Polynomial::quadratic(const Complex& c, std::string label) {
    return Polynomial(2, {c, {0.0, 0.0}, {1.0, 0.0}}, std::move(label));
}

Polynomial Polynomial::cubic(const Complex& a2, const Complex& a0, std::string label) {
    return Polynomial(3, {a0, {0.0, 0.0}, a2, {1.0, 0.0}}, std::move(label));
}

Polynomial Polynomial::power_map(int d) {
    std::vector<Complex> coef(static_cast<std::size_t>(d) + 1, Complex{0.0, 0.0});
    coef.back() = Complex{1.0, 0.0};
    return Polynomial(d, std::move(coef), "z^" + std::to_string(d));
}

Complex Polynomial::iterate(const Complex& z, int n) const {
    Complex w = z;
    for (int i = 0; i < n && is_finite(w); ++i) w = coef_.eval(w);
    return w;
}

Polynomial::Jet Polynomial::iterate_jet(const Complex& z, int n) const {
    // chain rule pushed along the orbit:
    //   (f^n)'  = f'(w) * d1
    //   (f^n)'' = f''(w) * d1^2 + f'(w) * d2
    Jet jet{z, {1.0, 0.0}, {0.0, 0.0}};
    CoeffPoly d1p = coef_.derivative();
    CoeffPoly d2p = d1p.derivative();
    for (int i = 0; i < n; ++i) {
        Complex fp = d1p.eval(jet.value);
        Complex fpp = d2p.eval(jet.value);
        jet.d2 = fpp * jet.d1 * jet.d1 + fp * jet.d2;
        jet.d1 = fp * jet.d1;
        jet.value = coef_.eval(jet.value);
        if (!is_finite(jet.value)) break;
    }
    return jet;
}

Complex evaluate(const Polynomial& f, const Complex& z) {
    return f(z);
}

CoeffPoly derivative(const Polynomial& f) {
    return f.as_coeff_poly().derivative();
}

int CriticalSet::multiplicity_sum() const {
    int s = 0;
    for (const auto& [_, m] : points) s += m;
    return s;
}

CriticalSet critical_points(const Polynomial& f, double tol) {
    if (tol <= 0) throw Error("tolerance must be positive");
    CoeffPoly fp = derivative(f);
    std::vector<Complex> roots = find_roots(fp, tol);
    // cluster multiple roots
    CriticalSet cs;
    std::vector<bool> used(roots.size(), false);
    // A root of multiplicity m is resolved by the solver only to about
    // (tol*norm)^(1/m); 1e-3 covers m <= 3 at desk scale while staying far
    // below the separation of genuinely distinct critical points.
    double cluster_radius = std::max(100 * tol, 1e-3);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_radius) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        Complex center = sum / static_cast<double>(count);
        if (std::abs(center) <= cluster_radius) center = Complex{0.0, 0.0};  // normal form pins 0
        cs.points.emplace_back(center, count);
    }
    std::sort(cs.points.begin(), cs.points.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    if (cs.multiplicity_sum() != f.degree() - 1)
        throw Error("critical point multiplicities do not sum to degree-1");
    return cs;
}

static double coeff_norm(const CoeffPoly& p) {
    double n = 0.0;
    for (const Complex& c : p.coef) n += std::abs(c);
    return n;
}

std::vector<Complex> find_roots(const CoeffPoly& poly, double tol, const RootFindOptions& opts) {
    CoeffPoly p = poly;
    p.trim();
    int n = p.degree();
    if (n < 1) throw Error("root finding needs degree >= 1");
    if (std::abs(p.coef.back()) == 0.0) throw Error("leading coefficient must be nonzero");

    if (n == 1) return {-p.coef[0] / p.coef[1]};

    double lead = std::abs(p.coef.back());
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(p.coef[static_cast<std::size_t>(k)]) / lead);
    radius = 1.0 + radius;

    // fixed angular offset breaks symmetry deterministically
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) / n) + 0.35;
        z[static_cast<std::size_t>(k)] = radius * Complex{std::cos(theta), std::sin(theta)};
    }

    CoeffPoly dp = p.derivative();
    double norm = coeff_norm(p);
    double target = tol * norm;
    double worst = 0.0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        double max_step = 0.0;
        worst = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex zk = z[static_cast<std::size_t>(k)];
            Complex pv = p.eval(zk);
            worst = std::max(worst, std::abs(pv));
            if (std::abs(pv) == 0.0) continue;
            Complex dv = dp.eval(zk);
            Complex newton = (dv == Complex{0.0, 0.0}) ? Complex{0.0, 0.0} : pv / dv;
            Complex repulsion{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                Complex diff = zk - z[static_cast<std::size_t>(j)];
                if (std::abs(diff) < 1e-300) diff = Complex{1e-300, 0.0};
                repulsion += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * repulsion;
            Complex step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[static_cast<std::size_t>(k)] = zk - step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (worst <= target && max_step <= tol * (1.0 + radius)) break;
    }
    worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(p.eval(z[static_cast<std::size_t>(k)])));
    if (worst > target)
        throw Error("root finder did not converge; worst residual " + std::to_string(worst) +
                    " against bound " + std::to_string(target));
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

std::string to_string(CycleClass c) {
    switch (c) {
        case CycleClass::superattracting: return "superattracting";
        case CycleClass::attracting: return "attracting";
        case CycleClass::repelling: return "repelling";
        case CycleClass::neutral: return "neutral";
    }
    return "?";
}

CycleClass classify_multiplier(const Complex& rho, double neutral_band) {
    double m = std::abs(rho);
    if (m < 1e-12) return CycleClass::superattracting;
    if (m < 1.0 - neutral_band) return CycleClass::attracting;
    if (m > 1.0 + neutral_band) return CycleClass::repelling;
    return CycleClass::neutral;
}

CoeffPoly compose(const CoeffPoly& g, const CoeffPoly& h) {
    // Horner in the polynomial ring: g(h) = (...(c_n h + c_{n-1}) h + ...)
    CoeffPoly acc;
    acc.coef = {g.coef.back()};
    for (int k = g.degree() - 1; k >= 0; --k) {
        // acc = acc * h
        std::vector<Complex> prod(acc.coef.size() + h.coef.size() - 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < acc.coef.size(); ++i)
            for (std::size_t j = 0; j < h.coef.size(); ++j)
                prod[i + j] += acc.coef[i] * h.coef[j];
        acc.coef = std::move(prod);
        acc.coef[0] += g.coef[static_cast<std::size_t>(k)];
    }
    return acc;
}

namespace {

// deduplicated collection of periodic points for p >= 3: Newton on f^p(z)-z
// seeded from a grid; symbolic expansion of f^p would blow up coefficients.
std::vector<Complex> periodic_points_by_newton(const Polynomial& f, int p,
                                               const PeriodicCycleOptions& opts) {
    double radius = 0.0;
    for (const Complex& c : f.coefficients()) radius += std::abs(c);
    radius = 2.0 * (1.0 + radius);

    double dedup = 100 * opts.tol;
    std::vector<Complex> found;
    auto push_unique = [&](const Complex& z) {
        for (const Complex& w : found)
            if (std::abs(w - z) <= dedup) return;
        found.push_back(z);
    };

    int grid = opts.grid;
    for (int gy = 0; gy < grid; ++gy) {
        for (int gx = 0; gx < grid; ++gx) {
            Complex z{-radius + 2.0 * radius * (gx + 0.5) / grid,
                      -radius + 2.0 * radius * (gy + 0.5) / grid};
            bool ok = false;
            for (int it = 0; it < opts.newton_cap; ++it) {
                auto jet = f.iterate_jet(z, p);
                if (!is_finite(jet.value)) break;
                Complex g = jet.value - z;
                Complex dg = jet.d1 - 1.0;
                if (std::abs(g) <= opts.tol) { ok = true; break; }
                if (std::abs(dg) < 1e-300) break;
                Complex step = g / dg;
                z -= step;
                if (!is_finite(z) || std::abs(z) > 4 * radius) break;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
                    ok = std::abs(f.iterate(z, p) - z) <= opts.tol;
                    break;
                }
            }
            if (ok) push_unique(z);
        }
    }
    return found;
}

}  // namespace

std::vector<Cycle> periodic_cycles(const Polynomial& f, int p, const PeriodicCycleOptions& opts) {
    if (p < 1) throw Error("period must be >= 1");
    int p_max = f.degree() == 2 ? 8 : 5;
    if (p > p_max)
        throw Error("period " + std::to_string(p) + " exceeds the desk-scale cap " + std::to_string(p_max));

    std::vector<Complex> points;
    if (p <= 2) {
        // expand f^p(z) - z exactly and take all roots
        CoeffPoly iter = f.as_coeff_poly();
        for (int k = 1; k < p; ++k) iter = compose(f.as_coeff_poly(), iter);
        CoeffPoly g = iter;
        if (g.coef.size() < 2) g.coef.resize(2, Complex{0.0, 0.0});
        g.coef[1] -= 1.0;
        points = find_roots(g, opts.tol);
    } else {
        points = periodic_points_by_newton(f, p, opts);
    }

    // ambiguity guard: two distinct roots closer than tol cannot be grouped
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (std::abs(points[i] - points[j]) < opts.tol)
                throw Error("periodic points closer than tol; retry with smaller tol or higher precision");

    double match = 100 * opts.tol;
    std::vector<bool> used(points.size(), false);
    std::vector<Cycle> cycles;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (used[i]) continue;
        // walk the orbit, matching forward images to the root list
        std::vector<Complex> orbit{points[i]};
        used[i] = true;
        Complex cur = points[i];
        int exact = p;
        for (int step = 1; step < p; ++step) {
            cur = f(cur);
            if (std::abs(cur - points[i]) <= match) { exact = step; break; }
            bool matched = false;
            for (std::size_t j = 0; j < points.size(); ++j) {
                if (std::abs(points[j] - cur) <= match) {
                    if (!used[j]) { used[j] = true; matched = true; orbit.push_back(points[j]); cur = points[j]; }
                    else { matched = true; orbit.push_back(points[j]); cur = points[j]; }
                    break;
                }
            }
            if (!matched) orbit.push_back(cur);  // keep the numeric image
        }
        if (opts.exact_period && exact != p) continue;
        Cycle c;
        c.points = std::move(orbit);
        c.period = exact;
        c.multiplier = cycle_multiplier(f, c);
        c.classification = classify_multiplier(c.multiplier);
        cycles.push_back(std::move(c));
    }
    std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
        const Complex& x = a.points.front();
        const Complex& y = b.points.front();
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return cycles;
}

Complex cycle_multiplier(const Polynomial& f, const Cycle& cycle) {
    Complex rho{1.0, 0.0};
    for (const Complex& z : cycle.points) rho *= f.derivative_at(z);
    return rho;
}

}  // namespace pzk
