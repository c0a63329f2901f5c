#include <doctest.h>

#include <cmath>
#include <random>

#include "pzk/rays.hpp"

using namespace pzk;

namespace {

// independent oracle for the Green function: iterate the defining limit in
// log space, switching to the exact log recurrence once the orbit is huge
double green_oracle_z2m1(double x0, int n) {
    // f = z^2 - 1 on the real axis, x0 > 2
    double log_abs = std::log(std::abs(x0));
    double x = x0;
    int k = 0;
    for (; k < n && std::abs(x) < 1e100; ++k) {
        double next = x * x - 1.0;
        log_abs = std::log(std::abs(next));
        x = next;
    }
    for (; k < n; ++k) {
        // |x| astronomically large: log|x^2 - 1| = 2 log|x| + log|1 - x^-2|
        log_abs = 2.0 * log_abs;  // correction below 1e-200 is invisible in double
    }
    return log_abs * std::pow(2.0, -n);
}

}  // namespace

TEST_CASE("green of z^2 is log|z| outside the disk") {
    auto z2 = Polynomial::power_map(2);
    auto g = green(z2, {std::exp(1.0), 0.0});
    CHECK(g.value == doctest::Approx(1.0).epsilon(1e-12));

    g = green(z2, {0.5, 0.0});
    CHECK(g.value == 0.0);
    CHECK(g.iterations_used == 2048);
}

TEST_CASE("green of z^2-1 matches the brute-force limit at z=10") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    double oracle = green_oracle_z2m1(10.0, 30);
    auto g = green(f, {10.0, 0.0}, {1e-14, 2048});
    CHECK(std::abs(g.value - oracle) < 1e-10);
}

TEST_CASE("green functional equation G(f(z)) = d G(z)") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 50) {
        Complex z{u(rng), u(rng)};
        auto g = green(f, z, {1e-12, 2048});
        if (g.value < 1e-6) continue;
        auto gf = green(f, f(z), {1e-12, 2048});
        CHECK(std::abs(gf.value - 2.0 * g.value) < 1e-8 * (1.0 + gf.value));
        ++tested;
    }
}

TEST_CASE("boettcher is the identity for power maps") {
    for (int d : {2, 3}) {
        auto f = Polynomial::power_map(d);
        std::mt19937_64 rng(17 + d);
        std::uniform_real_distribution<double> radius(1.05, 10.0);
        std::uniform_real_distribution<double> turn(0.0, 1.0);
        for (int i = 0; i < 40; ++i) {
            double r = radius(rng), a = 2 * M_PI * turn(rng);
            Complex z{r * std::cos(a), r * std::sin(a)};
            CHECK(std::abs(boettcher(f, z) - z) <= 1e-10 * std::abs(z));
        }
    }
}

TEST_CASE("boettcher modulus equals exp(green) for the basilica") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    Complex z{10.0, 0.0};
    auto g = green(f, z, {1e-14, 2048});
    CHECK(std::abs(std::abs(boettcher(f, z)) - std::exp(g.value)) < 1e-8 * std::exp(g.value));
    // real symmetry forces a real Boettcher value on the 0-ray
    for (double x : {3.0, 5.0, 10.0}) {
        Complex phi = boettcher(f, {x, 0.0});
        CHECK(std::abs(phi.imag()) < 1e-10 * std::abs(phi));
    }
    CHECK_THROWS_AS(boettcher(f, {0.1, 0.0}), Error);
}

TEST_CASE("rays of power maps are straight") {
    for (int d : {2, 3}) {
        auto f = Polynomial::power_map(d);
        std::mt19937_64 rng(23 + d);
        for (int i = 0; i < 25; ++i) {
            std::int64_t den = 2 + static_cast<std::int64_t>(rng() % 4000);
            std::int64_t num = static_cast<std::int64_t>(rng() % den);
            Angle t(num, den);
            auto trace = trace_ray(f, t, 1e-6);
            REQUIRE(trace.status == RayStatus::reached_target);
            for (const auto& s : trace.samples) {
                double want = 2 * M_PI * static_cast<double>(t.num) / static_cast<double>(t.den);
                CHECK(std::abs(std::remainder(std::arg(s.point) - want, 2 * M_PI)) <= 1e-9);
                CHECK(std::abs(std::log(std::abs(s.point)) - s.potential) <= 1e-9);
            }
        }
    }
}

TEST_CASE("trace samples sit on their equipotentials with decreasing potential") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    auto trace = trace_ray(f, Angle(1, 3), 1e-5);
    REQUIRE(trace.status == RayStatus::reached_target);
    REQUIRE(trace.samples.size() > 4);
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        auto g = green(f, trace.samples[i].point, {1e-12, 2048});
        CHECK(std::abs(g.value - trace.samples[i].potential) <= 1e-9);
        if (i > 0) CHECK(trace.samples[i].potential < trace.samples[i - 1].potential);
    }
}

TEST_CASE("the zero ray of the basilica is real and lands beyond the beta fixed point") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    auto trace = trace_ray(f, Angle(0, 1), 1e-8);
    REQUIRE(trace.status == RayStatus::reached_target);
    const double beta = (1.0 + std::sqrt(5.0)) / 2.0;
    double prev = 1e300;
    for (const auto& s : trace.samples) {
        CHECK(std::abs(s.point.imag()) < 1e-9);
        CHECK(s.point.real() > beta - 1e-6);
        CHECK(s.point.real() < prev + 1e-12);
        prev = s.point.real();
    }
}

TEST_CASE("ray equivariance: f maps ray t to ray dt") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    for (const Angle& t : {Angle(1, 5), Angle(1, 3), Angle(3, 7)}) {
        TraceOptions opts;
        opts.step_ratio = 0.5;
        auto low = trace_ray(f, t, 1e-4, opts);
        REQUIRE(low.status == RayStatus::reached_target);
        Angle dt = multiply_by_d(t, 2);
        for (const auto& s : low.samples) {
            if (s.potential > opts.initial_potential / 2) continue;
            // the image point must sit on ray dt at potential 2h
            auto img = solve_ray_point(f, dt, 2.0 * s.potential, f(s.point));
            REQUIRE(img.converged);
            CHECK(std::abs(img.point - f(s.point)) <= 1e-6);
        }
    }
}

TEST_CASE("basilica landing points certify against the quadratic formula") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    const double alpha = (1.0 - std::sqrt(5.0)) / 2.0;

    auto lp = landing_point(f, Angle(1, 3));
    REQUIRE(lp.certificate.kind == CertificateKind::periodic);
    CHECK(lp.certificate.preperiod == 0);
    CHECK(lp.certificate.period == 1);
    CHECK(std::abs(lp.point - Complex{alpha, 0.0}) < 1e-6);
    CHECK(std::abs(lp.certificate.multiplier - Complex{1.0 - std::sqrt(5.0), 0.0}) < 1e-6);

    auto lp2 = landing_point(f, Angle(2, 3));
    REQUIRE(lp2.certificate.kind == CertificateKind::periodic);
    CHECK(std::abs(lp2.point - lp.point) < 1e-8);

    // 1/6 is preperiodic: it lands at -alpha, the other preimage of alpha
    auto lp3 = landing_point(f, Angle(1, 6));
    REQUIRE(lp3.certificate.kind == CertificateKind::preperiodic);
    CHECK(lp3.certificate.preperiod == 1);
    CHECK(lp3.certificate.period == 1);
    CHECK(std::abs(lp3.point - Complex{-alpha, 0.0}) < 1e-6);
    CHECK(std::abs(f(lp3.point) - Complex{alpha, 0.0}) < 1e-6);
}

TEST_CASE("landing of z^2 ray 0 is the fixed point 1") {
    auto z2 = Polynomial::power_map(2);
    auto lp = landing_point(z2, Angle(0, 1));
    REQUIRE(lp.certificate.kind == CertificateKind::periodic);
    CHECK(std::abs(lp.point - Complex{1.0, 0.0}) < 1e-9);
    CHECK(std::abs(lp.certificate.multiplier - Complex{2.0, 0.0}) < 1e-9);
}

TEST_CASE("landing equivariance landing(dt) = f(landing(t))") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    for (const Angle& t : {Angle(1, 3), Angle(1, 6), Angle(3, 7), Angle(1, 5)}) {
        auto a = landing_point(f, t);
        auto b = landing_point(f, multiply_by_d(t, 2));
        REQUIRE(a.certificate.kind != CertificateKind::uncertified);
        REQUIRE(b.certificate.kind != CertificateKind::uncertified);
        CHECK(std::abs(f(a.point) - b.point) < 2e-9 + 2 * (a.residual + b.residual));
    }
}

TEST_CASE("equipotentials of power maps are round circles") {
    auto z2 = Polynomial::power_map(2);
    auto circle = equipotential_polyline(z2, 1.0, 64);
    for (const Complex& z : circle) CHECK(std::abs(std::abs(z) - std::exp(1.0)) < 1e-9);

    auto z3 = Polynomial::power_map(3);
    auto c2 = equipotential_polyline(z3, std::log(2.0), 48);
    for (const Complex& z : c2) CHECK(std::abs(std::abs(z) - 2.0) < 1e-9);
}

TEST_CASE("equipotential samples satisfy G = h for the basilica") {
    auto f = Polynomial::quadratic({-1.0, 0.0});
    auto curve = equipotential_polyline(f, 1.0, 96);
    for (const Complex& z : curve) {
        auto g = green(f, z, {1e-12, 2048});
        CHECK(std::abs(g.value - 1.0) < 1e-8);
    }
    CHECK_THROWS_AS(equipotential_polyline(f, -0.5, 16), Error);
}
