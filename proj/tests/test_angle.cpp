#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "pzk/angle.hpp"

using namespace pzk;

TEST_CASE("angles reduce to canonical form") {
    CHECK(Angle(2, 6) == Angle(1, 3));
    CHECK(Angle(-1, 3) == Angle(2, 3));
    CHECK(Angle(7, 3) == Angle(1, 3));
    CHECK(Angle(0, 5).str() == "0/1");
    CHECK_THROWS_AS(Angle(1, 0), Error);
}

TEST_CASE("multiply_by_d doubles and triples exactly") {
    CHECK(multiply_by_d(Angle(1, 3), 2) == Angle(2, 3));
    CHECK(multiply_by_d(Angle(2, 3), 2) == Angle(1, 3));
    CHECK(multiply_by_d(Angle(1, 7), 3) == Angle(3, 7));
}

TEST_CASE("angle orbits have exact preperiod and period") {
    auto o = angle_orbit(Angle(1, 3), 2);
    CHECK(o.preperiod == 0);
    CHECK(o.period == 2);

    o = angle_orbit(Angle(1, 7), 2);
    CHECK(o.preperiod == 0);
    CHECK(o.period == 3);

    o = angle_orbit(Angle(1, 6), 2);
    CHECK(o.preperiod == 1);
    CHECK(o.period == 2);
}

TEST_CASE("angles_of_period enumerates k/(d^p-1)") {
    auto a1 = angles_of_period(1, 2);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0] == Angle(0, 1));

    auto a2 = angles_of_period(2, 2, true);
    REQUIRE(a2.size() == 2);
    CHECK(a2[0] == Angle(1, 3));
    CHECK(a2[1] == Angle(2, 3));

    auto a3 = angles_of_period(3, 2, true);
    CHECK(a3.size() == 6);
}

TEST_CASE("Moebius identity over exact periods") {
    for (int d = 2; d <= 4; ++d) {
        for (int p = 1; p <= 6; ++p) {
            std::int64_t total = 0;
            for (int q = 1; q <= p; ++q) {
                if (p % q != 0) continue;
                total += static_cast<std::int64_t>(angles_of_period(q, d, true).size());
            }
            CHECK(total == checked_pow(d, p, std::int64_t{1} << 40) - 1);
        }
    }
}

TEST_CASE("d-ary expansion uses the zero-tail representative") {
    auto e = d_ary_expansion(Angle(1, 3), 2, 6);
    CHECK(e.digits == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK(e.repeat_start == 0);

    e = d_ary_expansion(Angle(1, 2), 2, 4);
    CHECK(e.digits == std::vector<int>{1, 0, 0, 0});
    CHECK(e.repeat_start == 1);

    e = d_ary_expansion(Angle(1, 7), 2, 6);
    CHECK(e.digits == std::vector<int>{0, 0, 1, 0, 0, 1});
    CHECK(e.repeat_start == 0);
}

TEST_CASE("cyclically_between on strict anticlockwise arcs") {
    CHECK(cyclically_between(Angle(0, 1), Angle(1, 4), Angle(1, 2)));
    CHECK_FALSE(cyclically_between(Angle(1, 2), Angle(1, 4), Angle(0, 1)));
    CHECK(cyclically_between(Angle(3, 4), Angle(7, 8), Angle(1, 4)));
    CHECK_FALSE(cyclically_between(Angle(0, 1), Angle(0, 1), Angle(1, 2)));
}

TEST_CASE("pairs_unlinked matches hand-checked configurations") {
    CHECK(pairs_unlinked(RayPair(Angle(1, 7), Angle(2, 7)), RayPair(Angle(9, 14), Angle(11, 14))));
    CHECK_FALSE(pairs_unlinked(RayPair(Angle(0, 1), Angle(1, 2)), RayPair(Angle(1, 4), Angle(3, 4))));
    CHECK(pairs_unlinked(RayPair(Angle(1, 3), Angle(2, 3)), RayPair(Angle(1, 3), Angle(2, 3))));
}

TEST_CASE("pairs_unlinked is symmetric and rotation invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> den(2, 64);
    for (int trial = 0; trial < 500; ++trial) {
        auto pick = [&]() {
            int q = den(rng);
            std::uniform_int_distribution<int> num(0, q - 1);
            return Angle(num(rng), q);
        };
        Angle a = pick(), b = pick(), c = pick(), d = pick();
        if (a == b || c == d) continue;
        RayPair p(a, b), q(c, d);
        bool u = pairs_unlinked(p, q);
        CHECK(u == pairs_unlinked(q, p));
        // rotate all four angles by the same rational
        Angle rot = pick();
        auto add = [&](const Angle& x) {
            return Angle(static_cast<std::int64_t>(x.num) * rot.den + static_cast<std::int64_t>(rot.num) * x.den,
                         static_cast<std::int64_t>(x.den) * rot.den);
        };
        Angle ra = add(a), rb = add(b), rc = add(c), rd = add(d);
        if (ra == rb || rc == rd) continue;
        CHECK(u == pairs_unlinked(RayPair(ra, rb), RayPair(rc, rd)));
    }
}

TEST_CASE("multiply_by_d is a bijection on denominators coprime to d") {
    for (int d = 2; d <= 3; ++d) {
        for (int q : {3, 5, 7, 9, 11, 255, 1023}) {
            if (std::gcd(q, d) != 1) continue;
            std::map<std::string, int> hits;
            for (int n = 0; n < q; ++n) {
                if (std::gcd(n, q) != 1 && n != 0) continue;
                Angle t(n, q);
                hits[multiply_by_d(t, d).str()]++;
            }
            for (const auto& [_, count] : hits) CHECK(count == 1);
        }
    }
}

TEST_CASE("angle orbit period divides p for angles of period p") {
    for (int d = 2; d <= 3; ++d) {
        for (int p = 1; p <= 5; ++p) {
            for (const Angle& t : angles_of_period(p, d)) {
                auto o = angle_orbit(t, d);
                CHECK(o.preperiod == 0);
                CHECK(p % o.period == 0);
            }
        }
    }
}

TEST_CASE("digit streams canonicalize and reconstruct") {
    DigitStream s = digit_stream(Angle(1, 3), 2);
    CHECK(s.pre.empty());
    CHECK(s.cycle == std::vector<int>{0, 1});
    CHECK(stream_to_angle(s) == Angle(1, 3));

    s = digit_stream(Angle(1, 2), 2);
    CHECK(s.pre == std::vector<int>{1});
    CHECK(s.cycle == std::vector<int>{0});
    CHECK(stream_to_angle(s) == Angle(1, 2));

    // shifted stream equals the stream of the doubled angle
    for (int q : {3, 5, 7, 12, 100, 255}) {
        for (int n = 1; n < q; ++n) {
            Angle t(n, q);
            CHECK(digit_stream(t, 2).shifted(1) == digit_stream(multiply_by_d(t, 2), 2));
        }
    }
}

TEST_CASE("preimages under multiplication by d") {
    auto pre = preimages(Angle(1, 3), 2);
    REQUIRE(pre.size() == 2);
    CHECK(pre[0] == Angle(1, 6));
    CHECK(pre[1] == Angle(2, 3));
    for (const Angle& t : pre) CHECK(multiply_by_d(t, 2) == Angle(1, 3));
}
