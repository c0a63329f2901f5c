#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pzk/runtime.hpp"

namespace pzk {

// Rational angle in Q/Z, always stored reduced with 0 <= num < den.
// All arithmetic is exact; intermediate products go through 128-bit
// with overflow detection.
struct Angle {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Angle() = default;
    Angle(std::int64_t n, std::int64_t d);  // reduces mod 1, canonicalizes

    bool operator==(const Angle&) const = default;
    bool operator<(const Angle& o) const;

    std::string str() const;  // "num/den"
};

Angle parse_angle(const std::string& text);

// t |-> d*t mod 1, exact.
Angle multiply_by_d(const Angle& t, int d);

struct AngleOrbit {
    int preperiod = 0;
    int period = 1;
    std::vector<Angle> orbit;  // orbit[0..preperiod+period-1], orbit[preperiod+period] == orbit[preperiod]
};

AngleOrbit angle_orbit(const Angle& t, int d);

// All t with d^p * t == t mod 1, i.e. k/(d^p - 1).  With exact_period the
// list is filtered to orbits of exact period p.  Throws once d^p exceeds
// the cap.
std::vector<Angle> angles_of_period(int p, int d, bool exact_period = false,
                                    std::int64_t cap = (std::int64_t{1} << 20));

struct DAryExpansion {
    std::vector<int> digits;
    int repeat_start = 0;  // index where the repeating block of the full expansion begins
};

// First n digits of the base-d expansion.  Terminating expansions use the
// 0-tail representative.
DAryExpansion d_ary_expansion(const Angle& t, int d, int n);

// Full eventually periodic base-`base` digit expansion: `pre` digits then
// `cycle` repeating forever.  Canonical form has minimal cycle length and
// minimal preperiod, so two streams are equal as sequences iff the structs
// compare equal.  This is the exact representation behind angle tuning,
// where reduced denominators overflow any fixed-width integer.
struct DigitStream {
    int base = 2;
    std::vector<int> pre;
    std::vector<int> cycle;

    void canonicalize();
    bool operator==(const DigitStream&) const = default;

    int digit(std::size_t i) const {
        return i < pre.size() ? pre[i] : cycle[(i - pre.size()) % cycle.size()];
    }
    DigitStream shifted(std::size_t k) const;  // drop k leading digits, canonical
    std::string str() const;
};

DigitStream digit_stream(const Angle& t, int base);

// Exact reconstruction; throws Error when the value does not fit in a
// 64-bit reduced fraction.
Angle stream_to_angle(const DigitStream& s);

// True iff x lies strictly inside the anticlockwise arc from a to b.
bool cyclically_between(const Angle& a, const Angle& x, const Angle& b);

// Unordered pair of distinct angles, stored with a < b.
struct RayPair {
    Angle a, b;
    RayPair(const Angle& x, const Angle& y);
    bool operator==(const RayPair&) const = default;
};

// True iff {p.a, p.b} does not separate {q.a, q.b} on the circle.  Shared
// endpoints count as unlinked.
bool pairs_unlinked(const RayPair& p, const RayPair& q);

// The d preimages of t under multiplication by d: (t + j)/d.
std::vector<Angle> preimages(const Angle& t, int d);

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t cap);

}  // namespace pzk
