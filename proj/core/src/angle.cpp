#include "pzk/angle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace pzk {

using i64 = std::int64_t;
using i128 = __int128;

static i64 narrow(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error(std::string("integer overflow in ") + what);
    return static_cast<i64>(v);
}

Angle::Angle(i64 n, i64 d) {
    if (d <= 0) throw Error("angle denominator must be positive");
    n %= d;
    if (n < 0) n += d;
    i64 g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

bool Angle::operator<(const Angle& o) const {
    return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
}

std::string Angle::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Angle parse_angle(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Angle(std::stoll(text), 1);
        return Angle(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("cannot parse angle '" + text + "' (expected num/den)");
    }
}

Angle multiply_by_d(const Angle& t, int d) {
    if (d < 2) throw Error("multiplier d must be >= 2");
    i128 n = static_cast<i128>(t.num) * d % t.den;
    return Angle(static_cast<i64>(n), t.den);
}

AngleOrbit angle_orbit(const Angle& t, int d) {
    // Denominators never grow under t -> d*t mod 1, so the orbit is finite.
    AngleOrbit result;
    std::vector<Angle> orbit;
    std::unordered_map<std::string, int> index;  // "num/den" -> first index
    Angle cur = t;
    for (;;) {
        std::string key = cur.str();
        auto it = index.find(key);
        if (it != index.end()) {
            result.preperiod = it->second;
            result.period = static_cast<int>(orbit.size()) - it->second;
            result.orbit = std::move(orbit);
            return result;
        }
        index.emplace(std::move(key), static_cast<int>(orbit.size()));
        orbit.push_back(cur);
        cur = multiply_by_d(cur, d);
    }
}

std::int64_t checked_pow(i64 base, int exp, i64 cap) {
    i64 v = 1;
    for (int i = 0; i < exp; ++i) {
        i128 next = static_cast<i128>(v) * base;
        if (next > cap) throw Error("d^p exceeds cap");
        v = static_cast<i64>(next);
    }
    return v;
}

std::vector<Angle> angles_of_period(int p, int d, bool exact_period, i64 cap) {
    if (p < 1) throw Error("period must be >= 1");
    if (d < 2) throw Error("degree must be >= 2");
    i64 q = checked_pow(d, p, cap) - 1;
    std::vector<Angle> out;
    out.reserve(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k) {
        Angle t(k, q);
        if (exact_period && angle_orbit(t, d).period != p) continue;
        out.push_back(t);
    }
    return out;
}

DAryExpansion d_ary_expansion(const Angle& t, int d, int n) {
    if (n < 1) throw Error("expansion length must be >= 1");
    DAryExpansion e;
    e.digits.reserve(n);
    std::unordered_map<i64, int> first_seen;  // remainder -> digit index
    i64 rem = t.num;
    int repeat = -1;
    for (int i = 0; i < n; ++i) {
        if (repeat < 0) {
            auto it = first_seen.find(rem);
            if (it != first_seen.end()) repeat = it->second;
            else first_seen.emplace(rem, i);
        }
        i128 scaled = static_cast<i128>(rem) * d;
        e.digits.push_back(static_cast<int>(scaled / t.den));
        rem = static_cast<i64>(scaled % t.den);
    }
    if (repeat < 0) {
        // keep generating remainders (not digits) until the state repeats
        int i = n;
        for (;;) {
            auto it = first_seen.find(rem);
            if (it != first_seen.end()) { repeat = it->second; break; }
            first_seen.emplace(rem, i);
            rem = static_cast<i64>(static_cast<i128>(rem) * d % t.den);
            ++i;
        }
    }
    e.repeat_start = repeat;
    return e;
}

static bool cycle_has_period(const std::vector<int>& c, std::size_t p) {
    for (std::size_t i = 0; i + p < c.size(); ++i)
        if (c[i] != c[i + p]) return false;
    return true;
}

void DigitStream::canonicalize() {
    if (cycle.empty()) throw Error("digit stream needs a nonempty cycle");
    // minimal cycle length: smallest divisor period
    for (std::size_t p = 1; p < cycle.size(); ++p) {
        if (cycle.size() % p != 0) continue;
        if (cycle_has_period(cycle, p)) {
            cycle.resize(p);
            break;
        }
    }
    // minimal preperiod: absorb trailing pre digits that match the cycle tail
    while (!pre.empty() && pre.back() == cycle.back()) {
        pre.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
}

DigitStream DigitStream::shifted(std::size_t k) const {
    DigitStream s;
    s.base = base;
    if (k < pre.size()) {
        s.pre.assign(pre.begin() + static_cast<std::ptrdiff_t>(k), pre.end());
        s.cycle = cycle;
    } else {
        std::size_t r = (k - pre.size()) % cycle.size();
        s.cycle.assign(cycle.begin() + static_cast<std::ptrdiff_t>(r), cycle.end());
        s.cycle.insert(s.cycle.end(), cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(r));
    }
    s.canonicalize();
    return s;
}

std::string DigitStream::str() const {
    std::string out = ".";
    for (int d : pre) out += static_cast<char>('0' + d);
    out += '(';
    for (int d : cycle) out += static_cast<char>('0' + d);
    out += ")*";
    return out;
}

DigitStream digit_stream(const Angle& t, int base) {
    DigitStream s;
    s.base = base;
    std::unordered_map<i64, int> first_seen;  // remainder -> digit index
    std::vector<int> digits;
    i64 rem = t.num;
    for (;;) {
        auto it = first_seen.find(rem);
        if (it != first_seen.end()) {
            int start = it->second;
            s.pre.assign(digits.begin(), digits.begin() + start);
            s.cycle.assign(digits.begin() + start, digits.end());
            s.canonicalize();
            return s;
        }
        first_seen.emplace(rem, static_cast<int>(digits.size()));
        i128 scaled = static_cast<i128>(rem) * base;
        digits.push_back(static_cast<int>(scaled / t.den));
        rem = static_cast<i64>(scaled % t.den);
    }
}

Angle stream_to_angle(const DigitStream& s) {
    // value = (P * (B^r - 1) + C) / (B^a * (B^r - 1)),  a = |pre|, r = |cycle|
    const i64 limit = INT64_MAX / 2;
    i64 Ba = 1, Br = 1;
    for (std::size_t i = 0; i < s.pre.size(); ++i) {
        if (Ba > limit / s.base) throw Error("tuned angle does not fit in 64-bit rational");
        Ba *= s.base;
    }
    for (std::size_t i = 0; i < s.cycle.size(); ++i) {
        if (Br > limit / s.base) throw Error("tuned angle does not fit in 64-bit rational");
        Br *= s.base;
    }
    i64 P = 0, C = 0;
    for (int d : s.pre) P = narrow(static_cast<i128>(P) * s.base + d, "stream_to_angle");
    for (int d : s.cycle) C = narrow(static_cast<i128>(C) * s.base + d, "stream_to_angle");
    i128 numerator = static_cast<i128>(P) * (Br - 1) + C;
    i128 denominator = static_cast<i128>(Ba) * (Br - 1);
    if (denominator == 0) throw Error("degenerate digit stream");  // r >= 1 and base >= 2 forbid this
    auto gcd128 = [](i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    };
    i128 g = gcd128(numerator, denominator);
    if (g > 0) { numerator /= g; denominator /= g; }
    return Angle(narrow(numerator, "stream_to_angle"), narrow(denominator, "stream_to_angle"));
}

// (x - a) mod 1 < (b - a) mod 1, strictly, via cross multiplication
bool cyclically_between(const Angle& a, const Angle& x, const Angle& b) {
    if (a == b) throw Error("cyclically_between needs distinct arc endpoints");
    auto frac_sub = [](const Angle& u, const Angle& v) {
        // (u - v) mod 1 as exact pair (num, den)
        i128 num = static_cast<i128>(u.num) * v.den - static_cast<i128>(v.num) * u.den;
        i128 den = static_cast<i128>(u.den) * v.den;
        num %= den;
        if (num < 0) num += den;
        return std::pair<i128, i128>(num, den);
    };
    auto [xn, xd] = frac_sub(x, a);
    auto [bn, bd] = frac_sub(b, a);
    if (xn == 0) return false;  // x == a
    // xn/xd < bn/bd  <=>  xn*bd < bn*xd ; magnitudes stay below 2^126
    return static_cast<i128>(xn) * bd < static_cast<i128>(bn) * xd;
}

RayPair::RayPair(const Angle& x, const Angle& y) {
    if (x == y) throw Error("ray pair needs two distinct angles");
    if (x < y) { a = x; b = y; }
    else { a = y; b = x; }
}

bool pairs_unlinked(const RayPair& p, const RayPair& q) {
    if (q.a == p.a || q.a == p.b || q.b == p.a || q.b == p.b) return true;
    bool a_inside = cyclically_between(p.a, q.a, p.b);
    bool b_inside = cyclically_between(p.a, q.b, p.b);
    return a_inside == b_inside;
}

std::vector<Angle> preimages(const Angle& t, int d) {
    std::vector<Angle> out;
    out.reserve(d);
    for (int j = 0; j < d; ++j) {
        i128 num = static_cast<i128>(t.num) + static_cast<i128>(j) * t.den;
        i128 den = static_cast<i128>(t.den) * d;
        out.emplace_back(narrow(num, "preimages"), narrow(den, "preimages"));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pzk
