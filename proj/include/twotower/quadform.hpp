#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "twotower/arith.hpp"

namespace twotower {

/// Binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm
{
    Int a = 1, b = 0, c = 1;

    Int discriminant() const { return narrow(Wide(b) * b - Wide(4) * a * c); }

    friend bool operator==(QuadForm const &, QuadForm const &) = default;
    friend auto operator<=>(QuadForm const &, QuadForm const &) = default;
};

inline std::string to_string(QuadForm const & f)
{
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

inline std::ostream & operator<<(std::ostream & o, QuadForm const & f) { return o << to_string(f); }

/// Form with leading coefficient a and middle coefficient b; c is recovered from D.
inline QuadForm form_from_ab(Int a, Int b, Int d)
{
    Wide num = Wide(b) * b - d;
    Wide den = Wide(4) * a;
    if (a == 0 || num % den != 0)
        fail(ErrorKind::InvalidInput, "no form (" + std::to_string(a) + "," + std::to_string(b) +
                                          ",*) of discriminant " + std::to_string(d));
    return {a, b, narrow(num / den)};
}

inline QuadForm principal_form(Int d)
{
    return mod(d, 4) == 0 ? QuadForm{1, 0, narrow(-Wide(d) / 4)} : QuadForm{1, 1, narrow((1 - Wide(d)) / 4)};
}

inline QuadForm inverse(QuadForm const & f) { return {f.a, -f.b, f.c}; }

namespace detail {

inline void require_nonsquare(Int d)
{
    if (is_square(d))
        fail(ErrorKind::SquareDiscriminant, std::to_string(d) + " is a square");
}

// Bring b into (-a, a] by x -> x + s y.
inline QuadForm normalize_definite(QuadForm f, Int d)
{
    Wide two_a = Wide(2) * f.a;
    Wide s = floor_div(Wide(f.a) - f.b, two_a);
    Wide b = f.b + two_a * s;
    return {f.a, narrow(b), narrow((b * b - d) / (Wide(4) * f.a))};
}

} // namespace detail

/// Reduced means |b| <= a <= c, with b >= 0 when |b| = a or a = c.
inline bool is_reduced_definite(QuadForm const & f)
{
    if (f.a <= 0 || f.b > f.a || f.b <= -f.a || f.a > f.c)
        return false;
    return !(f.a == f.c && f.b < 0);
}

/// Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
inline bool is_reduced_indefinite(QuadForm const & f, Int d)
{
    if (f.b <= 0 || Wide(f.b) * f.b >= d)
        return false;
    Wide two_a = Wide(2) * abs_int(f.a);
    Wide lo = two_a + f.b; // sqrt(D) < 2|a| + b
    Wide hi = two_a - f.b; // 2|a| - b < sqrt(D)
    return lo * lo > d && (hi <= 0 || hi * hi < d);
}

/// Reduction operator rho for indefinite forms: (a,b,c) -> (c, b', c') with
/// b' == -b mod 2c normalized against |c| and sqrt(D).
inline QuadForm rho(QuadForm const & f, Int d, Int sqrt_floor)
{
    Int const abs_c = abs_int(f.c);
    Wide two_c = Wide(2) * abs_c;
    Wide bp;
    if (abs_c > sqrt_floor) {
        // -|c| < b' <= |c|
        bp = mod(Wide(-f.b), two_c);
        if (bp > abs_c)
            bp -= two_c;
    } else {
        // sqrt(D) - 2|c| < b' < sqrt(D)
        bp = Wide(sqrt_floor) - mod(Wide(sqrt_floor) + f.b, two_c);
    }
    return {f.c, narrow(bp), narrow((bp * bp - d) / (Wide(4) * f.c))};
}

/// Reduce a form of nonsquare discriminant. For D < 0 the result is the unique
/// reduced form in the class (the form must be positive definite). For D > 0 the
/// result is some reduced form on the class's cycle; see canonical_on_cycle.
inline QuadForm reduce(QuadForm f)
{
    Int const d = f.discriminant();
    detail::require_nonsquare(d);
    if (d < 0) {
        if (f.a <= 0)
            fail(ErrorKind::InvalidInput, "definite forms must be positive: " + to_string(f));
        f = detail::normalize_definite(f, d);
        while (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            f = detail::normalize_definite(f, d);
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
    Int const s = isqrt(d);
    for (int guard = 0; !is_reduced_indefinite(f, d); ++guard) {
        if (guard > 10'000'000)
            fail(ErrorKind::InvalidInput, "indefinite reduction did not terminate");
        f = rho(f, d, s);
    }
    return f;
}

/// The rho-cycle of a reduced indefinite form, starting at f.
inline std::vector<QuadForm> reduction_cycle(QuadForm const & f)
{
    Int const d = f.discriminant();
    if (d <= 0 || !is_reduced_indefinite(f, d))
        fail(ErrorKind::InvalidInput, "reduction_cycle expects a reduced indefinite form");
    Int const s = isqrt(d);
    std::vector<QuadForm> cycle{f};
    for (QuadForm g = rho(f, d, s); g != f; g = rho(g, d, s))
        cycle.push_back(g);
    return cycle;
}

/// Fixed total order used to pick one representative per cycle: a > 0 first,
/// then lexicographically least (a, b).
inline bool canonical_less(QuadForm const & x, QuadForm const & y)
{
    bool xp = x.a > 0, yp = y.a > 0;
    if (xp != yp)
        return xp;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

inline QuadForm canonical_on_cycle(std::vector<QuadForm> const & cycle)
{
    QuadForm best = cycle.front();
    for (auto const & g : cycle) {
        if (canonical_less(g, best))
            best = g;
    }
    return best;
}

/// Canonical representative of f's proper equivalence class (walks the cycle when D > 0).
inline QuadForm canonical(QuadForm const & f)
{
    QuadForm r = reduce(f);
    if (r.discriminant() < 0)
        return r;
    return canonical_on_cycle(reduction_cycle(r));
}

/// Gauss composition (Dirichlet's united forms), returned reduced.
inline QuadForm compose(QuadForm const & f, QuadForm const & g)
{
    Int const d = f.discriminant();
    if (g.discriminant() != d)
        fail(ErrorKind::DiscriminantMismatch, to_string(f) + " and " + to_string(g) + " differ in discriminant");
    QuadForm const x = reduce(f);
    QuadForm const y = reduce(g);

    Int const half_sum = narrow((Wide(x.b) + y.b) / 2);
    auto const [d1, u1, v1] = ext_gcd(x.a, y.a);
    auto const [e, u2, v2] = ext_gcd(d1, half_sum);
    // x.a * (u1 u2) + y.a * (v1 u2) + half_sum * v2 = e
    Wide const cx = Wide(u1) * u2;
    Wide const cy = Wide(v1) * u2;
    Wide const cz = v2;

    Wide const big_a = Wide(x.a) / e * (Wide(y.a) / e);
    Wide const two_a = 2 * (big_a < 0 ? -big_a : big_a);
    Wide const prod_term = (Wide(x.b) * y.b + d) / 2;
    // Each term taken mod 2|A|*e before summing keeps the numbers small.
    Wide const m = two_a * e;
    Wide num = mod(Wide(x.a) * y.b % m * mod(cx, m), m);
    num = (num + mod(Wide(y.a) * x.b % m * mod(cy, m), m)) % m;
    num = (num + mod(prod_term % m * mod(cz, m), m)) % m;
    if (num % e != 0)
        fail(ErrorKind::InvalidInput, "composition failed: forms not primitive?");
    Wide b3 = mod(num / e, two_a);
    Wide const c3 = (b3 * b3 - d) / (Wide(4) * big_a);
    return reduce({narrow(big_a), narrow(b3), narrow(c3)});
}

inline QuadForm power(QuadForm f, Int e)
{
    Int const d = f.discriminant();
    if (e < 0) {
        f = inverse(f);
        e = -e;
    }
    QuadForm result = reduce(principal_form(d));
    QuadForm base = reduce(f);
    while (e) {
        if (e & 1)
            result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

} // namespace twotower
