#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "twotower/error.hpp"

namespace twotower {

/* All library integers are 64-bit signed; intermediate products go through
 * 128-bit and every narrowing is checked, so overflow is an Error and never
 * a silent wraparound. */
using Int = std::int64_t;
using Wide = __int128;

inline Int narrow(Wide x)
{
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
        fail(ErrorKind::Overflow, "value does not fit in 64 bits");
    return static_cast<Int>(x);
}

inline Int checked_mul(Int a, Int b) { return narrow(Wide(a) * b); }
inline Int checked_add(Int a, Int b) { return narrow(Wide(a) + b); }

inline Int abs_int(Int x)
{
    if (x == std::numeric_limits<Int>::min())
        fail(ErrorKind::Overflow, "cannot negate INT64_MIN");
    return x < 0 ? -x : x;
}

/// Remainder in [0, |m|).
inline Int mod(Int a, Int m)
{
    Int r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline Wide mod(Wide a, Wide m)
{
    Wide r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

/// Floor division for b > 0.
inline Int floor_div(Int a, Int b)
{
    Int q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

inline Wide floor_div(Wide a, Wide b)
{
    Wide q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// floor(sqrt(n)) for n >= 0, exact.
inline Int isqrt(Int n)
{
    if (n < 0)
        fail(ErrorKind::InvalidInput, "isqrt of negative number");
    if (n < 2)
        return n;
    auto r = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(n)));
    while (Wide(r) * r > n)
        --r;
    while (Wide(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(Int n)
{
    if (n < 0)
        return false;
    Int r = isqrt(n);
    return r * r == n;
}

struct ExtendedGcd
{
    Int g, x, y; // g = a*x + b*y, g >= 0
};

inline ExtendedGcd ext_gcd(Int a, Int b)
{
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

inline int v2(Int n)
{
    return n == 0 ? 64 : __builtin_ctzll(static_cast<unsigned long long>(n));
}

/// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(Int a, Int n)
{
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            Int r = n & 7;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Full Kronecker symbol (a/n), defined for every pair of integers.
inline int kronecker(Int a, Int n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        if (a < 0)
            result = -result;
        n = abs_int(n);
    }
    if ((n & 1) == 0) {
        if ((a & 1) == 0)
            return 0;
        int e = v2(n);
        n >>= e;
        Int r = mod(a, 8);
        if ((e & 1) && (r == 3 || r == 5))
            result = -result;
    }
    if (n == 1)
        return result;
    return result * jacobi(a, n);
}

/// Square root of a modulo a prime p (Tonelli-Shanks); a must be a square mod p.
inline Int sqrt_mod_prime(Int a, Int p)
{
    if (p == 2)
        return mod(a, 2);
    if (p < 3 || p % 2 == 0)
        fail(ErrorKind::InvalidInput, std::to_string(p) + " is not an odd prime");
    auto const up = static_cast<std::uint64_t>(p);
    auto const ua = static_cast<std::uint64_t>(mod(a, p));
    if (ua == 0)
        return 0;
    if (jacobi(static_cast<Int>(ua), p) != 1)
        fail(ErrorKind::NoSquareRoot, std::to_string(a) + " is not a square mod " + std::to_string(p));
    if (p % 4 == 3)
        return static_cast<Int>(powmod(ua, (up + 1) / 4, up));

    std::uint64_t q = up - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (jacobi(static_cast<Int>(z), p) != -1)
        ++z;
    std::uint64_t c = powmod(z, q, up);
    std::uint64_t r = powmod(ua, (q + 1) / 2, up);
    std::uint64_t t = powmod(ua, q, up);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, up);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, up);
        r = mulmod(r, b, up);
        c = mulmod(b, b, up);
        t = mulmod(t, c, up);
        m = i;
    }
    return static_cast<Int>(r);
}

} // namespace twotower
