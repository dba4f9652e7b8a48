#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "twotower/arith.hpp"

namespace twotower {

/// Deterministic Miller-Rabin for the whole 64-bit range.
inline bool is_prime(Int n)
{
    if (n < 2)
        return false;
    for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    auto const un = static_cast<std::uint64_t>(n);
    std::uint64_t d = un - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Jim Sinclair's base set, valid for all n < 2^64.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        a %= un;
        if (a == 0)
            continue;
        std::uint64_t x = powmod(a, d, un);
        if (x == 1 || x == un - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, un);
            if (x == un - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

struct FactorConfig
{
    Int trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 20'000'000; // total effort across restarts
};

namespace detail {

// Brent's cycle variant of Pollard rho; returns 0 when the effort budget is spent.
inline std::uint64_t brent_rho(std::uint64_t n, std::uint64_t & budget)
{
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t c = 1; budget > 0; ++c) {
        std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
        std::uint64_t const m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
                budget = budget > m ? budget - m : 0;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    return 0;
}

inline void factor_into(std::uint64_t n, std::vector<Int> & out, std::uint64_t & budget)
{
    if (n == 1)
        return;
    if (is_prime(static_cast<Int>(n))) {
        out.push_back(static_cast<Int>(n));
        return;
    }
    std::uint64_t d = brent_rho(n, budget);
    if (d == 0)
        fail(ErrorKind::FactorizationFailed,
             "composite cofactor " + std::to_string(n) + " survived the effort bound");
    factor_into(d, out, budget);
    factor_into(n / d, out, budget);
}

} // namespace detail

/// Prime factors of n >= 1 with multiplicity, ascending.
inline std::vector<Int> factor(Int n, FactorConfig const & cfg = {})
{
    if (n < 1)
        fail(ErrorKind::InvalidInput, "factor expects n >= 1, got " + std::to_string(n));
    std::vector<Int> out;
    while (n % 2 == 0) {
        out.push_back(2);
        n /= 2;
    }
    for (Int d = 3; d <= cfg.trial_bound && d * d <= n; d += 2) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    std::uint64_t budget = cfg.rho_iterations;
    detail::factor_into(static_cast<std::uint64_t>(n), out, budget);
    std::sort(out.begin(), out.end());
    return out;
}

/// Prime -> exponent.
inline std::map<Int, int> factor_exponents(Int n)
{
    std::map<Int, int> result;
    for (Int p : factor(n))
        ++result[p];
    return result;
}

inline std::vector<Int> distinct_prime_factors(Int n)
{
    auto f = factor(n);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

inline std::vector<Int> primes_up_to(Int bound)
{
    std::vector<Int> primes;
    if (bound < 2)
        return primes;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (Int i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (Int j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return primes;
}

} // namespace twotower
