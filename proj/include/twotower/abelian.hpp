#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "twotower/arith.hpp"
#include "twotower/primes.hpp"
#include "twotower/quadform.hpp"

namespace twotower {

/// Invariant-factor decomposition of an explicitly enumerated finite abelian group.
/// Elements are indices 0..n-1.
struct GroupDecomposition
{
    std::vector<Int> divisors;                // d_1 | d_2 | ... , each > 1
    std::vector<std::size_t> generators;      // one per divisor
    std::vector<std::vector<Int>> coordinates; // exponent vector of each element w.r.t. generators

    Int order_of(std::size_t element) const
    {
        Int o = 1;
        auto const & c = coordinates[element];
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            Int oi = divisors[i] / std::gcd(c[i], divisors[i]);
            o = std::lcm(o, oi);
        }
        return o;
    }
};

/*
 * Repeatedly pick an element of maximal order in G/H, correct it by a
 * combination of the earlier generators so that its order in G equals its
 * order in G/H, and enlarge H by the cyclic group it spans. Coset orders are
 * found by stripping prime factors from |G/H|.
 */
template <class Mul>
GroupDecomposition decompose_abelian_group(std::size_t n, std::size_t identity, Mul && mul)
{
    auto pow = [&](std::size_t x, Int e) {
        std::size_t result = identity, base = x;
        while (e) {
            if (e & 1)
                result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    };

    std::vector<char> in_h(n, 0);
    std::vector<std::size_t> h_elems{identity};
    std::vector<std::vector<Int>> coords(n);
    in_h[identity] = 1;

    std::vector<Int> chain;            // m_1, m_2, ... (each divides the previous)
    std::vector<std::size_t> basis;

    while (h_elems.size() < n) {
        auto const cosets = static_cast<Int>(n / h_elems.size());
        auto const primes = distinct_prime_factors(cosets);
        std::size_t best = identity;
        Int best_order = 0;
        for (std::size_t x = 0; x < n && best_order < cosets; ++x) {
            if (in_h[x])
                continue;
            Int o = cosets;
            for (Int p : primes) {
                while (o % p == 0 && in_h[pow(x, o / p)])
                    o /= p;
            }
            if (o > best_order) {
                best_order = o;
                best = x;
            }
        }
        Int const m = best_order;
        auto const & rel = coords[pow(best, m)];
        std::size_t g = best;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (rel[i] % m != 0)
                throw std::logic_error("decompose_abelian_group: relation not divisible by coset order");
            Int const shift = mod(-(rel[i] / m), chain[i]);
            g = mul(g, pow(basis[i], shift));
        }
        if (pow(g, m) != identity)
            throw std::logic_error("decompose_abelian_group: corrected generator has wrong order");

        std::vector<std::size_t> grown;
        grown.reserve(h_elems.size() * static_cast<std::size_t>(m));
        for (std::size_t h : h_elems) {
            coords[h].push_back(0);
            grown.push_back(h);
        }
        std::size_t gj = identity;
        for (Int j = 1; j < m; ++j) {
            gj = mul(gj, g);
            for (std::size_t h : h_elems) {
                std::size_t y = mul(h, gj);
                if (in_h[y])
                    throw std::logic_error("decompose_abelian_group: subgroup not direct");
                in_h[y] = 1;
                coords[y] = coords[h];
                coords[y].back() = j;
                grown.push_back(y);
            }
        }
        h_elems = std::move(grown);
        chain.push_back(m);
        basis.push_back(g);
    }

    GroupDecomposition out;
    out.divisors.assign(chain.rbegin(), chain.rend());
    out.generators.assign(basis.rbegin(), basis.rend());
    out.coordinates.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        out.coordinates[x].assign(coords[x].rbegin(), coords[x].rend());
    return out;
}

/// Elementary-divisor description of a class group.
struct AbelianGroupStructure
{
    std::vector<Int> elementary_divisors; // d_1 | d_2 | ...
    std::vector<QuadForm> generators;

    Int order() const
    {
        Int o = 1;
        for (Int d : elementary_divisors)
            o *= d;
        return o;
    }

    /// d_{p^i}(A) = dim A^{p^(i-1)} / A^{p^i}: how many divisors are divisible by p^i.
    int rank(Int p, int i = 1) const
    {
        Int pi = 1;
        for (int k = 0; k < i; ++k)
            pi *= p;
        return static_cast<int>(std::count_if(elementary_divisors.begin(), elementary_divisors.end(),
                                              [pi](Int d) { return d % pi == 0; }));
    }

    /// Order of the 2-primary part.
    Int two_part_order() const
    {
        Int o = 1;
        for (Int d : elementary_divisors)
            o <<= v2(d);
        return o;
    }

    std::vector<Int> two_part_divisors() const
    {
        std::vector<Int> out;
        for (Int d : elementary_divisors) {
            if (d % 2 == 0)
                out.push_back(Int(1) << v2(d));
        }
        return out;
    }

    friend bool operator==(AbelianGroupStructure const & a, AbelianGroupStructure const & b)
    {
        return a.elementary_divisors == b.elementary_divisors;
    }
};

inline std::string to_string(AbelianGroupStructure const & g)
{
    if (g.elementary_divisors.empty())
        return "trivial";
    std::ostringstream o;
    for (std::size_t i = 0; i < g.elementary_divisors.size(); ++i)
        o << (i ? " x " : "") << "C" << g.elementary_divisors[i];
    return o.str();
}

} // namespace twotower
