#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twotower/catalog.hpp"
#include "twotower/classgroup.hpp"
#include "twotower/discriminant.hpp"
#include "twotower/redei.hpp"

namespace twotower {

using PartialTuple = std::vector<std::optional<PrimeDiscriminant>>;

/// Optional extra test on a candidate odd prime q for slot `slot`, given the slots filled so far.
using SlotFilter = std::function<bool(std::size_t slot, Int q, PartialTuple const & filled)>;

namespace detail {

inline void check_template(CatalogEntry const & e, PartialTuple const & partial)
{
    if (partial.size() != 5)
        fail(ErrorKind::TemplateMismatch, "case " + e.tag + " needs five slots");
    for (std::size_t i = 0; i < 5; ++i) {
        if (!partial[i])
            continue;
        auto const d = *partial[i];
        bool const sign_ok = e.signs[i] == '*' || (e.signs[i] == '-') == d.negative();
        bool const m4 = d.value() == -4;
        bool const m4_ok = e.minus4 == -2 || (e.minus4 == -1 ? !m4 : (static_cast<int>(i) == e.minus4) == m4);
        if (!sign_ok || !m4_ok)
            fail(ErrorKind::TemplateMismatch, to_string(d) + " cannot sit at position " + std::to_string(i + 1) +
                                                  " of case " + e.tag);
        for (std::size_t j = 0; j < 5; ++j) {
            if (j == i || !partial[j])
                continue;
            char const c = e.pattern[i][j];
            if ((c == '0' || c == '1') && symbol_bit(d.value(), partial[j]->prime()) != c - '0')
                fail(ErrorKind::TemplateMismatch, "symbol (" + to_string(d) + "/" +
                                                      std::to_string(partial[j]->prime()) + ") contradicts case " +
                                                      e.tag);
        }
    }
}

// Residue conditions on an odd prime q placed at `slot` (sign s) against the filled slots.
inline std::vector<ResidueCondition> slot_conditions(CatalogEntry const & e, PartialTuple const & filled,
                                                     std::size_t slot)
{
    bool const negative = e.signs[slot] == '-';
    std::vector<ResidueCondition> conds{{4, {negative ? 3 : 1}}};
    for (std::size_t j = 0; j < 5; ++j) {
        if (j == slot || !filled[j])
            continue;
        char const row = e.pattern[slot][j]; // (q*/p_j)
        char const col = e.pattern[j][slot]; // (p_j*/q)
        if (row == '*' && col == '*')
            continue;
        auto const pj = *filled[j];
        Int const m = pj.prime() == 2 ? 8 : 8 * pj.prime();
        ResidueCondition c{m, {}};
        for (Int r = 1; r < m; r += 2) {
            if (std::gcd(r, m) != 1)
                continue;
            Int const qstar = negative ? -r : r;
            if (mod(qstar, 4) != 1)
                continue;
            bool ok = true;
            if (row != '*')
                ok = ok && symbol_bit(qstar, pj.prime()) == row - '0';
            if (col != '*')
                ok = ok && symbol_bit(pj.value(), r) == col - '0';
            if (ok)
                c.allowed.push_back(r);
        }
        conds.push_back(std::move(c));
    }
    return conds;
}

} // namespace detail

/// Fill the empty slots of `partial` with odd primes <= bound so that the result is
/// classified as `tag`; up to `count` completions, smallest first in slot order.
inline std::vector<QuadFieldSpec> complete_tuple(std::string const & tag, PartialTuple partial, Int bound,
                                                 std::size_t count, SlotFilter const & filter = {})
{
    auto const & e = catalog_entry(tag);
    detail::check_template(e, partial);
    if (e.minus4 >= 0 && !partial[e.minus4])
        partial[e.minus4] = PrimeDiscriminant::from_value(-4);

    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < 5; ++i) {
        if (!partial[i])
            open.push_back(i);
    }
    std::vector<QuadFieldSpec> out;
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (out.size() >= count)
            return;
        if (k == open.size()) {
            std::vector<PrimeDiscriminant> discs;
            for (auto const & d : partial)
                discs.push_back(*d);
            QuadFieldSpec spec(discs);
            if (classify_open_case(spec).tag == tag)
                out.push_back(spec);
            return;
        }
        std::size_t const slot = open[k];
        std::vector<Int> candidates;
        try {
            candidates = crt_prime_search(detail::slot_conditions(e, partial, slot), bound);
        } catch (Error const & err) {
            if (err.kind() == ErrorKind::NoSolution)
                return;
            throw;
        }
        for (Int q : candidates) {
            if (out.size() >= count)
                return;
            if (q == 2)
                continue;
            bool used = false;
            for (auto const & d : partial)
                used = used || (d && d->prime() == q);
            if (used || (filter && !filter(slot, q, partial)))
                continue;
            partial[slot] = PrimeDiscriminant::from_odd_prime(q);
            fill(k + 1);
            partial[slot].reset();
        }
    };
    fill(0);
    if (out.empty())
        fail(ErrorKind::Exhausted, "no completion for case " + tag + " with primes <= " + std::to_string(bound));
    return out;
}

enum class BaseTemplate { Imag3Neg, ImagWithMinus4, RealPosPair, ImagMixedPair };

inline std::string to_string(BaseTemplate t)
{
    switch (t) {
    case BaseTemplate::Imag3Neg:
        return "imaginary-3-neg";
    case BaseTemplate::ImagWithMinus4:
        return "imaginary-with-minus4";
    case BaseTemplate::RealPosPair:
        return "real-pos-pair";
    case BaseTemplate::ImagMixedPair:
        return "imaginary-mixed-pair";
    }
    return "?";
}

inline BaseTemplate parse_base_template(std::string const & s)
{
    for (auto t : {BaseTemplate::Imag3Neg, BaseTemplate::ImagWithMinus4, BaseTemplate::RealPosPair,
                   BaseTemplate::ImagMixedPair}) {
        if (s == to_string(t))
            return t;
    }
    if (s == "imaginary-with--4")
        return BaseTemplate::ImagWithMinus4;
    fail(ErrorKind::InvalidInput, "unknown template " + s);
}

/// Whether a factored discriminant fits the template's sign and -4 shape.
inline bool matches_template(BaseTemplate t, QuadFieldSpec const & s)
{
    auto const & d = s.discs();
    auto neg = [](PrimeDiscriminant x) { return x.negative(); };
    bool const has_m4 = std::any_of(d.begin(), d.end(), [](auto x) { return x.value() == -4; });
    switch (t) {
    case BaseTemplate::Imag3Neg:
        return s.t() == 3 && std::all_of(d.begin(), d.end(), neg) && !has_m4;
    case BaseTemplate::ImagWithMinus4:
        // -4 present, or three negative discs = 5 mod 8 (which join -4 in matrix C)
        return s.t() == 3 && s.imaginary() &&
               (has_m4 || std::all_of(d.begin(), d.end(), [](auto x) { return x.negative() && mod(x.value(), 8) == 5; }));
    case BaseTemplate::RealPosPair:
        return s.t() == 2 && !neg(d[0]) && !neg(d[1]);
    case BaseTemplate::ImagMixedPair:
        return s.t() == 2 && neg(d[0]) != neg(d[1]);
    }
    return false;
}

/// All fundamental D with |D| <= bound fitting the template, R_F rank <= redei_rank_max
/// and wide |Cl_2| >= min_cl2, ascending by |D|.
inline std::vector<QuadFieldSpec> find_base_fields(BaseTemplate t, Int min_cl2, int redei_rank_max, Int bound)
{
    bool const real = t == BaseTemplate::RealPosPair;
    std::vector<QuadFieldSpec> out;
    for (Int n = 3; n <= bound; ++n) {
        Int const d = real ? n : -n;
        if (!is_fundamental(d))
            continue;
        auto const spec = prime_disc_factorization(d);
        if (!matches_template(t, spec) || f2_rank(redei_matrix(spec)) > redei_rank_max)
            continue;
        if (wide_class_group(d).two_part_order() >= min_cl2)
            out.push_back(spec);
    }
    return out;
}

struct FamilyMember
{
    QuadFieldSpec field;
    std::vector<Int> expected_two_part; // claimed 2-class group, elementary divisors
    std::vector<Int> computed_two_part;
    bool verified() const { return expected_two_part == computed_two_part; }
};

namespace detail {

inline std::optional<Int> family_sum(Int base, int n)
{
    // base^(2^(n-1)) with overflow detection
    Wide v = base;
    for (int i = 1; i < n; ++i) {
        v *= v;
        if (v > Wide(std::numeric_limits<Int>::max()) / 4)
            return std::nullopt;
    }
    return static_cast<Int>(v);
}

// Prime pairs (a, s - a) with a = ra mod m, s - a = rb mod m and factor * a * (s - a) within the
// discriminant bound; only the two ends of [0, s] can qualify, so scan x <= s/2 from below.
inline std::vector<std::pair<Int, Int>> sum_pairs(Int s, Int m, Int ra, Int rb, Int factor)
{
    std::vector<std::pair<Int, Int>> out;
    Int const limit = max_discriminant();
    for (Int x = 2; 2 * x <= s; ++x) {
        if (Wide(factor) * x * (s - x) > limit)
            break;
        Int const y = s - x;
        if (mod(x, m) == ra && mod(y, m) == rb && is_prime(x) && is_prime(y))
            out.emplace_back(x, y);
        else if (mod(y, m) == ra && mod(x, m) == rb && is_prime(x) && is_prime(y))
            out.emplace_back(y, x);
    }
    return out;
}

} // namespace detail

/// Imaginary fields (-q3)(+q5) with q3 = 3, q5 = 5 mod 8 and q3 + q5 = 4 (2 M^2)^(2^(n-1)), M odd,
/// claimed to have cyclic 2-class group of order 2^n. Only members within the discriminant bound.
inline std::vector<FamilyMember> dmw_family(int n, Int max_m, std::size_t limit)
{
    std::vector<FamilyMember> out;
    for (Int m = 1; m <= max_m && out.size() < limit; m += 2) {
        auto const pw = detail::family_sum(2 * m * m, n);
        if (!pw)
            break;
        for (auto [q3, q5] : detail::sum_pairs(4 * *pw, 8, 3, 5, 1)) {
            if (out.size() >= limit)
                break;
            auto const f = QuadFieldSpec::from_values({-q3, q5});
            out.push_back({f, {Int(1) << n}, wide_class_group(f.discriminant()).two_part_divisors()});
        }
    }
    return out;
}

/// Imaginary fields (-4)(-q3)(-q4) with q3 = 11, q4 = 7 mod 24 and q3 + q4 = 2 (3 m^2)^(2^(n-1)), m odd,
/// claimed to have 2-class group C2 x C2^n. Only members within the discriminant bound.
inline std::vector<FamilyMember> lopez_family(int n, Int max_m, std::size_t limit)
{
    std::vector<FamilyMember> out;
    for (Int m = 1; m <= max_m && out.size() < limit; m += 2) {
        auto const pw = detail::family_sum(3 * m * m, n);
        if (!pw)
            break;
        for (auto [q3, q4] : detail::sum_pairs(2 * *pw, 24, 11, 7, 4)) {
            if (out.size() >= limit)
                break;
            auto const f = QuadFieldSpec::from_values({-4, -q3, -q4});
            out.push_back({f, {2, Int(1) << n}, wide_class_group(f.discriminant()).two_part_divisors()});
        }
    }
    return out;
}

} // namespace twotower
