#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twotower/arith.hpp"
#include "twotower/primes.hpp"

namespace twotower {

/// One coprime factor p* of a quadratic field discriminant: -4, +8, -8, or
/// (-1)^((p-1)/2) p for an odd prime p.
class PrimeDiscriminant
{
    Int value_ = -4;

    explicit PrimeDiscriminant(Int v) : value_(v) {}

  public:
    PrimeDiscriminant() = default;

    static std::optional<PrimeDiscriminant> try_from_value(Int v)
    {
        if (v == -4 || v == 8 || v == -8)
            return PrimeDiscriminant(v);
        if (v == 0 || v == 1 || v == -1 || mod(v, 4) != 1)
            return std::nullopt;
        if (!is_prime(abs_int(v)))
            return std::nullopt;
        return PrimeDiscriminant(v);
    }

    static PrimeDiscriminant from_value(Int v)
    {
        auto d = try_from_value(v);
        if (!d)
            fail(ErrorKind::InvalidInput, std::to_string(v) + " is not a prime discriminant");
        return *d;
    }

    /// p* for an odd prime p.
    static PrimeDiscriminant from_odd_prime(Int p)
    {
        if (p < 3 || !is_prime(p))
            fail(ErrorKind::InvalidInput, std::to_string(p) + " is not an odd prime");
        return PrimeDiscriminant(p % 4 == 1 ? p : -p);
    }

    Int value() const { return value_; }
    Int prime() const { return (value_ == -4 || value_ == 8 || value_ == -8) ? 2 : abs_int(value_); }
    bool negative() const { return value_ < 0; }
    bool is_two_adic() const { return prime() == 2; }

    friend bool operator==(PrimeDiscriminant, PrimeDiscriminant) = default;
    friend auto operator<=>(PrimeDiscriminant a, PrimeDiscriminant b) { return a.value_ <=> b.value_; }
};

inline std::string to_string(PrimeDiscriminant d)
{
    return (d.value() > 0 ? "+" : "") + std::to_string(d.value());
}

inline std::ostream & operator<<(std::ostream & o, PrimeDiscriminant d) { return o << to_string(d); }

/// D is the discriminant of a quadratic field (D != 1).
inline bool is_fundamental(Int d)
{
    if (d == 0 || d == 1)
        return false;
    auto squarefree = [](Int n) {
        for (auto const & [p, e] : factor_exponents(abs_int(n))) {
            if (e > 1)
                return false;
        }
        return true;
    };
    if (mod(d, 4) == 1)
        return squarefree(d);
    if (mod(d, 4) != 0)
        return false;
    Int m = d / 4;
    Int r = mod(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

/// An ordered tuple of pairwise coprime prime discriminants, K = Q(sqrt(prod p_i*)).
class QuadFieldSpec
{
    std::vector<PrimeDiscriminant> discs_;
    Int discriminant_ = 1;

  public:
    QuadFieldSpec() = default;

    explicit QuadFieldSpec(std::vector<PrimeDiscriminant> discs) : discs_(std::move(discs))
    {
        if (discs_.empty())
            fail(ErrorKind::InvalidInput, "a field needs at least one prime discriminant");
        std::vector<Int> primes;
        Int d = 1;
        for (auto p : discs_) {
            primes.push_back(p.prime());
            d = checked_mul(d, p.value());
        }
        std::sort(primes.begin(), primes.end());
        if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
            fail(ErrorKind::InvalidInput, "prime discriminants must have distinct primes");
        discriminant_ = d;
    }

    static QuadFieldSpec from_values(std::vector<Int> const & values)
    {
        std::vector<PrimeDiscriminant> discs;
        for (Int v : values)
            discs.push_back(PrimeDiscriminant::from_value(v));
        return QuadFieldSpec(std::move(discs));
    }

    std::vector<PrimeDiscriminant> const & discs() const { return discs_; }
    PrimeDiscriminant const & operator[](std::size_t i) const { return discs_[i]; }
    Int discriminant() const { return discriminant_; }
    std::size_t t() const { return discs_.size(); }
    bool imaginary() const { return discriminant_ < 0; }

    std::vector<Int> primes() const
    {
        std::vector<Int> out;
        for (auto d : discs_)
            out.push_back(d.prime());
        return out;
    }

    bool contains_prime(Int p) const
    {
        return std::any_of(discs_.begin(), discs_.end(), [p](auto d) { return d.prime() == p; });
    }

    /// Sub-field built from the chosen indices, in the given order.
    QuadFieldSpec subfield(std::vector<std::size_t> const & idx) const
    {
        std::vector<PrimeDiscriminant> sub;
        for (auto i : idx)
            sub.push_back(discs_.at(i));
        return QuadFieldSpec(std::move(sub));
    }

    QuadFieldSpec sorted() const
    {
        auto d = discs_;
        std::sort(d.begin(), d.end(), [](auto x, auto y) { return x.prime() < y.prime(); });
        return QuadFieldSpec(std::move(d));
    }

    friend bool operator==(QuadFieldSpec const & a, QuadFieldSpec const & b) { return a.discs_ == b.discs_; }
};

inline std::string to_string(QuadFieldSpec const & s)
{
    std::ostringstream o;
    o << "(";
    for (std::size_t i = 0; i < s.t(); ++i)
        o << (i ? "," : "") << to_string(s[i]);
    o << ")";
    return o.str();
}

/// Unique factorization of a fundamental discriminant into prime discriminants,
/// ordered by underlying prime (2 first).
inline QuadFieldSpec prime_disc_factorization(Int d)
{
    if (!is_fundamental(d))
        fail(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
    std::vector<PrimeDiscriminant> discs;
    Int odd_product = 1;
    for (Int p : distinct_prime_factors(abs_int(d))) {
        if (p == 2)
            continue;
        auto pd = PrimeDiscriminant::from_odd_prime(p);
        discs.push_back(pd);
        odd_product *= pd.value();
    }
    Int two_part = d / odd_product;
    if (two_part != 1)
        discs.insert(discs.begin(), PrimeDiscriminant::from_value(two_part));
    return QuadFieldSpec(std::move(discs));
}

/// One congruence condition: x mod modulus must lie in `allowed`.
struct ResidueCondition
{
    Int modulus;
    std::vector<Int> allowed;
};

/// All primes <= range_bound meeting every condition, ascending.
inline std::vector<Int> crt_prime_search(std::vector<ResidueCondition> const & conditions, Int range_bound)
{
    // Merge conditions into one residue set while it stays small; the rest act as filters.
    constexpr std::size_t kMergeCap = 1 << 20;
    Int modulus = 1;
    std::vector<Int> residues{0};
    std::vector<ResidueCondition> filters;

    auto normalized = [](ResidueCondition const & c) {
        if (c.modulus < 1)
            fail(ErrorKind::InvalidInput, "modulus must be positive");
        std::vector<Int> r;
        for (Int a : c.allowed)
            r.push_back(mod(a, c.modulus));
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    };

    for (auto const & cond : conditions) {
        auto allowed = normalized(cond);
        if (allowed.empty())
            fail(ErrorKind::NoSolution, "condition modulo " + std::to_string(cond.modulus) + " allows nothing");
        Int g = std::gcd(modulus, cond.modulus);
        Wide lcm = Wide(modulus / g) * cond.modulus;
        if (lcm > range_bound * Wide(4) + 4 || residues.size() * allowed.size() > kMergeCap) {
            filters.push_back({cond.modulus, allowed});
            continue;
        }
        auto const new_mod = static_cast<Int>(lcm);
        std::vector<Int> merged;
        for (Int r : residues) {
            for (Int s : allowed) {
                if (mod(r - s, g) != 0)
                    continue;
                // r + modulus*k == s (mod cond.modulus)
                auto [gg, inv, unused] = ext_gcd(modulus / g, cond.modulus / g);
                (void)gg;
                (void)unused;
                Int m2 = cond.modulus / g;
                Int k = m2 == 1 ? 0 : static_cast<Int>(mod(Wide((s - r) / g) * inv, Wide(m2)));
                merged.push_back(static_cast<Int>(mod(Wide(r) + Wide(modulus) * k, Wide(new_mod))));
            }
        }
        if (merged.empty())
            fail(ErrorKind::NoSolution, "residue system is inconsistent");
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        modulus = new_mod;
        residues = std::move(merged);
    }

    std::vector<Int> out;
    for (Int r : residues) {
        for (Int x = r; x <= range_bound; x += modulus) {
            if (!is_prime(x))
                continue;
            bool ok = std::all_of(filters.begin(), filters.end(), [x](ResidueCondition const & f) {
                return std::binary_search(f.allowed.begin(), f.allowed.end(), mod(x, f.modulus));
            });
            if (ok)
                out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace twotower
