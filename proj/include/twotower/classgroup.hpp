#pragma once

#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twotower/abelian.hpp"
#include "twotower/arith.hpp"
#include "twotower/discriminant.hpp"
#include "twotower/primes.hpp"
#include "twotower/quadform.hpp"

namespace twotower {

namespace detail {

inline Int initial_max_discriminant()
{
    if (char const * env = std::getenv("TWO_TOWER_MAX_DISC")) {
        char * end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return 100'000'000;
}

inline std::atomic<Int> g_max_discriminant{initial_max_discriminant()};

} // namespace detail

/// Largest |D| for which class groups are computed (TWO_TOWER_MAX_DISC, default 10^8).
inline Int max_discriminant() { return detail::g_max_discriminant.load(); }
inline void set_max_discriminant(Int bound) { detail::g_max_discriminant.store(bound); }

inline void check_discriminant_bound(Int d)
{
    if (abs_int(d) > max_discriminant())
        fail(ErrorKind::BoundExceeded,
             "|" + std::to_string(d) + "| exceeds the discriminant bound " + std::to_string(max_discriminant()));
}

/// Period length of the continued fraction of sqrt(n), n > 0 not a square.
inline Int sqrt_cf_period(Int n)
{
    Int const a0 = isqrt(n);
    Int m = 0, d = 1, a = a0, len = 0;
    do {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        ++len;
    } while (a != 2 * a0);
    return len;
}

/// x^2 - D y^2 = -4 has a solution (D > 0 fundamental), i.e. the fundamental unit has norm -1.
inline bool negative_pell_solvable(Int d)
{
    if (d <= 0)
        fail(ErrorKind::InvalidInput, "negative Pell needs D > 0");
    detail::require_nonsquare(d);
    // For D = 1 mod 4 a norm -1 unit (a + b sqrt D)/2 cubes into Z[sqrt D], so sqrt(D) decides.
    Int const n = mod(d, 4) == 0 ? d / 4 : d;
    return sqrt_cf_period(n) % 2 == 1;
}

enum class ClassKind { Narrow, Wide };

inline std::string to_string(ClassKind k) { return k == ClassKind::Narrow ? "narrow" : "wide"; }

/// All form classes of one fundamental discriminant with the narrow group law and
/// the wide quotient by the class of the form representing -1.
class ClassGroup
{
    Int d_;
    std::vector<QuadForm> forms_;        // canonical representatives
    std::map<QuadForm, std::size_t> index_; // every reduced form -> class
    std::size_t identity_ = 0;
    GroupDecomposition narrow_;
    std::size_t minus_one_ = 0;          // class of (-1, b0, c0); identity when D < 0
    std::vector<std::size_t> coset_of_;  // class -> wide element
    std::vector<std::size_t> coset_rep_; // wide element -> class
    GroupDecomposition wide_;

    void enumerate_definite()
    {
        Int const n = -d_;
        for (Int a = 1; 3 * a * a <= n; ++a) {
            for (Int b = -a + 1; b <= a; ++b) {
                if (mod(b - d_, 2) != 0)
                    continue;
                Wide num = Wide(b) * b - d_;
                if (num % (4 * a) != 0)
                    continue;
                Int c = narrow(num / (4 * a));
                QuadForm f{a, b, c};
                if (!is_reduced_definite(f) || std::gcd(std::gcd(a, abs_int(b)), c) != 1)
                    continue;
                index_.emplace(f, forms_.size());
                forms_.push_back(f);
            }
        }
    }

    void enumerate_indefinite()
    {
        Int const s = isqrt(d_);
        std::vector<QuadForm> reduced;
        for (Int b = (d_ % 2 == 0 ? 2 : 1); b <= s; b += 2) {
            Int const nn = (d_ - b * b) / 4; // = -a c > 0
            if (nn <= 0)
                continue;
            std::vector<Int> divs{1};
            for (auto const & [p, e] : factor_exponents(nn)) {
                std::size_t sz = divs.size();
                Int pk = 1;
                for (int k = 1; k <= e; ++k) {
                    pk *= p;
                    for (std::size_t i = 0; i < sz; ++i)
                        divs.push_back(divs[i] * pk);
                }
            }
            for (Int m : divs) {
                for (Int a : {m, -m}) {
                    QuadForm f{a, b, -nn / a};
                    if (is_reduced_indefinite(f, d_) && std::gcd(std::gcd(m, b), abs_int(f.c)) == 1)
                        reduced.push_back(f);
                }
            }
        }
        std::sort(reduced.begin(), reduced.end());
        for (auto const & f : reduced) {
            if (index_.count(f))
                continue;
            auto cycle = reduction_cycle(f);
            std::size_t idx = forms_.size();
            for (auto const & g : cycle)
                index_.emplace(g, idx);
            forms_.push_back(canonical_on_cycle(cycle));
        }
    }

  public:
    explicit ClassGroup(Int d) : d_(d)
    {
        check_discriminant_bound(d);
        if (!is_fundamental(d))
            fail(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
        detail::require_nonsquare(d);
        if (d < 0)
            enumerate_definite();
        else
            enumerate_indefinite();
        identity_ = index_of(principal_form(d));
        narrow_ = decompose_abelian_group(forms_.size(), identity_, [this](std::size_t x, std::size_t y) {
            return mul(x, y);
        });

        minus_one_ = identity_;
        if (d > 0) {
            Int const b0 = d % 2;
            minus_one_ = index_of({-1, b0, (d - b0 * b0) / 4});
        }
        coset_of_.assign(forms_.size(), 0);
        std::vector<char> seen(forms_.size(), 0);
        for (std::size_t x = 0; x < forms_.size(); ++x) {
            if (seen[x])
                continue;
            std::size_t y = mul(x, minus_one_);
            coset_of_[x] = coset_of_[y] = coset_rep_.size();
            seen[x] = seen[y] = 1;
            coset_rep_.push_back(x);
        }
        wide_ = decompose_abelian_group(coset_rep_.size(), coset_of_[identity_], [this](std::size_t x, std::size_t y) {
            return coset_of_[mul(coset_rep_[x], coset_rep_[y])];
        });
    }

    Int discriminant() const { return d_; }
    std::size_t class_number() const { return forms_.size(); }
    std::size_t wide_class_number() const { return coset_rep_.size(); }
    std::vector<QuadForm> const & forms() const { return forms_; }
    QuadForm const & form(std::size_t idx) const { return forms_.at(idx); }
    std::size_t identity() const { return identity_; }
    std::size_t minus_one_class() const { return minus_one_; }

    /// Class index of any primitive form of this discriminant.
    std::size_t index_of(QuadForm const & f) const
    {
        if (f.discriminant() != d_)
            fail(ErrorKind::DiscriminantMismatch, to_string(f) + " is not of discriminant " + std::to_string(d_));
        auto it = index_.find(reduce(f));
        if (it == index_.end())
            fail(ErrorKind::InvalidInput, to_string(f) + " is not primitive");
        return it->second;
    }

    std::size_t mul(std::size_t x, std::size_t y) const { return index_of(compose(forms_[x], forms_[y])); }

    Int order(std::size_t idx, ClassKind kind = ClassKind::Narrow) const
    {
        return kind == ClassKind::Narrow ? narrow_.order_of(idx) : wide_.order_of(coset_of_.at(idx));
    }

    AbelianGroupStructure structure(ClassKind kind) const
    {
        AbelianGroupStructure s;
        if (kind == ClassKind::Narrow) {
            s.elementary_divisors = narrow_.divisors;
            for (auto g : narrow_.generators)
                s.generators.push_back(forms_[g]);
        } else {
            s.elementary_divisors = wide_.divisors;
            for (auto g : wide_.generators)
                s.generators.push_back(forms_[coset_rep_[g]]);
        }
        return s;
    }
};

/// Memoized class group; safe to call from several threads.
inline std::shared_ptr<ClassGroup const> class_group(Int d)
{
    static std::mutex m;
    static std::map<Int, std::shared_ptr<ClassGroup const>> cache;
    check_discriminant_bound(d);
    {
        std::lock_guard lock(m);
        if (auto it = cache.find(d); it != cache.end())
            return it->second;
    }
    auto g = std::make_shared<ClassGroup const>(d);
    std::lock_guard lock(m);
    return cache.emplace(d, std::move(g)).first->second;
}

inline AbelianGroupStructure narrow_class_group(Int d) { return class_group(d)->structure(ClassKind::Narrow); }
inline AbelianGroupStructure wide_class_group(Int d) { return class_group(d)->structure(ClassKind::Wide); }

enum class SplitType { Split, Inert, Ramified };

inline std::string to_string(SplitType s)
{
    switch (s) {
    case SplitType::Split:
        return "split";
    case SplitType::Inert:
        return "inert";
    case SplitType::Ramified:
        return "ramified";
    }
    return "?";
}

struct PrimeClassInfo
{
    SplitType split_type;
    Int order_2part; // largest 2-power dividing the order of a prime above p
    Int order = 1;   // full class order (1 for inert)
};

/// A form (p, b, c) of discriminant D, i.e. a prime ideal above a split or ramified p.
inline QuadForm prime_form(Int d, Int p)
{
    if (!is_prime(p))
        fail(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (kronecker(d, p) == -1)
        fail(ErrorKind::PreconditionUnmet, std::to_string(p) + " is inert in discriminant " + std::to_string(d));
    Int b = -1;
    if (p == 2) {
        for (Int x = 0; x < 4 && b < 0; ++x) {
            if (mod(x * x - d, 8) == 0)
                b = x;
        }
    } else {
        b = sqrt_mod_prime(d, p);
        if (mod(b - d, 2) != 0)
            b = p - b;
    }
    if (b < 0)
        fail(ErrorKind::NoSquareRoot, "no prime form above 2 for " + std::to_string(d));
    return form_from_ab(p, b, d);
}

inline PrimeClassInfo prime_class_info(Int d, Int p, ClassKind kind = ClassKind::Wide)
{
    int k = kronecker(d, p);
    if (!is_prime(p))
        fail(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (k == -1)
        return {SplitType::Inert, 1, 1};
    auto g = class_group(d);
    Int o = g->order(g->index_of(prime_form(d, p)), kind);
    return {k == 0 ? SplitType::Ramified : SplitType::Split, Int(1) << v2(o), o};
}

} // namespace twotower
