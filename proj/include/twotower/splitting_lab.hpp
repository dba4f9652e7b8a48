#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "twotower/classgroup.hpp"
#include "twotower/discriminant.hpp"
#include "twotower/primes.hpp"
#include "twotower/redei.hpp"
#include "twotower/tower.hpp"

namespace twotower {

struct Violation
{
    Int p;
    std::string detail;
};

struct VerificationReport
{
    QuadFieldSpec base_field;
    Int bound = 0;
    std::size_t checked = 0;
    std::vector<Violation> violations;
};

inline std::string to_string(VerificationReport const & r)
{
    return "checked " + std::to_string(r.checked) + " primes, " + std::to_string(r.violations.size()) +
           " violations";
}

/// For F = Q(sqrt(l1 l2)), l1, l2 = 1 mod 4: every p with (l1/p) = (l2/p) = -1 has exactly
/// two primes above it in F^1_(2).
inline VerificationReport verify_real_pair(Int l1, Int l2, Int bound, ClassKind kind = ClassKind::Wide)
{
    if (l1 == l2 || !is_prime(l1) || !is_prime(l2) || l1 % 4 != 1 || l2 % 4 != 1)
        fail(ErrorKind::PreconditionUnmet, "real pair needs distinct primes = 1 mod 4");
    VerificationReport rep{QuadFieldSpec::from_values({l1, l2}), bound, 0, {}};
    for (Int p : primes_up_to(bound)) {
        if (p == l1 || p == l2 || kronecker(l1, p) != -1 || kronecker(l2, p) != -1)
            continue;
        ++rep.checked;
        Int const n = splitting_count(rep.base_field, p, kind);
        if (n != 2)
            rep.violations.push_back({p, "primes above p in L: " + std::to_string(n)});
    }
    return rep;
}

/// Order of F's prime discs under which R_F reads [[-,1,1],[0,-,1],[0,0,-]], if any.
inline std::optional<std::array<std::size_t, 3>> imag_triple_ordering(QuadFieldSpec const & f)
{
    std::array<std::size_t, 3> perm{0, 1, 2};
    auto const r = redei_matrix(f);
    std::array<std::array<int, 3>, 3> const want{{{-1, 1, 1}, {0, -1, 1}, {0, 0, -1}}};
    do {
        bool ok = true;
        for (std::size_t i = 0; i < 3 && ok; ++i)
            for (std::size_t j = 0; j < 3 && ok; ++j)
                ok = i == j || r.at(perm[i], perm[j]) == want[i][j];
        if (ok)
            return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// For F = Q(sqrt(l1* l2* l3*)), l_i = 3 mod 4, Cl_2(F) = C2 x C2^n (n >= 2) and R_F in the
/// standard shape: a prime of F above p splits into exactly two primes of F^1_(2) iff the
/// symbol vector is (+1,-1,-1) or (-1,+1,-1).
inline VerificationReport verify_imag_triple(Int l1, Int l2, Int l3, Int bound)
{
    for (Int l : {l1, l2, l3}) {
        if (!is_prime(l) || l % 4 != 3)
            fail(ErrorKind::PreconditionUnmet, std::to_string(l) + " is not a prime = 3 mod 4");
    }
    auto const f = QuadFieldSpec::from_values({-l1, -l2, -l3});
    auto const two = wide_class_group(f.discriminant()).two_part_divisors();
    if (two.size() != 2 || two[0] != 2 || two[1] < 4)
        fail(ErrorKind::PreconditionUnmet, "Cl_2 of " + to_string(f) + " is not C2 x C2^n with n >= 2");
    auto const order = imag_triple_ordering(f);
    if (!order)
        fail(ErrorKind::PreconditionUnmet, "Redei matrix of " + to_string(f) + " is not of the required shape");
    Int const top = two[1];
    VerificationReport rep{f, bound, 0, {}};
    for (Int p : primes_up_to(bound)) {
        if (f.contains_prime(p))
            continue;
        ++rep.checked;
        int s[3];
        for (std::size_t i = 0; i < 3; ++i)
            s[i] = kronecker(f[(*order)[i]].value(), p);
        bool const predicted = (s[0] == 1 && s[1] == -1 && s[2] == -1) || (s[0] == -1 && s[1] == 1 && s[2] == -1);
        auto const info = prime_class_info(f.discriminant(), p);
        // a prime of F above p splits into |Cl_2| / order_2part primes of L
        bool const two_primes = info.split_type == SplitType::Split && info.order_2part == top;
        if (predicted != two_primes)
            rep.violations.push_back({p, "symbol pattern and class order disagree"});
    }
    return rep;
}

struct SplittingRow
{
    Int p;
    std::vector<int> symbols; // (l_i* / p) over the base discs
    SplitType split;
    Int order_2part;
    Int count_in_l;
};

inline std::string symbol_vector_string(std::vector<int> const & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::string(v[i] > 0 ? "+1" : v[i] < 0 ? "-1" : "0");
    return s;
}

inline std::string to_tsv(SplittingRow const & r)
{
    return std::to_string(r.p) + "\t" + symbol_vector_string(r.symbols) + "\t" + to_string(r.split) + "\t" +
           std::to_string(r.order_2part) + "\t" + std::to_string(r.count_in_l);
}

struct SplittingExperiment
{
    QuadFieldSpec base_field;
    Int prime_bound = 0;
    ClassKind kind = ClassKind::Wide;
    std::size_t row_count = 0;
    std::vector<SplittingRow> rows; // kept only when no sink is given
    std::map<std::vector<int>, std::set<Int>> summary;
};

/// Tabulate, for every prime p <= bound coprime to D_F, the symbol vector and the
/// 2-part of the class order of a prime above p. Rows go to `sink` when provided.
inline SplittingExperiment explore_symbol_dependence(QuadFieldSpec const & f, Int bound,
                                                     std::function<void(SplittingRow const &)> const & sink = {},
                                                     ClassKind kind = ClassKind::Wide)
{
    SplittingExperiment ex{f, bound, kind, 0, {}, {}};
    Int const d = f.discriminant();
    auto const g = class_group(d);
    Int const h2 = g->structure(kind).two_part_order();
    for (Int p : primes_up_to(bound)) {
        if (f.contains_prime(p))
            continue;
        SplittingRow row{p, {}, SplitType::Inert, 1, h2};
        for (auto disc : f.discs())
            row.symbols.push_back(kronecker(disc.value(), p));
        if (kronecker(d, p) == 1) {
            QuadForm const pf = prime_form(d, p);
            Int const o1 = g->order(g->index_of(pf), kind);
            Int const o2 = g->order(g->index_of(inverse(pf)), kind);
            if (v2(o1) != v2(o2))
                fail(ErrorKind::InvalidInput, "conjugate primes above " + std::to_string(p) + " differ in order");
            row.split = SplitType::Split;
            row.order_2part = Int(1) << v2(o1);
            row.count_in_l = 2 * h2 / row.order_2part;
        }
        ex.summary[row.symbols].insert(row.order_2part);
        ++ex.row_count;
        if (sink)
            sink(row);
        else
            ex.rows.push_back(std::move(row));
    }
    return ex;
}

} // namespace twotower
