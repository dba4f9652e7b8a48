#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twotower/catalog.hpp"
#include "twotower/classgroup.hpp"
#include "twotower/discriminant.hpp"
#include "twotower/redei.hpp"

namespace twotower {

/// Golod-Shafarevich: d2 >= 2 + 2 sqrt(1 + u), decided in integers.
inline bool gs_infinite(Int d2, Int unit_2rank)
{
    if (d2 < 2 || unit_2rank < 0)
        return false;
    return Wide(d2 - 2) * (d2 - 2) >= Wide(4) * (1 + Wide(unit_2rank));
}

/// Least d2 with gs_infinite(d2, u).
inline Int gs_required(Int unit_2rank)
{
    Int const n = checked_mul(4, checked_add(1, unit_2rank));
    Int r = isqrt(n);
    if (r * r < n)
        ++r;
    return 2 + r;
}

/// |Cl_2(F)| of the wide class group.
inline Int cl2_order(QuadFieldSpec const & f, ClassKind kind = ClassKind::Wide)
{
    return class_group(f.discriminant())->structure(kind).two_part_order();
}

struct PrimeWitness
{
    Int p;
    SplitType split;
    Int order_2part; // 1 when inert
    Int count;       // primes of L = F^1_(2) above p
};

/// Number of primes of L = F^1_(2) above p, from the decomposition law.
inline PrimeWitness splitting_witness(QuadFieldSpec const & f, Int p, ClassKind kind = ClassKind::Wide)
{
    Int const h2 = cl2_order(f, kind);
    auto const info = prime_class_info(f.discriminant(), p, kind);
    switch (info.split_type) {
    case SplitType::Inert:
        return {p, info.split_type, 1, h2};
    case SplitType::Split:
        return {p, info.split_type, info.order_2part, 2 * h2 / info.order_2part};
    case SplitType::Ramified:
        break;
    }
    return {p, info.split_type, info.order_2part, h2 / info.order_2part};
}

inline Int splitting_count(QuadFieldSpec const & f, Int p, ClassKind kind = ClassKind::Wide)
{
    return splitting_witness(f, p, kind).count;
}

namespace detail {

// Indices of K's discs not occurring in F; F's discs must all occur in K.
inline std::vector<std::size_t> complement_in(QuadFieldSpec const & k, QuadFieldSpec const & f)
{
    for (auto d : f.discs()) {
        if (std::find(k.discs().begin(), k.discs().end(), d) == k.discs().end())
            fail(ErrorKind::DivisibilityViolation, to_string(f) + " is not a sub-product of " + to_string(k));
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < k.t(); ++i) {
        if (std::find(f.discs().begin(), f.discs().end(), k[i]) == f.discs().end())
            rest.push_back(i);
    }
    if (rest.empty())
        fail(ErrorKind::DivisibilityViolation, "F must be unramified at some prime of K");
    return rest;
}

} // namespace detail

/// Primes of L above the primes of K unramified in F, minus 1, minus |Cl_2(F)|
/// when L is totally imaginary (F imaginary).
inline Int kl_rank_lower_bound(QuadFieldSpec const & k, QuadFieldSpec const & f)
{
    Int total = 0;
    for (auto i : detail::complement_in(k, f))
        total += splitting_count(f, k[i].prime());
    return total - 1 - (f.imaginary() ? cl2_order(f) : 0);
}

enum class Criterion {
    GolodShafarevich,
    Triple16TwoInert,
    PosPair8OneInert,
    PosPair4TwoInert,
    Mixed16TwoInert,
    Mixed4OneInertOneSplit,
};

inline std::string to_string(Criterion c)
{
    switch (c) {
    case Criterion::GolodShafarevich:
        return "gs-d2";
    case Criterion::Triple16TwoInert:
        return "triple-16-2inert";
    case Criterion::PosPair8OneInert:
        return "pos-pair-8-1inert";
    case Criterion::PosPair4TwoInert:
        return "pos-pair-4-2inert";
    case Criterion::Mixed16TwoInert:
        return "mixed-16-2inert";
    case Criterion::Mixed4OneInertOneSplit:
        return "mixed-4-1inert-1split";
    }
    return "?";
}

struct Certificate
{
    Criterion criterion;
    std::vector<Int> base_field_discs; // empty for the plain Golod-Shafarevich bound
    Int cl2_order = 0;
    std::vector<PrimeWitness> witnesses;
    Int achieved = 0;   // d2 of K, or the lower bound for d2 Cl(KL)
    Int unit_2rank = 0; // 1 for K, [L:Q] = 2|Cl_2(F)| for KL
    Int required = 0;   // least integer meeting 2 + 2 sqrt(1 + unit_2rank)
    std::string threshold_check;
};

struct NearMiss
{
    std::string criterion;
    std::vector<Int> base_field_discs;
    std::string quantity;
    std::optional<Int> achieved;
    std::optional<Int> required;
    std::string note;
};

struct LemmaResult
{
    bool precondition_met = false;
    std::optional<Certificate> certificate;
    std::vector<NearMiss> diagnostics;
};

enum class LemmaKind { Triple, PosPair, MixedPair };

inline std::string to_string(LemmaKind k)
{
    switch (k) {
    case LemmaKind::Triple:
        return "triple";
    case LemmaKind::PosPair:
        return "pos-pair";
    case LemmaKind::MixedPair:
        return "mixed";
    }
    return "?";
}

/*
 * Threshold locks: the lemmas bound the prime count for t = 5 from below by
 *   triple:  2h - 1 - h          (two inert)
 *   pos:     h + 2 + 2 - 1       (one inert),   2h + 2 - 1 (two inert)
 *   mixed:   2h + 2 - 1 - h      (two inert),   h + 2h + 2 - 1 - h (one inert, one totally split)
 * and compare against 2 + 2 sqrt(1 + 2h).
 */
inline Int lemma_count_bound(Criterion c, Int h)
{
    switch (c) {
    case Criterion::Triple16TwoInert:
        return h - 1;
    case Criterion::PosPair8OneInert:
        return h + 3;
    case Criterion::PosPair4TwoInert:
        return 2 * h + 1;
    case Criterion::Mixed16TwoInert:
        return h + 1;
    case Criterion::Mixed4OneInertOneSplit:
        return 2 * h + 1;
    case Criterion::GolodShafarevich:
        break;
    }
    fail(ErrorKind::InvalidInput, "no count bound for " + to_string(c));
}

inline bool lemma_bound_passes(Criterion c, Int h) { return gs_infinite(lemma_count_bound(c, h), 2 * h); }

/// The |Cl_2(F)| threshold printed in each lemma (a power of 2 above the real root).
inline Int lemma_cl2_threshold(Criterion c)
{
    switch (c) {
    case Criterion::Triple16TwoInert:
    case Criterion::Mixed16TwoInert:
        return 16;
    case Criterion::PosPair8OneInert:
        return 8;
    case Criterion::PosPair4TwoInert:
    case Criterion::Mixed4OneInertOneSplit:
        return 4;
    case Criterion::GolodShafarevich:
        break;
    }
    return 0;
}

namespace detail {

inline std::vector<Int> disc_values(QuadFieldSpec const & s)
{
    std::vector<Int> out;
    for (auto d : s.discs())
        out.push_back(d.value());
    return out;
}

inline std::string threshold_text(Int achieved, Int u)
{
    return std::to_string(achieved) + " >= 2 + 2*sqrt(1 + " + std::to_string(u) + ")";
}

// Shared evaluation: one base field F, the lemma's sub-criteria in order.
inline LemmaResult evaluate_lemma(LemmaKind kind, QuadFieldSpec const & k, QuadFieldSpec const & f)
{
    LemmaResult res;
    res.precondition_met = true;
    Int const h = cl2_order(f);
    auto const rest = complement_in(k, f);
    std::vector<PrimeWitness> wit;
    int inert = 0, totally_split = 0;
    Int total = 0;
    for (auto i : rest) {
        wit.push_back(splitting_witness(f, k[i].prime()));
        total += wit.back().count;
        inert += wit.back().split == SplitType::Inert;
        totally_split += wit.back().split == SplitType::Split && wit.back().order_2part == 1;
    }
    Int const achieved = total - 1 - (f.imaginary() ? h : 0);
    Int const u = 2 * h;
    Int const required = gs_required(u);
    bool const inequality = gs_infinite(achieved, u);

    struct Sub
    {
        Criterion c;
        int need_inert;
        int need_split;
    };
    std::vector<Sub> subs;
    switch (kind) {
    case LemmaKind::Triple:
        subs = {{Criterion::Triple16TwoInert, 2, 0}};
        break;
    case LemmaKind::PosPair:
        subs = {{Criterion::PosPair8OneInert, 1, 0}, {Criterion::PosPair4TwoInert, 2, 0}};
        break;
    case LemmaKind::MixedPair:
        subs = {{Criterion::Mixed16TwoInert, 2, 0}, {Criterion::Mixed4OneInertOneSplit, 1, 1}};
        break;
    }
    auto const discs = disc_values(f);
    for (auto const & s : subs) {
        Int const thr = lemma_cl2_threshold(s.c);
        bool const hyp = h >= thr && inert >= s.need_inert && totally_split >= s.need_split;
        if (hyp && inequality) {
            res.certificate = Certificate{s.c, discs, h, wit, achieved, u, required, threshold_text(achieved, u)};
            return res;
        }
        std::string const name = to_string(s.c);
        if (h < thr)
            res.diagnostics.push_back({name, discs, "cl2_order", h, thr, ""});
        if (inert < s.need_inert)
            res.diagnostics.push_back({name, discs, "inert_primes", inert, s.need_inert, ""});
        if (totally_split < s.need_split)
            res.diagnostics.push_back({name, discs, "totally_split_primes", totally_split, s.need_split, ""});
        if (hyp && !inequality)
            res.diagnostics.push_back({name, discs, "kl_rank_lower_bound", achieved, required,
                                       "lemma hypothesis met but the exact count falls short"});
    }
    res.diagnostics.push_back({to_string(kind), discs, "kl_rank_lower_bound", achieved, required, ""});
    return res;
}

inline LemmaResult unmet(std::string why)
{
    LemmaResult r;
    r.diagnostics.push_back({"", {}, "precondition", std::nullopt, std::nullopt, std::move(why)});
    return r;
}

} // namespace detail

/// F from three of K's discs with negative product; needs two of the others inert and |Cl_2(F)| >= 16.
inline LemmaResult lemma_triple(QuadFieldSpec const & k, std::array<std::size_t, 3> idx)
{
    if (!k.imaginary() || k.t() <= 3)
        return detail::unmet("triple lemma needs imaginary K with more than three prime discriminants");
    auto const f = k.subfield({idx[0], idx[1], idx[2]});
    if (!f.imaginary())
        return detail::unmet("triple " + to_string(f) + " has positive product");
    return detail::evaluate_lemma(LemmaKind::Triple, k, f);
}

/// F from two positive discs of K (real F, totally real L).
inline LemmaResult lemma_pos_pair(QuadFieldSpec const & k, std::array<std::size_t, 2> idx)
{
    if (!k.imaginary() || k.t() <= 2)
        return detail::unmet("pair lemma needs imaginary K with more than two prime discriminants");
    auto const f = k.subfield({idx[0], idx[1]});
    if (f[0].negative() || f[1].negative())
        return detail::unmet("pair " + to_string(f) + " is not positive");
    return detail::evaluate_lemma(LemmaKind::PosPair, k, f);
}

/// F from two discs of K of opposite sign (imaginary F).
inline LemmaResult lemma_mixed_pair(QuadFieldSpec const & k, std::array<std::size_t, 2> idx)
{
    if (!k.imaginary() || k.t() <= 2)
        return detail::unmet("pair lemma needs imaginary K with more than two prime discriminants");
    auto const f = k.subfield({idx[0], idx[1]});
    if (f[0].negative() == f[1].negative())
        return detail::unmet("pair " + to_string(f) + " does not have opposite signs");
    return detail::evaluate_lemma(LemmaKind::MixedPair, k, f);
}

enum class Verdict { InfiniteProven, Open };

inline std::string to_string(Verdict v) { return v == Verdict::InfiniteProven ? "InfiniteProven" : "Open"; }

struct TowerReport
{
    Int discriminant = 0;
    std::vector<Int> discs;
    int d2 = 0;
    int d4 = 0;
    CaseId case_id;
    Verdict verdict = Verdict::Open;
    std::optional<Certificate> certificate;
    std::vector<Certificate> other_certificates;
    std::vector<NearMiss> diagnostics;
};

inline TowerReport analyze(QuadFieldSpec const & k)
{
    if (!k.imaginary())
        fail(ErrorKind::InvalidInput, "analyze expects an imaginary quadratic field, got " + to_string(k));
    TowerReport rep;
    rep.discriminant = k.discriminant();
    rep.discs = detail::disc_values(k);
    rep.d2 = two_ranks(k).wide;
    rep.d4 = four_rank_narrow(k);
    rep.case_id = classify_open_case(k);

    if (gs_infinite(rep.d2, 1)) {
        rep.verdict = Verdict::InfiniteProven;
        rep.certificate = Certificate{Criterion::GolodShafarevich, {}, 0, {}, rep.d2, 1, gs_required(1),
                                      detail::threshold_text(rep.d2, 1)};
        return rep;
    }
    rep.diagnostics.push_back({to_string(Criterion::GolodShafarevich), {}, "d2", rep.d2, gs_required(1), ""});

    auto take = [&](LemmaResult r) {
        if (r.certificate) {
            if (!rep.certificate)
                rep.certificate = std::move(r.certificate);
            else
                rep.other_certificates.push_back(std::move(*r.certificate));
        } else {
            for (auto & d : r.diagnostics)
                rep.diagnostics.push_back(std::move(d));
        }
    };
    auto guarded = [&](auto && run, std::vector<std::size_t> const & idx) {
        try {
            take(run());
        } catch (Error const & e) {
            if (e.kind() != ErrorKind::BoundExceeded)
                throw;
            rep.diagnostics.push_back({"", detail::disc_values(k.subfield(idx)), "skipped", std::nullopt,
                                       std::nullopt, e.what()});
        }
    };

    std::size_t const t = k.t();
    if (t > 3) {
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j)
                for (std::size_t l = j + 1; l < t; ++l) {
                    if (!k.subfield({i, j, l}).imaginary())
                        continue;
                    guarded([&] { return lemma_triple(k, {i, j, l}); }, {i, j, l});
                }
    }
    if (t > 2) {
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j) {
                bool const ni = k[i].negative(), nj = k[j].negative();
                if (ni && nj)
                    continue;
                if (!ni && !nj)
                    guarded([&] { return lemma_pos_pair(k, {i, j}); }, {i, j});
                else
                    guarded([&] { return lemma_mixed_pair(k, {i, j}); }, {i, j});
            }
    }
    rep.diagnostics.push_back({"d2Cl(KL)", {}, "criterion (1)", std::nullopt, std::nullopt,
                               "direct 2-rank of Cl(KL) not evaluated"});
    if (rep.certificate)
        rep.verdict = Verdict::InfiniteProven;
    return rep;
}

/// Recompute every recorded quantity of a certificate from scratch.
inline bool replay(Certificate const & c, QuadFieldSpec const & k)
{
    if (c.criterion == Criterion::GolodShafarevich)
        return two_ranks(k).wide == c.achieved && gs_infinite(c.achieved, c.unit_2rank) && c.unit_2rank == 1;
    auto const f = QuadFieldSpec::from_values(c.base_field_discs);
    auto const rest = detail::complement_in(k, f);
    Int const h = cl2_order(f);
    if (h != c.cl2_order || rest.size() != c.witnesses.size())
        return false;
    Int total = 0;
    int inert = 0, totally_split = 0;
    for (std::size_t n = 0; n < rest.size(); ++n) {
        auto const w = splitting_witness(f, k[rest[n]].prime());
        auto const & r = c.witnesses[n];
        if (w.p != r.p || w.split != r.split || w.order_2part != r.order_2part || w.count != r.count)
            return false;
        total += w.count;
        inert += w.split == SplitType::Inert;
        totally_split += w.split == SplitType::Split && w.order_2part == 1;
    }
    Int const achieved = total - 1 - (f.imaginary() ? h : 0);
    int need_inert = 0, need_split = 0;
    switch (c.criterion) {
    case Criterion::Triple16TwoInert:
    case Criterion::Mixed16TwoInert:
    case Criterion::PosPair4TwoInert:
        need_inert = 2;
        break;
    case Criterion::PosPair8OneInert:
        need_inert = 1;
        break;
    case Criterion::Mixed4OneInertOneSplit:
        need_inert = 1;
        need_split = 1;
        break;
    case Criterion::GolodShafarevich:
        break;
    }
    return achieved == c.achieved && c.unit_2rank == 2 * h && h >= lemma_cl2_threshold(c.criterion) &&
           inert >= need_inert && totally_split >= need_split && gs_infinite(achieved, 2 * h);
}

} // namespace twotower
