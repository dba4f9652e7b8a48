#include <gtest/gtest.h>

#include <cmath>

#include "twotower/tower.hpp"

using namespace twotower;

namespace {

// 2 + 2 sqrt(1 + u) <= x, decided in exact integers: (x - 2)^2 >= 4 (1 + u) with x >= 2
bool gs_oracle(Int x, Int u) { return x >= 2 && (x - 2) * (x - 2) >= 4 * (1 + u); }

QuadFieldSpec example_k() { return QuadFieldSpec::from_values({-7, -3, -8, 29, 5}); }
QuadFieldSpec example_f() { return QuadFieldSpec::from_values({29, 5}); }

} // namespace

TEST(GolodShafarevich, ExactInequality)
{
    for (Int u = 0; u < 200; ++u) {
        Int first = -1;
        for (Int x = 0; x < 100; ++x) {
            ASSERT_EQ(gs_infinite(x, u), gs_oracle(x, u)) << x << " " << u;
            if (first < 0 && gs_oracle(x, u))
                first = x;
        }
        ASSERT_EQ(gs_required(u), first) << u;
        // floating cross-check away from the perfect-square boundary
        double const bound = 2 + 2 * std::sqrt(1.0 + u);
        ASSERT_GE(static_cast<double>(first) + 1e-9, bound);
        ASSERT_LT(static_cast<double>(first) - 1, bound);
    }
    EXPECT_EQ(gs_required(1), 5); // d2 >= 5 for imaginary K
    EXPECT_EQ(gs_required(8), 8);
    EXPECT_FALSE(gs_infinite(4, 1));
}

TEST(Splitting, WorkedExampleCounts)
{
    auto const f = example_f();
    EXPECT_EQ(splitting_count(f, 7), 4);
    EXPECT_EQ(splitting_count(f, 3), 2);
    EXPECT_EQ(splitting_count(f, 2), 2);
    EXPECT_EQ(cl2_order(f), 4);
    EXPECT_EQ(kl_rank_lower_bound(example_k(), f), 7);
    EXPECT_EQ(gs_required(2 * cl2_order(f)), 8);
}

TEST(Splitting, DecompositionLawOnRealQuadratic)
{
    auto const f = example_f(); // 145, Cl_2 = C4
    auto const w11 = splitting_witness(f, 11);
    EXPECT_EQ(w11.split, SplitType::Inert);
    EXPECT_EQ(w11.count, 4);
    auto const w3 = splitting_witness(f, 3);
    EXPECT_EQ(w3.split, SplitType::Split);
    EXPECT_EQ(w3.order_2part, 4);
    EXPECT_EQ(w3.count, 2);
    EXPECT_EQ(splitting_witness(f, 5).split, SplitType::Ramified);
}

TEST(Splitting, ComplementRequiresContainment)
{
    EXPECT_THROW(kl_rank_lower_bound(example_k(), QuadFieldSpec::from_values({13, 5})), Error);
    EXPECT_THROW(kl_rank_lower_bound(QuadFieldSpec::from_values({29, 5}), example_f()), Error);
}

TEST(Thresholds, BoundaryIntegers)
{
    using C = Criterion;
    EXPECT_TRUE(lemma_bound_passes(C::Triple16TwoInert, 16));
    EXPECT_FALSE(lemma_bound_passes(C::Triple16TwoInert, 8));
    EXPECT_TRUE(lemma_bound_passes(C::PosPair8OneInert, 8));
    EXPECT_FALSE(lemma_bound_passes(C::PosPair8OneInert, 4));
    EXPECT_TRUE(lemma_bound_passes(C::PosPair4TwoInert, 4));
    EXPECT_TRUE(lemma_bound_passes(C::Mixed16TwoInert, 16));
    EXPECT_FALSE(lemma_bound_passes(C::Mixed16TwoInert, 8));
    EXPECT_TRUE(lemma_bound_passes(C::Mixed4OneInertOneSplit, 4));
    // thresholds 7 + 2 sqrt 11 < 14, 3 + 2 sqrt 3 < 7, 5 + 2 sqrt 7 < 11: passes from these h on
    for (Int h = 1; h <= 64; ++h) {
        EXPECT_EQ(lemma_bound_passes(C::Triple16TwoInert, h), h >= 14) << h;
        EXPECT_EQ(lemma_bound_passes(C::PosPair8OneInert, h), h >= 7) << h;
        EXPECT_EQ(lemma_bound_passes(C::Mixed16TwoInert, h), h >= 11) << h;
        EXPECT_EQ(lemma_bound_passes(C::PosPair4TwoInert, h), h >= 4) << h;
        EXPECT_EQ(lemma_bound_passes(C::Mixed4OneInertOneSplit, h), h >= 4) << h;
    }
    EXPECT_EQ(lemma_count_bound(C::Triple16TwoInert, 16), 15);
    EXPECT_EQ(lemma_count_bound(C::PosPair8OneInert, 8), 11);
    EXPECT_EQ(lemma_count_bound(C::PosPair4TwoInert, 4), 9);
    EXPECT_EQ(lemma_count_bound(C::Mixed16TwoInert, 16), 17);
    EXPECT_EQ(lemma_count_bound(C::Mixed4OneInertOneSplit, 4), 9);
}

TEST(Analyze, WorkedExampleIsOpenWithNearMiss)
{
    auto const r = analyze(example_k());
    EXPECT_EQ(r.verdict, Verdict::Open);
    EXPECT_EQ(r.case_id.tag, "M49");
    EXPECT_EQ(r.d2, 4);
    EXPECT_EQ(r.d4, 0);
    EXPECT_FALSE(r.certificate);
    bool near = false;
    for (auto const & d : r.diagnostics)
        near = near || (d.base_field_discs == std::vector<Int>{29, 5} && d.quantity == "kl_rank_lower_bound" &&
                        d.achieved == 7 && d.required == 8);
    EXPECT_TRUE(near);
}

TEST(Analyze, SchmithalsField)
{
    auto const k = prime_disc_factorization(-25355);
    auto const r = analyze(k);
    ASSERT_EQ(r.verdict, Verdict::InfiniteProven);
    ASSERT_TRUE(r.certificate);
    auto const & c = *r.certificate;
    EXPECT_EQ(c.criterion, Criterion::PosPair8OneInert);
    EXPECT_EQ(c.cl2_order, 16);
    EXPECT_EQ(c.base_field_discs, (std::vector<Int>{5, 461}));
    ASSERT_EQ(c.witnesses.size(), 1u);
    EXPECT_EQ(c.witnesses[0].p, 11);
    EXPECT_EQ(c.witnesses[0].split, SplitType::Inert);
    EXPECT_EQ(c.achieved, 15);
    EXPECT_EQ(c.required, 14);
    EXPECT_TRUE(replay(c, k));
}

TEST(Analyze, LargeTwoRankUsesGolodShafarevich)
{
    // six prime discriminants: d2 = 5
    auto const k = QuadFieldSpec::from_values({-3, 5, -7, -11, 13, 17});
    ASSERT_TRUE(k.imaginary());
    auto const r = analyze(k);
    ASSERT_EQ(r.verdict, Verdict::InfiniteProven);
    EXPECT_EQ(r.certificate->criterion, Criterion::GolodShafarevich);
    EXPECT_TRUE(replay(*r.certificate, k));
}

TEST(Analyze, RejectsRealFields) { EXPECT_THROW(analyze(QuadFieldSpec::from_values({5, 29})), Error); }

TEST(Analyze, ReplayDetectsTampering)
{
    auto const k = prime_disc_factorization(-25355);
    auto c = *analyze(k).certificate;
    c.witnesses[0].count += 1;
    EXPECT_FALSE(replay(c, k));
    c = *analyze(k).certificate;
    c.cl2_order = 8;
    EXPECT_FALSE(replay(c, k));
}

TEST(Lemmas, PreconditionsReported)
{
    auto const k = example_k();
    EXPECT_FALSE(lemma_pos_pair(k, {0, 1}).precondition_met); // (-7, -3) is not positive
    EXPECT_FALSE(lemma_mixed_pair(k, {3, 4}).precondition_met);
    EXPECT_FALSE(lemma_triple(k, {0, 1, 3}).precondition_met); // positive product
    auto const pos = lemma_pos_pair(k, {3, 4});
    EXPECT_TRUE(pos.precondition_met);
    EXPECT_FALSE(pos.certificate);
}

TEST(Analyze, CertificatesReplayOnSample)
{
    int proven = 0;
    for (Int d = -3; d >= -60000; --d) {
        if (!is_fundamental(d))
            continue;
        auto const k = prime_disc_factorization(d);
        if (k.t() < 3)
            continue;
        auto const r = analyze(k);
        if (r.certificate) {
            ++proven;
            ASSERT_TRUE(replay(*r.certificate, k)) << d;
            for (auto const & c : r.other_certificates)
                ASSERT_TRUE(replay(c, k)) << d;
        }
        if (proven > 60)
            break;
    }
    EXPECT_GT(proven, 0);
}
