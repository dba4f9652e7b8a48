#include <gtest/gtest.h>

#include "twotower/splitting_lab.hpp"

using namespace twotower;

TEST(RealPair, NoViolations)
{
    for (auto [l1, l2] : std::vector<std::pair<Int, Int>>{{5, 29}, {5, 461}, {13, 17}, {5, 41}}) {
        auto const rep = verify_real_pair(l1, l2, 10000);
        EXPECT_GT(rep.checked, 100u);
        EXPECT_TRUE(rep.violations.empty()) << l1 << " " << l2 << ": " << to_string(rep);
    }
}

TEST(RealPair, Preconditions)
{
    EXPECT_THROW(verify_real_pair(3, 29, 100), Error);
    EXPECT_THROW(verify_real_pair(5, 5, 100), Error);
    EXPECT_THROW(verify_real_pair(9, 13, 100), Error);
}

// the predicate counted by the sweep, recomputed from Legendre symbols
TEST(RealPair, CheckedCountIsSymbolCount)
{
    auto const rep = verify_real_pair(5, 29, 5000);
    std::size_t want = 0;
    for (Int p : primes_up_to(5000))
        want += p != 5 && p != 29 && kronecker(5, p) == -1 && kronecker(29, p) == -1;
    EXPECT_EQ(rep.checked, want);
}

TEST(ImagTriple, NoViolations)
{
    for (auto [a, b, c] : std::vector<std::array<Int, 3>>{{7, 19, 3}, {31, 3, 11}}) {
        auto const rep = verify_imag_triple(a, b, c, 10000);
        EXPECT_GT(rep.checked, 1000u);
        EXPECT_TRUE(rep.violations.empty()) << to_string(rep);
    }
}

TEST(ImagTriple, Preconditions)
{
    EXPECT_THROW(verify_imag_triple(5, 19, 3, 100), Error);
    // -3 * -7 * -11 = -231 has Cl_2 = C2 x C2
    EXPECT_THROW(verify_imag_triple(3, 7, 11, 100), Error);
}

TEST(Explore, SymbolDependence)
{
    auto const a = explore_symbol_dependence(QuadFieldSpec::from_values({5, 29, 109, 661}), 100000, [](auto const &) {});
    auto const b = explore_symbol_dependence(QuadFieldSpec::from_values({5, 29, 109, 2609}), 100000, [](auto const &) {});
    std::vector<int> const key{1, -1, -1, 1};
    EXPECT_EQ(a.summary.at(key), (std::set<Int>{2, 4}));
    EXPECT_EQ(b.summary.at(key), (std::set<Int>{8}));
    EXPECT_TRUE(a.rows.empty()); // streamed to the sink
}

TEST(Explore, RowsConsistentWithDecompositionLaw)
{
    auto const f = QuadFieldSpec::from_values({5, 29});
    auto const ex = explore_symbol_dependence(f, 2000);
    ASSERT_EQ(ex.rows.size(), ex.row_count);
    for (auto const & r : ex.rows) {
        EXPECT_EQ(r.count_in_l, splitting_count(f, r.p)) << r.p;
        EXPECT_EQ(r.symbols.size(), 2u);
        int prod = r.symbols[0] * r.symbols[1];
        EXPECT_EQ(prod == 1, r.split == SplitType::Split) << r.p;
    }
    EXPECT_EQ(to_tsv(ex.rows.front()), "2\t-1,-1\tsplit\t4\t2");
}
