#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "twotower/catalog.hpp"
#include "twotower/classgroup.hpp"
#include "twotower/redei.hpp"

using namespace twotower;

namespace {

// rank as log2 of the size of the row span
int span_rank(std::vector<std::uint32_t> const & rows)
{
    std::set<std::uint32_t> span;
    for (std::uint32_t mask = 0; mask < (1U << rows.size()); ++mask) {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (mask >> i & 1U)
                v ^= rows[i];
        span.insert(v);
    }
    int r = 0;
    while ((std::size_t(1) << r) < span.size())
        ++r;
    return r;
}

std::vector<Int> fundamentals(Int lo, Int hi)
{
    std::vector<Int> out;
    for (Int d = lo; d <= hi; ++d)
        if (is_fundamental(d))
            out.push_back(d);
    return out;
}

} // namespace

TEST(Redei, F2RankMatchesSpanSize)
{
    std::mt19937 rng(3);
    for (int it = 0; it < 2000; ++it) {
        std::size_t const n = 1 + rng() % 8;
        std::vector<std::uint32_t> rows(n);
        for (auto & r : rows)
            r = rng() & 0xFF;
        ASSERT_EQ(f2_rank(rows), span_rank(rows));
    }
}

TEST(Redei, EntriesAreKroneckerSymbols)
{
    auto const k = QuadFieldSpec::from_values({-7, -3, -8, 29, 5});
    auto const r = redei_matrix(k);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j)
                continue;
            EXPECT_EQ(r.at(i, j), kronecker(k[i].value(), k[j].prime()) == 1 ? 0 : 1);
        }
    // first row of the worked example: (-7 / 3) = -1, (-7 / 2) = +1, (-7 / 29) = +1, (-7 / 5) = -1
    EXPECT_EQ(r.at(0, 1), 1);
    EXPECT_EQ(r.at(0, 2), 0);
    EXPECT_EQ(r.at(0, 3), 0);
    EXPECT_EQ(r.at(0, 4), 1);
}

// the rows sum to the zero vector, i.e. every column sum vanishes
TEST(Redei, ColumnSumsVanish)
{
    for (Int d : fundamentals(-20000, 20000)) {
        auto const r = redei_matrix(prime_disc_factorization(d));
        std::uint32_t sum = 0;
        for (auto row : r.rows())
            sum ^= row;
        ASSERT_EQ(sum, 0U) << d;
    }
}

// for odd D, row i sums to (#negative discs - 1) when p_i* < 0 and to 0 otherwise
TEST(Redei, RowSumsVanishForOddImaginaryOrTotallyPositive)
{
    bool saw_nonzero = false;
    for (Int d : fundamentals(-5000, 5000)) {
        if (d % 2 == 0)
            continue;
        auto const s = prime_disc_factorization(d);
        bool const all_pos = std::none_of(s.discs().begin(), s.discs().end(), [](auto x) { return x.negative(); });
        auto const r = redei_matrix(s);
        bool all_zero = true;
        for (auto row : r.rows())
            all_zero = all_zero && std::popcount(row) % 2 == 0;
        if (s.imaginary() || all_pos)
            ASSERT_TRUE(all_zero) << d;
        saw_nonzero = saw_nonzero || !all_zero;
    }
    EXPECT_TRUE(saw_nonzero); // e.g. real fields such as (-3)(-7)
}

TEST(Redei, FourRankAgainstClassGroup)
{
    for (Int d : fundamentals(-8000, 8000)) {
        auto const s = prime_disc_factorization(d);
        ASSERT_EQ(four_rank_narrow(s), narrow_class_group(d).rank(2, 2)) << d;
    }
}

TEST(Redei, PermutationEquivariant)
{
    auto const k = QuadFieldSpec::from_values({-3, -8, -23, -7, -19});
    auto const r = redei_matrix(k);
    std::vector<std::size_t> perm{0, 1, 2, 3, 4};
    std::mt19937 rng(5);
    for (int it = 0; it < 50; ++it) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<PrimeDiscriminant> discs;
        for (auto i : perm)
            discs.push_back(k[i]);
        auto const rp = redei_matrix(QuadFieldSpec(discs));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                ASSERT_EQ(rp.at(i, j), r.at(perm[i], perm[j]));
        EXPECT_EQ(f2_rank(rp), f2_rank(r));
    }
}

TEST(TwoRanks, SignCorrection)
{
    EXPECT_EQ(two_ranks(QuadFieldSpec::from_values({-3, -4})).wide, 0); // D = 12
    EXPECT_EQ(two_ranks(QuadFieldSpec::from_values({5, 29})).wide, 1);
    EXPECT_EQ(two_ranks(QuadFieldSpec::from_values({-3, 5, -7})).narrow, 2);
    EXPECT_EQ(two_ranks(QuadFieldSpec::from_values({-3, 5, -7})).wide, 1);
    EXPECT_EQ(two_ranks(QuadFieldSpec::from_values({-3, 5, 13})).wide, 2);
}

TEST(Catalog, ParsesEveryEntry)
{
    auto const & c = catalog();
    std::set<std::string> tags;
    for (auto const & e : c) {
        tags.insert(e.tag);
        for (std::size_t i = 0; i < 5; ++i)
            EXPECT_EQ(e.pattern[i][i], '-') << e.tag;
    }
    EXPECT_EQ(tags.size(), c.size());
    for (auto t : {"A", "B", "C", "D1", "D2", "M16", "M28", "M30", "M32", "M49"})
        EXPECT_TRUE(tags.count(t)) << t;
    EXPECT_THROW(catalog_entry("Z9"), Error);
    EXPECT_THROW(detail::parse_catalog("matrix X\nrow - 1\n"), Error);
    EXPECT_THROW(detail::parse_catalog("row - 1 1 1 1\n"), Error);
    EXPECT_THROW(detail::parse_catalog("matrix X\nsigns - - - - -\nrow 1 1 1 1 1\nend\n"), Error);
    EXPECT_THROW(detail::parse_catalog("matrix X\nminus4 7\nend\n"), Error);
    EXPECT_EQ(detail::parse_catalog("# comment only\n").size(), 0u);
}

TEST(Catalog, ClassifiesKnownFields)
{
    EXPECT_EQ(classify_open_case(QuadFieldSpec::from_values({-3, -8, -23, -7, -19})).tag, "B");
    EXPECT_EQ(classify_open_case(QuadFieldSpec::from_values({-7, -3, -8, 29, 5})).tag, "M49");
    EXPECT_EQ(classify_open_case(QuadFieldSpec::from_values({-3, -11, -107, -7, -31})).tag, "B");
    auto const real = classify_open_case(QuadFieldSpec::from_values({5, 29}));
    EXPECT_FALSE(real.open());
    EXPECT_EQ(real.reason, "real field");
    EXPECT_FALSE(classify_open_case(QuadFieldSpec::from_values({-3, -7, -11})).open());
}

TEST(Catalog, PermutationWitnessReproducesPattern)
{
    auto const k = QuadFieldSpec::from_values({-7, -3, -8, 29, 5});
    auto const id = classify_open_case(k);
    ASSERT_TRUE(id.open());
    auto const & e = catalog_entry(id.tag);
    auto const r = redei_matrix(k);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            char const c = e.pattern[i][j];
            if (c == '0' || c == '1')
                EXPECT_EQ(r.at(id.permutation[i], id.permutation[j]), c - '0') << i << j;
        }
}

TEST(Catalog, ShuffleInvariance)
{
    std::mt19937 rng(17);
    for (auto const & vals : std::vector<std::vector<Int>>{{-3, -8, -23, -7, -19}, {-7, -3, -8, 29, 5}}) {
        auto const want = classify_open_case(QuadFieldSpec::from_values(vals)).tag;
        auto v = vals;
        for (int i = 0; i < 200; ++i) {
            std::shuffle(v.begin(), v.end(), rng);
            ASSERT_EQ(classify_open_case(QuadFieldSpec::from_values(v)).tag, want);
        }
    }
}
