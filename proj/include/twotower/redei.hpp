#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twotower/arith.hpp"
#include "twotower/discriminant.hpp"

namespace twotower {

/// Additive Redei matrix over F2: (-1)^a_ij = (p_i* / p_j) off the diagonal and
/// (-1)^a_ii = ((D/p_i*) / p_i), so the rows sum to the zero vector.
class RedeiMatrix
{
    std::vector<PrimeDiscriminant> labels_;
    std::vector<std::uint32_t> rows_; // bit j of rows_[i] is a_ij

  public:
    RedeiMatrix() = default;
    RedeiMatrix(std::vector<PrimeDiscriminant> labels, std::vector<std::uint32_t> rows)
        : labels_(std::move(labels)), rows_(std::move(rows))
    {
    }

    std::size_t size() const { return rows_.size(); }
    int at(std::size_t i, std::size_t j) const { return (rows_.at(i) >> j) & 1U; }
    std::uint32_t row(std::size_t i) const { return rows_.at(i); }
    std::vector<std::uint32_t> const & rows() const { return rows_; }
    std::vector<PrimeDiscriminant> const & labels() const { return labels_; }

    friend bool operator==(RedeiMatrix const & a, RedeiMatrix const & b) { return a.rows_ == b.rows_; }
};

inline int symbol_bit(Int a, Int n) { return kronecker(a, n) == 1 ? 0 : 1; }

inline RedeiMatrix redei_matrix(QuadFieldSpec const & spec)
{
    std::size_t const t = spec.t();
    if (t > 32)
        fail(ErrorKind::InvalidInput, "too many prime discriminants for a Redei matrix");
    std::vector<std::uint32_t> rows(t, 0);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            int bit = i == j ? symbol_bit(spec.discriminant() / spec[i].value(), spec[i].prime())
                             : symbol_bit(spec[i].value(), spec[j].prime());
            rows[i] |= std::uint32_t(bit) << j;
        }
    }
    return {spec.discs(), std::move(rows)};
}

/// Rank over F2 of bit-packed rows.
inline int f2_rank(std::vector<std::uint32_t> rows)
{
    int rank = 0;
    for (int bit = 0; bit < 32; ++bit) {
        std::uint32_t const mask = std::uint32_t(1) << bit;
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [mask](std::uint32_t r) { return r & mask; });
        if (pivot == rows.end())
            continue;
        std::swap(*pivot, rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != static_cast<std::size_t>(rank) && (rows[i] & mask))
                rows[i] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

inline int f2_rank(RedeiMatrix const & m) { return f2_rank(m.rows()); }

/// d_4 Cl+(K) = t - 1 - rank R_K.
inline int four_rank_narrow(QuadFieldSpec const & spec)
{
    return static_cast<int>(spec.t()) - 1 - f2_rank(redei_matrix(spec));
}

struct TwoRanks
{
    int narrow;
    int wide;
};

/// Genus theory: d_2 Cl+ = t - 1, and the wide rank drops by one for a real
/// field with a negative prime discriminant.
inline TwoRanks two_ranks(QuadFieldSpec const & spec)
{
    int const narrow = static_cast<int>(spec.t()) - 1;
    bool drop = !spec.imaginary() &&
                std::any_of(spec.discs().begin(), spec.discs().end(), [](auto d) { return d.negative(); });
    return {narrow, narrow - (drop ? 1 : 0)};
}

inline std::string to_string(RedeiMatrix const & m)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j)
            out += (j ? " " : "") + std::to_string(m.at(i, j));
        out += "\n";
    }
    return out;
}

} // namespace twotower
