#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twotower/discriminant.hpp"
#include "twotower/redei.hpp"

namespace twotower {

/*
 * Open Redei matrices for imaginary K with five prime discriminants.
 * Format, one block per matrix:
 *   matrix <tag> [resolved]
 *   signs <five of + - *>       sign of p_i* by position
 *   minus4 <none|any|position>  where -4 may (or must) sit
 *   rank <r>                    required F2 rank of the full matrix
 *   row <five entries>          0, 1, * (free) or - (diagonal, implied)
 *   note <text>
 *   end
 * Free entries stand for the a_21, a_31, ... left open in the printed
 * matrices; the family D2 branches (a)-(d) are spelled out as four matrices.
 */
inline constexpr std::string_view kCatalogText = R"(matrix A
signs - - - - -
minus4 none
rank 4
row - 1 1 0 1
row 0 - 1 1 0
row 0 0 - 1 1
row 1 0 0 - 1
row 0 1 0 0 -
note five negative, 4-rank 0, D not 4 mod 8; F = (p3 p4 p5) with p1, p2 inert
end
matrix B
signs - - - - -
minus4 none
rank 4
row - 1 1 0 0
row 0 - 1 1 0
row 0 0 - 1 1
row 1 0 0 - 1
row 1 1 0 0 -
note five negative, 4-rank 0, D not 4 mod 8; circulant, no lemma applies
end
matrix C
signs - - - - -
minus4 1
rank 4
row - 1 1 1 1
row * - 1 0 1
row * 0 - 1 1
row * 1 0 - 1
row 1 0 0 0 -
note five negative, 4-rank 0, p1* = -4
end
matrix D1
signs - - - - -
minus4 1
rank 4
row - 1 1 1 1
row * - 1 1 0
row 1 0 - 1 1
row 0 0 0 - 1
row 1 1 0 0 -
note five negative, 4-rank 0, p1* = -4, (a31,a41) = (1,0); F = (p1 p3 p4) with p2, p5 inert
end
matrix D2
signs - - - - -
minus4 1
rank 4
row - 1 1 1 1
row * - 1 1 0
row 0 0 - 1 1
row 1 0 0 - 1
row * 1 0 0 -
note five negative, 4-rank 0, p1* = -4, (a31,a41) = (0,1); no lemma applies
end
matrix FamD2a
signs - - - + +
minus4 1
rank 2
row - 1 1 0 0
row 1 - 1 1 1
row 0 0 - 1 1
row 1 1 1 - 0
row 1 1 1 0 -
note family D2 branch (a): a45 = a54 = 0, (a21,a31) = (1,0)
end
matrix FamD2b
signs - - - + +
minus4 1
rank 2
row - 1 1 0 0
row 0 - 1 1 1
row 1 0 - 1 1
row 1 1 1 - 0
row 1 1 1 0 -
note family D2 branch (b): a45 = a54 = 0, (a21,a31) = (0,1)
end
matrix FamD2c
signs - - - + +
minus4 1
rank 2
row - 1 1 0 0
row 1 - 1 1 1
row 0 0 - 1 1
row 1 1 1 - 1
row 1 1 1 1 -
note family D2 branch (c): a45 = a54 = 1, (a21,a31) = (1,0)
end
matrix FamD2d
signs - - - + +
minus4 1
rank 2
row - 1 1 0 0
row 1 - 1 1 1
row 1 0 - 1 1
row 1 1 1 - 1
row 1 1 1 1 -
note family D2 branch (d): a45 = a54 = 1, (a21,a31) = (1,1); F = (p1 p4 p5) with p2, p3 inert
end
matrix M16
signs - - - + +
minus4 none
rank 4
row - 1 1 1 0
row 0 - 1 0 1
row 0 0 - 1 0
row 1 0 1 - 1
row 0 1 0 1 -
note three negative, 4-rank 0; F = (p3 p5), p2 inert, p1 totally split in L
end
matrix M28
signs - - - + +
minus4 none
rank 4
row - 1 1 0 1
row 0 - 1 1 1
row 0 0 - 0 1
row 0 1 0 - 1
row 1 1 1 1 -
note three negative, 4-rank 0; F = (p3 p4) or F = (p1 p2 p3)
end
matrix M30
signs - - - + +
minus4 none
rank 4
row - 1 1 0 1
row 0 - 1 1 0
row 0 0 - 1 1
row 0 1 1 - 1
row 1 0 1 1 -
note three negative, 4-rank 0; no lemma applies
end
matrix M32
signs - - - + +
minus4 none
rank 4
row - 1 1 1 1
row 0 - 1 0 1
row 0 0 - 1 0
row 1 0 1 - 1
row 1 1 0 1 -
note three negative, 4-rank 0; F = (p3 p5) with p1, p2 inert
end
matrix M34a
signs - - - + +
minus4 none
rank 4
row - 1 1 1 1
row 0 - 1 0 1
row 0 0 - 1 1
row 1 0 1 - 0
row 1 1 1 0 -
note three negative, 4-rank 0; F = (p4 p5) with p2 inert
end
matrix M34b
signs - - - + +
minus4 none
rank 4
row - 1 1 1 1
row 0 - 1 0 1
row 0 0 - 1 1
row 1 0 1 - 1
row 1 1 1 1 -
note three negative, 4-rank 0; no lemma applies
end
matrix M49
signs - - - + +
minus4 none
rank 4
row - 1 0 0 1
row 0 - 1 1 1
row 1 0 - 1 1
row 0 1 1 - 0
row 1 1 1 0 -
note three negative, 4-rank 0; F = (p4 p5) with p1 inert
end
matrix D1-resolved resolved
signs - - - - -
minus4 1
rank 4
row - 1 1 1 1
row * - 1 1 0
row 1 0 - 1 1
row 0 0 0 - 1
row 0 1 0 0 -
note matrix D with (a31,a41,a51) = (1,0,0), already resolved in the literature
end
)";

struct CatalogEntry
{
    std::string tag;
    bool resolved = false;
    std::array<char, 5> signs{};   // '+', '-', '*'
    int minus4 = -1;               // -1: never -4, -2: anywhere, else required position
    int rank = -1;
    std::array<std::array<char, 5>, 5> pattern{}; // '0', '1', '*', '-'
    std::string note;
};

namespace detail {

inline std::vector<CatalogEntry> parse_catalog(std::string_view text)
{
    std::vector<CatalogEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    CatalogEntry cur;
    int row = 0;
    bool inside = false;
    auto bad = [&](std::string const & why) { fail(ErrorKind::InvalidInput, "catalog: " + why + ": " + line); };
    auto read5 = [&](std::istringstream & ls, std::array<char, 5> & dst, std::string_view allowed) {
        for (auto & c : dst) {
            std::string tok;
            if (!(ls >> tok) || tok.size() != 1 || allowed.find(tok[0]) == std::string_view::npos)
                bad("expected five of '" + std::string(allowed) + "'");
            c = tok[0];
        }
        std::string extra;
        if (ls >> extra)
            bad("more than five entries");
    };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key.empty() || key[0] == '#')
            continue;
        if (key != "matrix" && !inside)
            bad("keyword outside a matrix block");
        if (key == "matrix") {
            if (inside)
                bad("previous matrix not closed");
            cur = CatalogEntry{};
            row = 0;
            inside = true;
            std::string flag;
            if (!(ls >> cur.tag))
                bad("matrix needs a tag");
            ls >> flag;
            cur.resolved = flag == "resolved";
        } else if (key == "signs") {
            read5(ls, cur.signs, "+-*");
        } else if (key == "minus4") {
            std::string v;
            ls >> v;
            if (v == "none")
                cur.minus4 = -1;
            else if (v == "any")
                cur.minus4 = -2;
            else if (v.size() == 1 && v[0] >= '1' && v[0] <= '5')
                cur.minus4 = v[0] - '1';
            else
                bad("minus4 must be none, any or a position 1-5");
        } else if (key == "rank") {
            if (!(ls >> cur.rank))
                bad("rank needs an integer");
        } else if (key == "row") {
            if (row >= 5)
                bad("too many rows");
            read5(ls, cur.pattern[row], "01*-");
            if (cur.pattern[row][row] != '-')
                bad("diagonal entry must be '-'");
            ++row;
        } else if (key == "note") {
            std::getline(ls >> std::ws, cur.note);
        } else if (key == "end") {
            if (row != 5)
                bad("matrix needs five rows");
            if (cur.signs[0] == 0)
                bad("matrix needs a signs line");
            out.push_back(cur);
            inside = false;
        } else {
            bad("unknown keyword");
        }
    }
    if (inside)
        fail(ErrorKind::InvalidInput, "catalog: matrix " + cur.tag + " not closed");
    return out;
}

} // namespace detail

inline std::vector<CatalogEntry> const & catalog()
{
    static std::vector<CatalogEntry> const entries = detail::parse_catalog(kCatalogText);
    return entries;
}

struct CaseId
{
    std::string tag = "NotOpen";
    std::vector<std::size_t> permutation; // catalog position i holds spec index permutation[i]
    std::string reason;

    bool open() const { return tag != "NotOpen"; }
};

/// Does the spec, read in the order given by perm, fit the catalog entry?
inline bool matches_entry(CatalogEntry const & e, QuadFieldSpec const & spec, RedeiMatrix const & r,
                          std::vector<std::size_t> const & perm)
{
    for (std::size_t i = 0; i < 5; ++i) {
        auto const d = spec[perm[i]];
        if ((e.signs[i] == '-' && !d.negative()) || (e.signs[i] == '+' && d.negative()))
            return false;
        bool const is_m4 = d.value() == -4;
        if (e.minus4 == -1 && is_m4)
            return false;
        if (e.minus4 >= 0 && (static_cast<int>(i) == e.minus4) != is_m4)
            return false;
    }
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            char const c = e.pattern[i][j];
            if (c == '0' || c == '1') {
                if (r.at(perm[i], perm[j]) != c - '0')
                    return false;
            }
        }
    }
    return e.rank < 0 || f2_rank(r) == e.rank;
}

/// Identify which open catalog matrix (if any) the field's Redei matrix is, up to re-indexing.
inline CaseId classify_open_case(QuadFieldSpec const & spec)
{
    CaseId out;
    if (!spec.imaginary()) {
        out.reason = "real field";
        return out;
    }
    if (spec.t() != 5) {
        out.reason = "t = " + std::to_string(spec.t()) + ", catalog covers t = 5";
        return out;
    }
    auto const sorted = spec.sorted();
    auto const r = redei_matrix(sorted);
    int const d4 = 4 - f2_rank(r);
    if (d4 >= 3) {
        out.reason = "4-rank " + std::to_string(d4) + " >= 3, infinite by the 4-rank criterion";
        return out;
    }
    // map positions of the sorted spec back to the caller's ordering
    std::vector<std::size_t> back(5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            if (spec[j] == sorted[i])
                back[i] = j;
        }
    }
    for (auto const & e : catalog()) {
        std::vector<std::size_t> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (matches_entry(e, sorted, r, perm)) {
                std::vector<std::size_t> p(5);
                for (std::size_t i = 0; i < 5; ++i)
                    p[i] = back[perm[i]];
                if (e.resolved)
                    return {"NotOpen", p, "matches " + e.tag + ": " + e.note};
                return {e.tag, p, e.note};
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.reason = "4-rank " + std::to_string(d4) + ", no open catalog matrix matches (resolved or not catalogued)";
    return out;
}

/// Catalog entry by tag; throws on unknown tags.
inline CatalogEntry const & catalog_entry(std::string_view tag)
{
    for (auto const & e : catalog()) {
        if (e.tag == tag)
            return e;
    }
    fail(ErrorKind::InvalidInput, "unknown catalog case " + std::string(tag));
}

} // namespace twotower
