/*
 * Substitution matrix, primitivity and Dekking coincidence checks for
 * arbitrary block substitutions.
 */
#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "paperfold/substitution.hpp"

namespace paperfold {

using BigRational = boost::multiprecision::cpp_rational;

/// entries[j][i] = number of occurrences of letter j in the image block of
/// letter i.  Every column sums to the block volume 2^d.
struct SubstitutionMatrix {
    std::size_t size = 0;
    std::vector<std::vector<std::int64_t>> entries;

    std::int64_t column_sum(std::size_t i) const;
};

SubstitutionMatrix substitution_matrix(const BlockRule& rule);

struct PrimitivityResult {
    bool primitive = false;
    int k = 0;  // smallest k with strictly positive k-th power support, else k_max
};

/// Decides primitivity on the support of powers of the substitution matrix.
PrimitivityResult is_primitive(const BlockRule& rule, int k_max = 8);

/// True iff substituting the seed k times produces every letter of the
/// alphabet.
bool seed_covers_alphabet(const BlockSubstitution& rule, const SymbolicPattern& seed_pattern,
                          int k);

struct CoincidenceReport {
    bool found = false;
    int k = 0;
    Coords position;               // lexicographically first coincidence at level k
    int letter = -1;               // the common letter there
    std::vector<Coords> positions; // all coincidence positions at level k
};

/// Searches k = 1..k_max for a position of the 2^k block at which the k-fold
/// images of all letters show the same letter.
CoincidenceReport find_coincidence(const BlockRule& rule, int k_max = 6,
                                   std::uint64_t cell_budget = default_cell_budget);

/// Exact letter frequencies: the Perron eigenvector of the substitution
/// matrix for the eigenvalue 2^d (the constant column sum), normalized to
/// sum 1.
std::vector<BigRational> letter_frequencies(const SubstitutionMatrix& m, std::int64_t eigenvalue);

}  // namespace paperfold
