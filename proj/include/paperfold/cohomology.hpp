/*
 * Approximant cell complexes and Cech cohomology of substitution hulls for
 * d <= 2.  Letters are collared with their full neighbour pattern, the
 * collared tiles are glued along every legal adjacency into a finite CW
 * complex, and the substitution induces a cellular self-map.  Cohomology of
 * the approximant is computed exactly via Smith normal forms, and the
 * cohomology of the hull is the direct limit of the approximant cohomology
 * under the induced map, reported in a normal form with Z, Z[1/m] and finite
 * summands.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paperfold/exact.hpp"
#include "paperfold/substitution.hpp"

namespace paperfold {

/// A block substitution on letters decorated with the pattern of all their
/// 3^d - 1 neighbours, as those patterns occur in the substitution's fixed
/// point.
struct CollaredRule {
    BlockRule rule;  // induced rule on the collared alphabet
    int base_alphabet = 0;
    /// windows[c] is the 3^d block of base letters around collared letter c
    /// (axis 1 fastest); the centre cell is the underlying letter.
    std::vector<std::vector<int>> windows;
    std::vector<int> underlying;
    /// adjacent[axis-1] lists the legal ordered pairs (left, right) of
    /// collared letters along that axis.
    std::vector<std::vector<std::pair<int, int>>> adjacent;

    int underlying_letter(int collared) const { return underlying[collared]; }
};

/// Decorates the alphabet with one-step collars.  Requires a primitive rule;
/// throws BudgetError if the collar closure does not stabilize within the
/// window budget.
CollaredRule collar_letters(const BlockSubstitution& base,
                            std::size_t window_budget = 200000);

/// Generic variant for an arbitrary block rule, seeded with a legal patch
/// of letters (axis 1 fastest) of the given box shape.
CollaredRule collar_letters(const BlockRule& rule, const Coords& patch_shape,
                            const std::vector<int>& patch_letters,
                            std::size_t window_budget = 200000);

/// A finite CW complex together with the cellular self-map induced by the
/// substitution.  boundary[q] maps q-chains to (q-1)-chains (q >= 1);
/// self_map[q] is the chain map on q-chains.
struct CellComplex {
    int dim = 0;
    std::vector<std::size_t> cells;
    std::vector<IntMat> boundary;
    std::vector<IntMat> self_map;

    /// Throws unless boundary[q-1] * boundary[q] = 0 for all q.
    void check_boundary_squared() const;
    /// Throws unless boundary[q] * self_map[q] = self_map[q-1] * boundary[q].
    void check_chain_map() const;
};

/// Builds the approximant complex of a collared rule (d = 1 or 2): cells are
/// the collared tiles with their faces, identified along every legal
/// adjacency.
CellComplex ap_complex(const CollaredRule& collared);

/// A finitely generated abelian group in invariant-factor form.
struct FgGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // t1 | t2 | ..., each >= 2

    friend bool operator==(const FgGroup&, const FgGroup&) = default;
};

/// An endomorphism of an FgGroup, as an integer matrix on its generators
/// (torsion generators first, then free generators).
struct EndomorphismOnGroups {
    FgGroup group;
    IntMat matrix;

    /// Throws unless the matrix respects the relations.
    void validate() const;
};

/// H^q of the complex for q = 0..dim, each with the endomorphism induced by
/// the self-map (pullback on cochains).
std::vector<EndomorphismOnGroups> cohomology_of_complex(const CellComplex& complex);

/// Normal form of the direct limit of an FgGroup under an endomorphism:
/// free summands, m-adically divisible summands Z[1/m], and a finite part.
struct DirectLimitGroup {
    std::size_t free_rank = 0;
    /// (m, multiplicity) with m >= 2, ascending in m; each unit contributes
    /// one Z[1/m] summand.
    std::vector<std::pair<std::uint64_t, std::size_t>> localized;
    std::vector<Int> torsion;  // invariant factors of the stabilized finite part

    bool conclusive = true;    // false: presentation mode (see note)
    std::string note;

    /// Canonical print form: Z[1/m] summands in descending m, then Z^r,
    /// then Z/t ascending; "0" when trivial.
    std::string to_string() const;

    friend bool operator==(const DirectLimitGroup& a, const DirectLimitGroup& b) {
        return a.free_rank == b.free_rank && a.localized == b.localized &&
               a.torsion == b.torsion && a.conclusive == b.conclusive;
    }
};

/// Computes the direct limit of e.group under e.matrix.  The finite part is
/// the stabilized image of the torsion subgroup; the free part restricts to
/// the eventual image lattice and splits it by integer eigenvalue magnitude
/// when the splitting can be certified.  Otherwise the result is flagged
/// inconclusive and carries a presentation note (cokernel invariants of the
/// first k_stab powers, compared against `candidate` when supplied).
DirectLimitGroup direct_limit(const EndomorphismOnGroups& e, int k_stab = 20,
                              const DirectLimitGroup* candidate = nullptr);

/// Full pipeline for the paperfolding substitution: collar, approximant
/// complex, cohomology, direct limits.  Returns Cech H^0..H^d of the hull.
std::vector<DirectLimitGroup> paperfolding_cohomology(int d);

}  // namespace paperfold
