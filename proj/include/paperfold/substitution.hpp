/*
 * The semi-cube block substitution for paperfolding structures.
 *
 * A semi-cube is a half-open unit cube owning its d lower faces; its type
 * (letter) is the d lower-face signs plus the d parity bits of its reference
 * point, 4^d letters in total.  The substitution doubles a semi-cube and
 * fills the interior with a reflected copy of the first d-fold whose orientation
 * depends only on the reference point parities; the outer faces are
 * inherited.  Iterating from the central 2^d block of generation two regenerates the
 * recursion's patterns from the centre outwards, which equivalence_check
 * verifies face by face.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "paperfold/crease.hpp"

namespace paperfold {

/// A semi-cube tile type.  face_signs[i] is the sign on the lower face
/// perpendicular to axis i+1; parity[i] is the parity of coordinate i+1 of
/// the reference point.
struct Letter {
    std::vector<Sign> face_signs;
    std::vector<std::uint8_t> parity;

    int dimension() const { return static_cast<int>(face_signs.size()); }

    /// Packed code in 0..4^d-1: (face bits << d) | parity bits, axis 1 least
    /// significant, crest = 1.
    int code() const;
    static Letter from_code(int d, int code);

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A block substitution on an abstract alphabet: every letter maps to a
/// 2 x ... x 2 block.  images[letter][delta] is the child at block position
/// delta in {0,1}^d, encoded with axis 1 as the least significant bit.
struct BlockRule {
    int d = 1;
    int alphabet = 0;
    std::vector<std::vector<int>> images;

    int block_size() const { return 1 << d; }
    void validate() const;
};

/// The paperfolding block substitution on the 4^d semi-cube letters.
class BlockSubstitution {
  public:
    /// Derives the rule from the reflection calculus: child parity is the
    /// block position, outer faces are inherited, interior faces carry the
    /// reflected first-fold signs determined by the parent parities.
    static BlockSubstitution derive_rule(int d);

    int dimension() const { return d_; }
    int alphabet_size() const { return static_cast<int>(images_.size()); }
    int block_size() const { return 1 << d_; }

    int image_code(int parent_code, int delta_code) const {
        return images_[parent_code][delta_code];
    }
    Letter image(const Letter& parent, int delta_code) const;

    BlockRule as_block_rule() const;

  private:
    int d_ = 1;
    std::vector<std::vector<int>> images_;
};

/// A dense box of semi-cube letters with an absolute origin (lowest cell).
/// Cells are stored with axis 1 varying fastest.
struct SymbolicPattern {
    int d = 1;
    Coords origin;
    Coords shape;
    std::vector<int> cells;

    std::size_t cell_count() const { return cells.size(); }
    bool in_box(const Coords& absolute) const;
    int letter_at(const Coords& absolute) const;
    std::size_t linear_index(const Coords& absolute) const;

    /// Checks that every letter's parity bits equal the parities of its
    /// absolute cell coordinates; throws on violation.
    void check_parity() const;

    friend bool operator==(const SymbolicPattern&, const SymbolicPattern&) = default;
};

/// The standard seed: the central 2^d block of generation two, origin (-1,...,-1).
SymbolicPattern seed(int d);

/// One substitution step: origin and shape double, each cell expands to its
/// image block.  Rejects patterns violating the parity invariant.
SymbolicPattern substitute(const SymbolicPattern& p, const BlockSubstitution& rule);

/// Emits the d owned lower faces of every cell as a crease pattern.
CreasePattern to_creases(const SymbolicPattern& p);

struct EquivalenceReport {
    int d = 0;
    int steps = 0;
    bool equal = false;
    std::uint64_t faces_compared = 0;
    std::optional<FaceId> first_mismatch;
    std::optional<Sign> recursion_sign;   // sign in the recursion pattern, if present
    std::optional<Sign> substitution_sign;
};

/// Substitutes the seed k times and compares the resulting creases with
/// generate_recursive(d, k+2) on the owned faces of [-2^k, 2^k)^d.
EquivalenceReport equivalence_check(int d, int k,
                                    std::uint64_t cell_budget = default_cell_budget);

}  // namespace paperfold
