/*
 * Exact construction of d-dimensional paperfolding crease patterns.
 *
 * A crease pattern is a finite set of signed unit (d-1)-faces on the integer
 * grid, centered at the origin.  The n-th generation is the pattern left by
 * n d-folds of a
 * hypercubic paper (each d-fold is one edge-to-edge fold per axis, negative
 * half onto positive half, bending upwards).  Patterns are built by the
 * reflection recursion; an independent physical fold simulator serves as a
 * test oracle for the parity lemmas.
 */
#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace paperfold {

/// Crease sign: valley (+) or crest (-).
enum class Sign : std::int8_t { valley = +1, crest = -1 };

constexpr Sign negated(Sign s) {
    return s == Sign::valley ? Sign::crest : Sign::valley;
}

constexpr char sign_char(Sign s) { return s == Sign::valley ? '+' : '-'; }

Sign sign_from_char(char c);

/// A point or offset in Z^d.
using Coords = std::vector<int>;

/// Label of a sector-crease of the first d-fold: a vector over {-1,0,+1} with
/// one zero component.  The zero position is the axis perpendicular to the
/// crease; the remaining entries select one of 2^(d-1) sectors.
struct CreaseLabel {
    std::vector<std::int8_t> components;

    int dimension() const { return static_cast<int>(components.size()); }
    /// 1-based position of the unique zero. Throws if the label is invalid.
    int zero_axis() const;
    void validate() const;
};

/// Identifies a unit (d-1)-face of the grid: the face lies in the hyperplane
/// x_axis = corner[axis-1] and `corner` is its lexicographically smallest
/// corner.
struct FaceId {
    int axis = 1;
    Coords corner;

    friend bool operator==(const FaceId&, const FaceId&) = default;
    friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

/// A finite signed crease pattern supported inside [-extent, extent]^d.
struct CreasePattern {
    int d = 1;
    int extent = 0;
    std::map<FaceId, Sign> faces;

    std::size_t face_count() const { return faces.size(); }
    bool empty() const { return faces.empty(); }

    /// Inserts a face; throws on duplicate keys or faces outside the extent.
    void insert_face(FaceId id, Sign s);
    /// Re-checks the full pattern (dimension, extent, key validity).
    void check_invariants() const;

    friend bool operator==(const CreasePattern&, const CreasePattern&) = default;
};

/// A set of reflection axes, strictly increasing.  Encodes the sequence
/// a_1 < a_2 < ... < a_r of axis reflections applied to the first d-fold.
struct ReflectionSet {
    std::vector<int> axes;

    void validate(int d) const;
    bool contains(int axis) const;
};

/// Orthant label phi in {+1,-1}^d; the orthant is {x : phi_i x_i > 0}.
struct OrthantLabel {
    std::vector<std::int8_t> signs;

    int dimension() const { return static_cast<int>(signs.size()); }
    void validate() const;
};

/// Sign of the crease labelled sigma in the first d-fold: the sign of the product of
/// the components before the zero position (empty product is +).
Sign crease_sign(const CreaseLabel& sigma);

/// Sign of the crease labelled sigma after reflecting the first d-fold along every
/// axis in `a`: crease_sign(sigma) negated iff the number of elements of
/// `a` that are >= the zero position is odd.
Sign reflected_sign(const ReflectionSet& a, const CreaseLabel& sigma);

/// The first d-fold: one unit face per sector-crease label, extent 1,
/// d * 2^(d-1) faces in total.
CreasePattern build_s1(int d);

/// Mirror image under x_axis -> -x_axis with all signs swapped.
CreasePattern reflect(const CreasePattern& p, int axis);

/// Composition of `reflect` over all axes i with phi_i = -1.
CreasePattern orthant_reflection(const OrthantLabel& phi, const CreasePattern& p);

/// All faces translated by t; extent grows to keep the pattern inside.
CreasePattern translate(const CreasePattern& p, const Coords& t);

inline constexpr std::uint64_t default_cell_budget = std::uint64_t{1} << 26;

/// The generation-n pattern, extent 2^(n-1): central full-hyperplane creases
/// signed per sector, plus a reflected copy of generation n-1 centered in each
/// orthant.  Throws BudgetError when (2^n)^d exceeds the cell budget.
CreasePattern generate_recursive(int d, int n,
                                 std::uint64_t cell_budget = default_cell_budget);

enum class Facing : std::uint8_t { up, down };

/// Physically folds a strip of 2^n unit cells (left half onto right half,
/// upwards, n times) and reports each cell's final orientation, indexed by
/// original position -2^(n-1)..2^(n-1)-1 (a single cell at 0 for n = 0).
std::vector<Facing> simulate_strip_fold(int n, int max_n = 20);

}  // namespace paperfold
