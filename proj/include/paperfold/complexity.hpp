/*
 * Subpattern complexity of the paperfolding structures: counts distinct
 * cubic n-windows (all faces with corner inside the half-open window box)
 * over growing generations until the count stabilizes.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paperfold/crease.hpp"

namespace paperfold {

/// Scan-friendly form of a crease pattern: one dense sign grid per axis,
/// indexed by face corner.
struct DenseCreases {
    int d = 1;
    int h = 0;  // extent
    // signs[axis-1][linear(corner)] in {-1 crest, 0 absent, +1 valley};
    // corners range over [-h, h-1]^d with side 2h.
    std::vector<std::vector<std::int8_t>> signs;

    std::size_t linear(const Coords& corner) const;
    std::int8_t sign_at(int axis, const Coords& corner) const;
};

DenseCreases densify(const CreasePattern& p);

/// Caches generated patterns per generation for repeated window scans.
class ComplexityContext {
  public:
    ComplexityContext(int d, std::uint64_t cell_budget = default_cell_budget)
        : d_(d), budget_(cell_budget) {}

    int dimension() const { return d_; }
    std::uint64_t budget() const { return budget_; }
    const DenseCreases& pattern(int m);

  private:
    int d_;
    std::uint64_t budget_;
    std::map<int, DenseCreases> cache_;
};

/// Number of distinct n-window keys of generate_recursive(d, m), sliding
/// over every position whose window faces all lie inside the pattern.
std::size_t count_patterns(int d, int n, int m,
                           std::uint64_t cell_budget = default_cell_budget);
std::size_t count_patterns(ComplexityContext& ctx, int n, int m);

/// The distinct window keys themselves, sorted.  Keys are translation
/// invariant: equal keys mean identical translated face maps.
std::vector<std::string> window_keys(ComplexityContext& ctx, int n, int m);

struct StabilizedCount {
    std::size_t count = 0;     // count at generation m
    int m = 0;                 // first generation with count(m) == count(m+1)
    bool stabilized = false;
    std::size_t next_count = 0;  // count at the last generation tried
};

/// Grows m until count(m) == count(m+1) with 2^m >= 4n; on budget
/// exhaustion returns the last two counts with stabilized = false.
StabilizedCount count_stabilized(int d, int n,
                                 std::uint64_t cell_budget = default_cell_budget);
StabilizedCount count_stabilized(ComplexityContext& ctx, int n);

/// The closed form for the 2-dimensional complexity, valid for n >= 3:
/// 12n^2 - 4 - 16*2^(2*floor(log2(n-1))) + 24n*2^(floor(log2(n-1))).
std::uint64_t p2_closed_form(std::uint64_t n);

/// One row of a complexity table, with the closed-form value where one
/// applies (4n for d=1 and n >= 7, the p2 form for d=2 and n >= 3).
struct ComplexityRow {
    int n = 0;
    std::size_t count = 0;
    int m = 0;
    bool stabilized = false;
    bool has_formula = false;
    std::uint64_t formula_value = 0;
};

struct ComplexityTable {
    int d = 1;
    std::vector<ComplexityRow> rows;

    std::string to_csv() const;  // header d,n,count,formula_value,match
};

ComplexityTable complexity_table(int d, int n_max,
                                 std::uint64_t cell_budget = default_cell_budget);

/// Number of distinct 2 x ... x 2 letter blocks (all offsets) in the
/// symbolic fixed point, grown until the count stabilizes.
std::size_t observed_block_constant(int d, std::uint64_t cell_budget = default_cell_budget);

struct GrowthBoundRow {
    int n = 0;
    std::size_t count = 0;
    std::uint64_t bound = 0;  // C * n^d
    bool within = false;
};

struct GrowthBoundReport {
    int d = 1;
    std::size_t block_constant = 0;  // C
    std::vector<GrowthBoundRow> rows;
    bool all_within = false;
    double max_ratio = 0.0;  // max over n of count / n^d
};

/// Verifies count_stabilized(d, n) <= C * n^d for n = 1..n_max, with C the
/// observed 2^d-block count.
GrowthBoundReport growth_bound_check(int d, int n_max,
                                     std::uint64_t cell_budget = default_cell_budget);

}  // namespace paperfold
