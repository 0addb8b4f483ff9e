#include "paperfold/complexity.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "paperfold/errors.hpp"
#include "paperfold/substitution.hpp"

namespace paperfold {

std::size_t DenseCreases::linear(const Coords& corner) const {
    const std::size_t side = 2 * static_cast<std::size_t>(h);
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < d; ++i) {
        idx += stride * static_cast<std::size_t>(corner[i] + h);
        stride *= side;
    }
    return idx;
}

std::int8_t DenseCreases::sign_at(int axis, const Coords& corner) const {
    return signs[axis - 1][linear(corner)];
}

DenseCreases densify(const CreasePattern& p) {
    DenseCreases g;
    g.d = p.d;
    g.h = p.extent;
    std::size_t cells = 1;
    for (int i = 0; i < p.d; ++i) cells *= 2 * static_cast<std::size_t>(p.extent);
    g.signs.assign(static_cast<std::size_t>(p.d), std::vector<std::int8_t>(cells, 0));
    for (const auto& [id, sign] : p.faces) {
        bool in_range = true;
        for (int i = 0; i < p.d && in_range; ++i)
            in_range = id.corner[i] >= -p.extent && id.corner[i] < p.extent;
        if (in_range)
            g.signs[id.axis - 1][g.linear(id.corner)] = sign == Sign::valley ? 1 : -1;
    }
    return g;
}

const DenseCreases& ComplexityContext::pattern(int m) {
    auto it = cache_.find(m);
    if (it == cache_.end())
        it = cache_.emplace(m, densify(generate_recursive(d_, m, budget_))).first;
    return it->second;
}

namespace {

// Distinct window keys of the generation-m pattern.  A window at base x
// covers all faces with corner in [x, x+n)^d; the key lists their signs in a
// fixed (axis, offset) order, so equal keys mean identical translated face
// maps.
std::unordered_set<std::string> scan_windows(const DenseCreases& g, int n) {
    const int d = g.d;
    const int h = g.h;
    if ((1 << 30) < n || 2 * h - n < 1)
        throw std::invalid_argument("window larger than pattern");

    std::size_t offsets = 1;
    for (int i = 0; i < d; ++i) offsets *= static_cast<std::size_t>(n);

    // Precompute linear strides of the dense grid.
    const std::size_t side = 2 * static_cast<std::size_t>(h);
    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * side;

    // Relative linear offsets of the n^d window cells.
    std::vector<std::size_t> rel(offsets);
    {
        Coords o(d, 0);
        for (std::size_t idx = 0; idx < offsets; ++idx) {
            std::size_t lin = 0;
            for (int i = 0; i < d; ++i) lin += stride[i] * static_cast<std::size_t>(o[i]);
            rel[idx] = lin;
            for (int i = 0; i < d; ++i) {
                if (++o[i] < n) break;
                o[i] = 0;
            }
        }
    }

    std::unordered_set<std::string> keys;
    std::string key(static_cast<std::size_t>(d) * offsets, 0);

    // Positions: every coordinate in [-h+1, h-n].
    Coords x(d, -h + 1);
    while (true) {
        std::size_t base = 0;
        for (int i = 0; i < d; ++i) base += stride[i] * static_cast<std::size_t>(x[i] + h);
        std::size_t pos = 0;
        for (int axis = 0; axis < d; ++axis) {
            const auto& plane = g.signs[axis];
            for (std::size_t idx = 0; idx < offsets; ++idx)
                key[pos++] = static_cast<char>(plane[base + rel[idx]]);
        }
        keys.insert(key);

        int i = 0;
        for (; i < d; ++i) {
            if (++x[i] <= h - n) break;
            x[i] = -h + 1;
        }
        if (i == d) break;
    }
    return keys;
}

int first_generation(int n) {
    int m = 1;
    while ((1 << m) < 4 * n) ++m;
    return m;
}

}  // namespace

std::size_t count_patterns(ComplexityContext& ctx, int n, int m) {
    if (n < 1) throw std::invalid_argument("window size must be >= 1");
    if ((1 << m) < n) throw std::invalid_argument("window larger than pattern");
    return scan_windows(ctx.pattern(m), n).size();
}

std::vector<std::string> window_keys(ComplexityContext& ctx, int n, int m) {
    if (n < 1) throw std::invalid_argument("window size must be >= 1");
    if ((1 << m) < n) throw std::invalid_argument("window larger than pattern");
    const auto keys = scan_windows(ctx.pattern(m), n);
    std::vector<std::string> out(keys.begin(), keys.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_patterns(int d, int n, int m, std::uint64_t cell_budget) {
    ComplexityContext ctx(d, cell_budget);
    return count_patterns(ctx, n, m);
}

StabilizedCount count_stabilized(ComplexityContext& ctx, int n) {
    StabilizedCount result;
    int m = first_generation(n);
    std::size_t current = count_patterns(ctx, n, m);
    while (true) {
        std::size_t next;
        try {
            next = count_patterns(ctx, n, m + 1);
        } catch (const BudgetError&) {
            result.count = current;
            result.next_count = current;
            result.m = m;
            result.stabilized = false;
            return result;
        }
        if (next == current) {
            result.count = current;
            result.next_count = next;
            result.m = m;
            result.stabilized = true;
            return result;
        }
        current = next;
        ++m;
    }
}

StabilizedCount count_stabilized(int d, int n, std::uint64_t cell_budget) {
    ComplexityContext ctx(d, cell_budget);
    return count_stabilized(ctx, n);
}

std::uint64_t p2_closed_form(std::uint64_t n) {
    if (n < 3) throw std::invalid_argument("p2_closed_form is stated for n >= 3");
    std::uint64_t log2 = 0;
    for (std::uint64_t v = n - 1; v > 1; v >>= 1) ++log2;
    const std::uint64_t pow = std::uint64_t{1} << log2;
    return 12 * n * n - 4 - 16 * pow * pow + 24 * n * pow;
}

ComplexityTable complexity_table(int d, int n_max, std::uint64_t cell_budget) {
    ComplexityTable table;
    table.d = d;
    ComplexityContext ctx(d, cell_budget);
    for (int n = 1; n <= n_max; ++n) {
        ComplexityRow row;
        row.n = n;
        const StabilizedCount sc = count_stabilized(ctx, n);
        row.count = sc.count;
        row.m = sc.m;
        row.stabilized = sc.stabilized;
        if (d == 1 && n >= 7) {
            row.has_formula = true;
            row.formula_value = 4 * static_cast<std::uint64_t>(n);
        } else if (d == 2 && n >= 3) {
            row.has_formula = true;
            row.formula_value = p2_closed_form(static_cast<std::uint64_t>(n));
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string ComplexityTable::to_csv() const {
    std::ostringstream out;
    out << "d,n,count,formula_value,match\n";
    for (const auto& row : rows) {
        out << d << ',' << row.n << ',' << row.count << ',';
        if (row.has_formula)
            out << row.formula_value << ','
                << (row.formula_value == row.count ? "yes" : "no");
        else
            out << ',' << "na";
        out << '\n';
    }
    return out.str();
}

std::size_t observed_block_constant(int d, std::uint64_t cell_budget) {
    const BlockSubstitution rule = BlockSubstitution::derive_rule(d);
    SymbolicPattern p = seed(d);

    auto distinct_blocks = [d](const SymbolicPattern& pat) {
        std::unordered_set<std::string> keys;
        const int block_cells = 1 << d;
        std::string key(static_cast<std::size_t>(block_cells), 0);
        Coords x(pat.origin);
        Coords cell(d);
        while (true) {
            bool fits = true;
            for (int i = 0; i < d && fits; ++i)
                fits = x[i] + 1 < pat.origin[i] + pat.shape[i];
            if (fits) {
                for (int delta = 0; delta < block_cells; ++delta) {
                    for (int i = 0; i < d; ++i) cell[i] = x[i] + (delta >> i & 1);
                    key[delta] = static_cast<char>(pat.letter_at(cell));
                }
                keys.insert(key);
            }
            int i = 0;
            for (; i < d; ++i) {
                if (++x[i] < pat.origin[i] + pat.shape[i]) break;
                x[i] = pat.origin[i];
            }
            if (i == d) break;
        }
        return keys.size();
    };

    std::size_t current = distinct_blocks(p);
    while (true) {
        if ((p.cell_count() << d) > cell_budget)
            throw BudgetError("observed_block_constant: cell budget exceeded");
        p = substitute(p, rule);
        const std::size_t next = distinct_blocks(p);
        if (next == current) return current;
        current = next;
    }
}

GrowthBoundReport growth_bound_check(int d, int n_max, std::uint64_t cell_budget) {
    GrowthBoundReport report;
    report.d = d;
    report.block_constant = observed_block_constant(d, cell_budget);
    report.all_within = true;
    ComplexityContext ctx(d, cell_budget);
    for (int n = 1; n <= n_max; ++n) {
        GrowthBoundRow row;
        row.n = n;
        row.count = count_stabilized(ctx, n).count;
        std::uint64_t n_pow = 1;
        for (int i = 0; i < d; ++i) n_pow *= static_cast<std::uint64_t>(n);
        row.bound = report.block_constant * n_pow;
        row.within = row.count <= row.bound;
        report.all_within = report.all_within && row.within;
        report.max_ratio = std::max(report.max_ratio,
                                    static_cast<double>(row.count) / static_cast<double>(n_pow));
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace paperfold
