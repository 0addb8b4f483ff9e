#include "paperfold/spectral.hpp"

#include <algorithm>
#include <stdexcept>

#include "paperfold/errors.hpp"

namespace paperfold {

std::int64_t SubstitutionMatrix::column_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < size; ++j) s += entries[j][i];
    return s;
}

SubstitutionMatrix substitution_matrix(const BlockRule& rule) {
    rule.validate();
    SubstitutionMatrix m;
    m.size = static_cast<std::size_t>(rule.alphabet);
    m.entries.assign(m.size, std::vector<std::int64_t>(m.size, 0));
    for (int i = 0; i < rule.alphabet; ++i)
        for (int child : rule.images[i]) ++m.entries[child][i];
    return m;
}

PrimitivityResult is_primitive(const BlockRule& rule, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const SubstitutionMatrix m = substitution_matrix(rule);
    const std::size_t n = m.size;

    std::vector<std::vector<bool>> support(n, std::vector<bool>(n, false));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) support[j][i] = m.entries[j][i] > 0;

    auto all_positive = [n](const std::vector<std::vector<bool>>& s) {
        for (const auto& row : s)
            for (bool b : row)
                if (!b) return false;
        return true;
    };

    std::vector<std::vector<bool>> power = support;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) {
            // power <- power * support (boolean product).
            std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t t = 0; t < n; ++t)
                    if (power[j][t])
                        for (std::size_t i = 0; i < n; ++i)
                            if (support[t][i]) next[j][i] = true;
            power = std::move(next);
        }
        if (all_positive(power)) return {true, k};
    }
    return {false, k_max};
}

bool seed_covers_alphabet(const BlockSubstitution& rule, const SymbolicPattern& seed_pattern,
                          int k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    SymbolicPattern p = seed_pattern;
    for (int i = 0; i < k; ++i) p = substitute(p, rule);
    std::vector<bool> seen(static_cast<std::size_t>(rule.alphabet_size()), false);
    for (int letter : p.cells) seen[static_cast<std::size_t>(letter)] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

CoincidenceReport find_coincidence(const BlockRule& rule, int k_max,
                                   std::uint64_t cell_budget) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    rule.validate();
    const int d = rule.d;
    const std::size_t m = static_cast<std::size_t>(rule.alphabet);

    // images[a] is the flat 2^(kd) block of rho^k(a), axis 1 fastest.
    std::vector<std::vector<int>> images(m);
    for (std::size_t a = 0; a < m; ++a) images[a] = {static_cast<int>(a)};

    CoincidenceReport report;
    std::size_t side = 1;
    for (int k = 1; k <= k_max; ++k) {
        side *= 2;
        std::uint64_t cell_count = 1;
        for (int i = 0; i < d; ++i) cell_count *= side;
        if (cell_count * m > cell_budget)
            throw BudgetError("find_coincidence: cell budget exceeded");

        for (std::size_t a = 0; a < m; ++a) {
            const std::vector<int>& prev = images[a];
            std::vector<int> next(static_cast<std::size_t>(cell_count));
            const std::size_t prev_side = side / 2;
            // Expand each parent cell into its 2^d block.
            std::vector<std::size_t> parent(static_cast<std::size_t>(d), 0);
            for (std::size_t idx = 0; idx < prev.size(); ++idx) {
                for (int delta = 0; delta < (1 << d); ++delta) {
                    std::size_t child_idx = 0, stride = 1;
                    for (int i = 0; i < d; ++i) {
                        child_idx += stride * (2 * parent[i] + (delta >> i & 1));
                        stride *= side;
                    }
                    next[child_idx] = rule.images[prev[idx]][delta];
                }
                for (int i = 0; i < d; ++i) {
                    if (++parent[i] < prev_side) break;
                    parent[i] = 0;
                }
            }
            images[a] = std::move(next);
        }

        // Collect every position where all letters' images agree.
        std::vector<Coords> hits;
        std::vector<std::size_t> pos(static_cast<std::size_t>(d), 0);
        for (std::size_t idx = 0; idx < images[0].size(); ++idx) {
            const int first = images[0][idx];
            bool same = true;
            for (std::size_t a = 1; a < m && same; ++a) same = images[a][idx] == first;
            if (same) {
                Coords c(d);
                for (int i = 0; i < d; ++i) c[i] = static_cast<int>(pos[i]);
                hits.push_back(std::move(c));
            }
            for (int i = 0; i < d; ++i) {
                if (++pos[i] < side) break;
                pos[i] = 0;
            }
        }
        if (!hits.empty()) {
            std::sort(hits.begin(), hits.end());
            report.found = true;
            report.k = k;
            report.position = hits.front();
            std::size_t idx = 0, stride = 1;
            for (int i = 0; i < d; ++i) {
                idx += stride * static_cast<std::size_t>(report.position[i]);
                stride *= side;
            }
            report.letter = images[0][idx];
            report.positions = std::move(hits);
            return report;
        }
    }
    report.found = false;
    report.k = k_max;
    return report;
}

std::vector<BigRational> letter_frequencies(const SubstitutionMatrix& m, std::int64_t eigenvalue) {
    const std::size_t n = m.size;
    if (n == 0) throw std::invalid_argument("empty matrix");
    // Solve (M - eigenvalue I) x = 0 by rational Gaussian elimination.
    std::vector<std::vector<BigRational>> a(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = BigRational(m.entries[i][j]);
            if (i == j) a[i][j] -= BigRational(eigenvalue);
        }

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        const BigRational inv = a[row][col];
        for (std::size_t j = col; j < n; ++j) a[row][j] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const BigRational f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row != n - 1)
        throw std::invalid_argument("eigenvalue does not have a one-dimensional eigenspace");

    // The single free column parametrizes the eigenvector.
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;

    std::vector<BigRational> x(n, BigRational(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][free_col];

    BigRational total(0);
    for (const auto& v : x) total += v;
    if (total == 0) throw std::invalid_argument("eigenvector has zero coordinate sum");
    for (auto& v : x) v /= total;
    return x;
}

}  // namespace paperfold
