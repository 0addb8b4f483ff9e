#include "paperfold/exact.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace paperfold {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& f = at(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Int& g = o.at(k, j);
                if (g != 0) r.at(i, j) += f * g;
            }
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix sum shape mismatch");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMat IntMat::scaled(const Int& f) const {
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * f;
    return r;
}

IntMat IntMat::power(std::size_t e) const {
    if (rows_ != cols_) throw std::invalid_argument("matrix power needs a square matrix");
    IntMat result = identity(rows_);
    IntMat base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool IntMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
}

IntMat IntMat::columns(const std::vector<std::size_t>& idx) const {
    IntMat r(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j).str();
        out << '\n';
    }
    return out.str();
}

std::vector<Int> SmithResult::invariant_factors() const {
    std::vector<Int> f;
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) f.push_back(d.at(i, i));
    return f;
}

namespace {

// Elementary operation bookkeeping for U * M * V = D.
struct Transforms {
    IntMat m;
    IntMat u, u_inv, v, v_inv;
    SmithOptions opt;

    explicit Transforms(const IntMat& input, const SmithOptions& o) : m(input), opt(o) {
        if (o.want_u) u = IntMat::identity(input.rows());
        if (o.want_uinv) u_inv = IntMat::identity(input.rows());
        if (o.want_v) v = IntMat::identity(input.cols());
        if (o.want_vinv) v_inv = IntMat::identity(input.cols());
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
        if (opt.want_u)
            for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        if (opt.want_uinv)
            for (std::size_t r = 0; r < u_inv.rows(); ++r)
                std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
        if (opt.want_v)
            for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        if (opt.want_vinv)
            for (std::size_t c = 0; c < v_inv.cols(); ++c)
                std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }

    // row i += q * row j
    void row_add(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(j, c) != 0) m.at(i, c) += q * m.at(j, c);
        if (opt.want_u)
            for (std::size_t c = 0; c < u.cols(); ++c)
                if (u.at(j, c) != 0) u.at(i, c) += q * u.at(j, c);
        if (opt.want_uinv)
            for (std::size_t r = 0; r < u_inv.rows(); ++r)
                if (u_inv.at(r, i) != 0) u_inv.at(r, j) -= q * u_inv.at(r, i);
    }

    // col j += q * col i
    void col_add(std::size_t j, std::size_t i, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.at(r, i) != 0) m.at(r, j) += q * m.at(r, i);
        if (opt.want_v)
            for (std::size_t r = 0; r < v.rows(); ++r)
                if (v.at(r, i) != 0) v.at(r, j) += q * v.at(r, i);
        if (opt.want_vinv)
            for (std::size_t c = 0; c < v_inv.cols(); ++c)
                if (v_inv.at(j, c) != 0) v_inv.at(i, c) -= q * v_inv.at(j, c);
    }

    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
        if (opt.want_u)
            for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        if (opt.want_uinv)
            for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

// Rounded division: the q minimizing |a - q b|.
Int rounded_div(const Int& a, const Int& b) {
    Int q = a / b;
    const Int r = a - q * b;
    if (r != 0) {
        const Int twice = 2 * abs(r);
        if (twice > abs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    }
    return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& input, const SmithOptions& opt) {
    Transforms t(input, opt);
    const std::size_t rows = input.rows(), cols = input.cols();
    const std::size_t steps = std::min(rows, cols);

    std::size_t k = 0;
    for (; k < steps; ++k) {
        // Pivot: smallest nonzero magnitude in the remaining block.
        std::size_t pi = k, pj = k;
        bool found = false;
        Int best;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const Int& x = t.m.at(i, j);
                if (x == 0) continue;
                const Int a = abs(x);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        t.swap_rows(k, pi);
        t.swap_cols(k, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (t.m.at(i, k) == 0) continue;
                const Int q = rounded_div(t.m.at(i, k), t.m.at(k, k));
                t.row_add(i, k, -q);
                if (t.m.at(i, k) != 0) {
                    // Remainder is smaller than the pivot; promote it.
                    t.swap_rows(k, i);
                    clean = false;
                }
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (t.m.at(k, j) == 0) continue;
                const Int q = rounded_div(t.m.at(k, j), t.m.at(k, k));
                t.col_add(j, k, -q);
                if (t.m.at(k, j) != 0) {
                    t.swap_cols(k, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Divisibility: the pivot must divide the rest of the block.
            bool fixed = false;
            for (std::size_t i = k + 1; i < rows && !fixed; ++i)
                for (std::size_t j = k + 1; j < cols && !fixed; ++j) {
                    if (t.m.at(i, j) % t.m.at(k, k) != 0) {
                        t.row_add(k, i, Int(1));
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (t.m.at(k, k) < 0) t.negate_row(k);
    }

    SmithResult res;
    res.rank = k;
    res.d = std::move(t.m);
    res.u = std::move(t.u);
    res.u_inv = std::move(t.u_inv);
    res.v = std::move(t.v);
    res.v_inv = std::move(t.v_inv);
    return res;
}

std::size_t rank(const IntMat& m) {
    SmithOptions opt;
    opt.want_u = opt.want_uinv = opt.want_v = opt.want_vinv = false;
    return smith_normal_form(m, opt).rank;
}

Int determinant(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

IntMat kernel_basis(const IntMat& m) {
    if (m.rows() == 0) return IntMat::identity(m.cols());
    SmithOptions opt;
    opt.want_u = opt.want_uinv = false;
    opt.want_v = true;
    opt.want_vinv = false;
    const SmithResult s = smith_normal_form(m, opt);
    std::vector<std::size_t> idx;
    for (std::size_t j = s.rank; j < m.cols(); ++j) idx.push_back(j);
    return s.v.columns(idx);
}

IntMat image_basis_saturated(const IntMat& m) {
    if (m.cols() == 0 || m.rows() == 0) return IntMat(m.rows(), 0);
    SmithOptions opt;
    opt.want_u = false;
    opt.want_uinv = true;
    opt.want_v = opt.want_vinv = false;
    const SmithResult s = smith_normal_form(m, opt);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < s.rank; ++j) idx.push_back(j);
    return column_hermite_basis(s.u_inv.columns(idx));
}

IntMat column_hermite_basis(const IntMat& m) {
    IntMat a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < rows; ++r)
            if (a.at(r, src) != 0) a.at(r, dst) -= q * a.at(r, src);
    };
    std::size_t lead = 0;
    for (std::size_t row = 0; row < rows && lead < cols; ++row) {
        // Euclidean elimination across columns lead..cols-1 on this row.
        while (true) {
            std::size_t best = cols;
            for (std::size_t c = lead; c < cols; ++c) {
                if (a.at(row, c) == 0) continue;
                if (best == cols || abs(a.at(row, c)) < abs(a.at(row, best))) best = c;
            }
            if (best == cols) break;  // row is clear
            bool reduced_all = true;
            for (std::size_t c = lead; c < cols; ++c) {
                if (c == best || a.at(row, c) == 0) continue;
                col_sub(c, best, a.at(row, c) / a.at(row, best));
                if (a.at(row, c) != 0) reduced_all = false;
            }
            if (reduced_all) {
                // Promote the pivot column and normalize.
                for (std::size_t r = 0; r < rows; ++r) std::swap(a.at(r, lead), a.at(r, best));
                if (a.at(row, lead) < 0)
                    for (std::size_t r = 0; r < rows; ++r) a.at(r, lead) = -a.at(r, lead);
                // Reduce the pivot row entries of the earlier columns.
                for (std::size_t c = 0; c < lead; ++c) {
                    Int q = a.at(row, c) / a.at(row, lead);
                    if (a.at(row, c) - q * a.at(row, lead) < 0) q -= 1;
                    col_sub(c, lead, q);
                }
                ++lead;
                break;
            }
        }
    }
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < lead; ++c) keep.push_back(c);
    return a.columns(keep);
}

std::optional<IntMat> solve_exact(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
    SmithOptions opt;
    opt.want_u = true;
    opt.want_uinv = false;
    opt.want_v = true;
    opt.want_vinv = false;
    const SmithResult s = smith_normal_form(a, opt);
    const IntMat ub = s.u * b;
    IntMat y(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Int& rhs = ub.at(i, j);
            if (i < s.rank) {
                if (rhs % s.d.at(i, i) != 0) return std::nullopt;
                y.at(i, j) = rhs / s.d.at(i, i);
            } else if (rhs != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * y;
}

std::vector<Int> characteristic_polynomial(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("charpoly needs a square matrix");
    const std::size_t n = m.rows();
    // Faddeev-LeVerrier: all divisions are exact.
    std::vector<Int> c(n + 1);
    c[n] = 1;
    IntMat mk(n, n);  // zero
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += c[n - k + 1];
        mk = m * mk;
        Int trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += mk.at(i, i);
        c[n - k] = -trace / Int(k);
    }
    return c;
}

IntMat evaluate_polynomial(const std::vector<Int>& coeffs, const IntMat& m) {
    const std::size_t n = m.rows();
    IntMat acc(n, n);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += coeffs[k];
    }
    return acc;
}

namespace {

// p(x) / (x - r), assuming r is a root.
std::vector<Int> deflate(const std::vector<Int>& p, const Int& r) {
    std::vector<Int> q(p.size() - 1);
    Int carry = 0;
    for (std::size_t k = p.size(); k-- > 1;) {
        carry = p[k] + r * carry;
        q[k - 1] = carry;
    }
    return q;
}

Int evaluate(const std::vector<Int>& p, const Int& x) {
    Int acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

}  // namespace

std::optional<std::vector<std::pair<Int, std::size_t>>> integer_roots(
    const std::vector<Int>& coeffs) {
    std::vector<Int> p = coeffs;
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) throw std::invalid_argument("zero polynomial");

    std::vector<std::pair<Int, std::size_t>> roots;
    // Strip x^k factors (roots at 0).
    std::size_t zeros = 0;
    while (p.size() > 1 && p.front() == 0) {
        p.erase(p.begin());
        ++zeros;
    }
    if (zeros > 0) roots.emplace_back(Int(0), zeros);

    while (p.size() > 1) {
        // An integer root divides the constant term.
        const Int c0 = abs(p.front());
        bool found = false;
        for (Int cand = 1; cand * cand <= c0 && !found; ++cand) {
            if (c0 % cand != 0) continue;
            for (const Int& base : {Int(cand), Int(c0 / cand)}) {
                for (const Int& r : {Int(base), Int(-base)}) {
                    if (evaluate(p, r) == 0) {
                        std::size_t mult = 0;
                        while (p.size() > 1 && evaluate(p, r) == 0) {
                            p = deflate(p, r);
                            ++mult;
                        }
                        roots.emplace_back(r, mult);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
        if (!found) return std::nullopt;  // does not split over the integers
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace paperfold
