/*
 * Exact integer linear algebra over arbitrary-precision integers: dense
 * matrices, Smith normal form with unimodular transforms, kernels, saturated
 * images, linear solving and characteristic polynomials.  No floating point.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace paperfold {

using Int = boost::multiprecision::cpp_int;

class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    friend bool operator==(const IntMat&, const IntMat&) = default;

    IntMat scaled(const Int& f) const;
    IntMat power(std::size_t e) const;  // square matrices
    bool is_zero() const;
    IntMat columns(const std::vector<std::size_t>& idx) const;
    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

struct SmithOptions {
    bool want_u = true;
    bool want_uinv = true;
    bool want_v = true;
    bool want_vinv = true;
};

/// u * m * v = d with u, v unimodular and d diagonal with d1 | d2 | ...
/// (diagonal entries nonnegative).  Only the requested transforms are
/// populated; the others are empty matrices.
struct SmithResult {
    IntMat d;
    IntMat u, u_inv;
    IntMat v, v_inv;
    std::size_t rank = 0;

    /// The nonzero diagonal entries d1 | d2 | ... .
    std::vector<Int> invariant_factors() const;
};

SmithResult smith_normal_form(const IntMat& m, const SmithOptions& opt = SmithOptions{});

std::size_t rank(const IntMat& m);

/// Determinant by fraction-free elimination.
Int determinant(const IntMat& m);

/// Columns form a basis of ker(m) (a saturated sublattice).
IntMat kernel_basis(const IntMat& m);

/// Columns form a basis of the saturation of the column span of m.
IntMat image_basis_saturated(const IntMat& m);

/// Canonical basis of the column lattice of m: lower column echelon form
/// with positive pivots and reduced off-pivot entries.  Keeps coordinates
/// small where an arbitrary unimodular basis would blow up.
IntMat column_hermite_basis(const IntMat& m);

/// Integer solutions X of A X = B, if any.
std::optional<IntMat> solve_exact(const IntMat& a, const IntMat& b);

/// Coefficients of det(xI - m), lowest degree first (size n+1, monic).
std::vector<Int> characteristic_polynomial(const IntMat& m);

/// Evaluates a polynomial (lowest degree first) at the matrix m.
IntMat evaluate_polynomial(const std::vector<Int>& coeffs, const IntMat& m);

/// All integer roots with multiplicities, in ascending order; returns
/// nothing unless the polynomial splits completely over the integers.
std::optional<std::vector<std::pair<Int, std::size_t>>> integer_roots(
    const std::vector<Int>& coeffs);

}  // namespace paperfold
