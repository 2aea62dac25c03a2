#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "intrec/matrix.hpp"
#include "intrec/rational.hpp"

namespace intrec {

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntegerMatrix& a);
Rational determinant(const RationalMatrix& a);

std::size_t rank(const IntegerMatrix& a);
std::size_t rank(const RationalMatrix& a);

struct KernelBasis {
  /// Rational basis from the reduced row echelon form (one vector per free column).
  std::vector<RationalVector> vectors;
  /// Basis of the lattice ker(A) ∩ Z^n, in column echelon form: vector t has
  /// its first nonzero entry, which is positive, at a strictly increasing
  /// index as t grows. Every vector is primitive.
  std::vector<IntVector> integral_lattice_basis;
};

KernelBasis kernel_basis(const RationalMatrix& a);

/// Column-style Hermite normal form: H = A·U with U unimodular (n×n). H is
/// lower echelon: its first `rank` columns are nonzero, each with a positive
/// pivot in a strictly increasing row, entries left of a pivot reduced into
/// [0, pivot); the remaining columns are zero. The last n-rank columns of U
/// form a basis of ker(A) ∩ Z^n.
struct HnfResult {
  IntegerMatrix h;
  IntegerMatrix u;
  std::size_t rank = 0;
  /// Row index of the pivot of each of the first `rank` columns.
  std::vector<std::size_t> pivot_rows;
};

HnfResult hermite_normal_form(const IntegerMatrix& a);
/// Requires integral entries.
HnfResult hermite_normal_form(const RationalMatrix& a);

/// Some x in Z^n with Ax = b, or nullopt when none exists. Rows of (A|b) are
/// scaled to integers first, so rational data is accepted.
std::optional<IntVector> hnf_solve(const RationalMatrix& a, const RationalVector& b);

/// Column-echelon basis (as in KernelBasis) of the lattice generated by the
/// given integer vectors of length n.
std::vector<IntVector> lattice_echelon_basis(const std::vector<IntVector>& generators,
                                             std::size_t n);

inline constexpr std::size_t kDefaultColumnGate = 20;

/// Smallest number of linearly dependent columns; nullopt means +infinity
/// (independent columns). Throws BudgetExceeded when n > max_columns.
std::optional<std::size_t> spark(const RationalMatrix& a,
                                 std::size_t max_columns = kDefaultColumnGate);

/// Every nonsingular m×m submatrix has determinant ±1. Requires integral
/// entries; DimensionError when m > n.
bool is_unimodular(const RationalMatrix& a, std::size_t max_columns = kDefaultColumnGate);

/// Every square submatrix has determinant 0 or ±1.
bool is_totally_unimodular(const RationalMatrix& a,
                           std::size_t max_columns = kDefaultColumnGate);

}  // namespace intrec
