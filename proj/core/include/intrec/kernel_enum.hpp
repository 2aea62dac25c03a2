#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "intrec/matrix.hpp"
#include "intrec/rational.hpp"

namespace intrec {

/// Caps for exhaustive searches. Exceeding a cap raises BudgetExceeded.
struct EnumerationBudget {
  /// Candidate points visited by a lattice or box enumeration.
  std::size_t max_points = 10'000'000;
  /// Supports or sign patterns examined by order-s checks.
  std::size_t max_support_sets = 1'000'000;
};

/// Return false to stop the enumeration.
using PointVisitor = std::function<bool(const IntVector&)>;

/// Visits every point of the lattice spanned by an echelon basis (as in
/// KernelBasis::integral_lattice_basis) that lies in [lower, upper], in
/// lexicographic order, the zero vector included when it is in the box.
/// Returns false when the visitor stopped early.
bool for_each_lattice_point(const std::vector<IntVector>& basis, const IntVector& lower,
                            const IntVector& upper, const EnumerationBudget& budget,
                            const PointVisitor& visit);

/// Lattice points of ker(A) ∩ Z^n in [lower, upper].
bool for_each_kernel_point(const RationalMatrix& a, const IntVector& lower,
                           const IntVector& upper, const EnumerationBudget& budget,
                           const PointVisitor& visit);

std::vector<IntVector> kernel_points(const RationalMatrix& a, const IntVector& lower,
                                     const IntVector& upper, const EnumerationBudget& budget = {});

}  // namespace intrec
