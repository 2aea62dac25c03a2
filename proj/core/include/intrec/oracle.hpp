#pragma once

#include <cstddef>
#include <vector>

#include "intrec/conditions.hpp"
#include "intrec/instance.hpp"
#include "intrec/kernel_enum.hpp"

namespace intrec {

/// Exhaustive reference answers for small instances. Nothing here reuses the
/// LP, MILP or condition-checking code.
struct OracleResult {
  SolveResult result;
  /// Number of optimal points; meaningless when `infinite_optima`.
  std::size_t optimal_count = 0;
  /// All optimal points in lexicographic order.
  std::vector<RationalVector> optima;
  bool infinite_optima = false;
};

/// Enumerates every integral point of [lower, upper] that also lies in the
/// instance's set X. result.unique is set.
OracleResult brute_solve(const RecoveryInstance& instance, const IntVector& lower,
                         const IntVector& upper, const EnumerationBudget& budget = {});
/// Uses the bounds of X, which must be a bounded integral set.
OracleResult brute_solve(const RecoveryInstance& instance, const EnumerationBudget& budget = {});

/// P0 over R^n or R^n_+ by increasing-size support enumeration with exact
/// elimination on each column subset.
OracleResult brute_solve_continuous_l0(const RecoveryInstance& instance,
                                       const EnumerationBudget& budget = {});

/// ker(A) ∩ [lower, upper]_Z, lexicographically sorted, zero included.
std::vector<IntVector> brute_kernel_points(const RationalMatrix& a, const IntVector& lower,
                                           const IntVector& upper,
                                           const EnumerationBudget& budget = {});

/// (s,X,0)-goodness from the definition: no two distinct s-sparse points of X
/// share Ax. On failure `partner` is the first point and partner + witness
/// the second. X must be a bounded integral set.
GoodnessVerdict brute_goodness(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                               const EnumerationBudget& budget = {});

/// (s,X,1)-goodness from the definition: every s-sparse point of X is the
/// unique l1-minimiser among the points of X with the same Ax.
GoodnessVerdict brute_goodness_l1(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                                  const EnumerationBudget& budget = {});

}  // namespace intrec
