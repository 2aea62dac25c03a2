#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "intrec/constraint_set.hpp"
#include "intrec/matrix.hpp"
#include "intrec/rational.hpp"

namespace intrec {

enum class Objective { L0, L1 };

std::string to_string(Objective objective);
Objective parse_objective(const std::string& text);

/// min ||x||_0 or ||x||_1 subject to Ax = b, x in X.
struct RecoveryInstance {
  RationalMatrix a;
  RationalVector b;
  ConstraintSet x;
  Objective objective = Objective::L0;

  RecoveryInstance(RationalMatrix a, RationalVector b, ConstraintSet x, Objective objective);

  /// Objective value of a candidate point.
  [[nodiscard]] Rational value_of(const RationalVector& point) const;
  /// Ax = b and point in X, exactly.
  [[nodiscard]] bool is_feasible(const RationalVector& point) const;
};

enum class SolveStatus {
  Optimal,
  Infeasible,
  Unbounded,
  /// A solution was found that beats the cutoff; search stopped early.
  Feasible,
  /// Time or node limit hit; value holds the incumbent if any.
  LimitReached,
};

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Rational> value;
  std::optional<RationalVector> solution;
  std::optional<bool> unique;
  std::size_t nodes_explored = 0;
  std::size_t lp_iterations = 0;
  /// Best proven bound on the optimum (LimitReached runs).
  std::optional<Rational> bound;

  [[nodiscard]] bool has_solution() const { return solution.has_value(); }
};

}  // namespace intrec
