#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "intrec/instance.hpp"
#include "intrec/lp_model.hpp"
#include "intrec/rational.hpp"

namespace intrec {

enum class Pricing {
  /// Lowest-index improving column, lowest-index leaving row on ties.
  Bland,
  /// Largest reduced cost; switches to Bland while the objective stalls.
  Dantzig,
};

struct SimplexOptions {
  Pricing pricing = Pricing::Bland;
  /// Consecutive degenerate pivots before Dantzig pricing falls back to Bland.
  std::size_t stall_limit = 20;
  /// Dual simplex iterations allowed on a warm start before a cold restart.
  std::size_t dual_iteration_cap = 2000;
};

struct BoundVectors {
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
};

/// Opaque optimal basis, reusable as a warm start after bound changes.
struct Tableau;

struct LpOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  /// Objective value in the model's sense (Optimal only).
  Rational value;
  RationalVector x;
  std::shared_ptr<const Tableau> tableau;
  std::size_t iterations = 0;
  bool warm_started = false;
};

/// Exact bounded-variable simplex over a fraction-free integer tableau.
/// Rows are scaled to integers; all arithmetic is exact.
class SimplexEngine {
 public:
  explicit SimplexEngine(const LpModel& model, SimplexOptions options = {});

  [[nodiscard]] const BoundVectors& model_bounds() const { return model_bounds_; }

  /// Solves with the model's bounds.
  [[nodiscard]] LpOutcome solve() const;
  /// Solves with overriding bounds. A warm tableau from an earlier solve of
  /// this engine is re-optimised by the dual simplex.
  [[nodiscard]] LpOutcome solve(const BoundVectors& bounds,
                                const std::shared_ptr<const Tableau>& warm = nullptr) const;

  struct Work;

 private:

  LpOutcome cold(const BoundVectors& bounds) const;
  LpOutcome finish(Work& w, std::size_t iterations, bool warm) const;

  RationalVector objective_;
  SimplexOptions options_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
  std::vector<Integer> b_;
  std::vector<Integer> cost_;
  BoundVectors model_bounds_;
};

/// Solves the LP relaxation (integrality ignored).
SolveResult solve_lp(const LpModel& model, SimplexOptions options = {});

}  // namespace intrec
