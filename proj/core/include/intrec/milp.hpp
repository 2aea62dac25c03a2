#pragma once

#include <cstddef>
#include <optional>

#include "intrec/instance.hpp"
#include "intrec/lp_model.hpp"
#include "intrec/simplex.hpp"

namespace intrec {

struct MilpOptions {
  SimplexOptions simplex;
  /// Stop with status Feasible as soon as an incumbent strictly better than
  /// this value (in the model's sense) is found.
  std::optional<Rational> cutoff;
  /// Wall-clock budget in seconds; zero or negative disables the limit.
  double time_limit = 0;
  /// Maximum number of processed nodes; zero disables the limit.
  std::size_t node_limit = 0;
  /// Children warm-start from their parent's basis while the open set is
  /// smaller than this, otherwise from the root basis.
  std::size_t warm_frontier_limit = 128;
};

/// Exact branch-and-bound: best-bound node selection (ties: deeper first,
/// then creation order), most-fractional branching with ties to the lowest
/// index, down branch created first. Integral variables must have finite
/// bounds (UnboundedIntegral otherwise); their bounds are rounded inward.
SolveResult solve_milp(const LpModel& model, const MilpOptions& options = {});

}  // namespace intrec
