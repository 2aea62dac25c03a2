#include "intrec/instance.hpp"

#include "intrec/errors.hpp"
#include "intrec/support.hpp"

namespace intrec {

std::string to_string(Objective objective) { return objective == Objective::L0 ? "l0" : "l1"; }

Objective parse_objective(const std::string& text) {
  if (text == "l0") {
    return Objective::L0;
  }
  if (text == "l1") {
    return Objective::L1;
  }
  throw ParseError("unknown objective '" + text + "' (expected l0 or l1)");
}

RecoveryInstance::RecoveryInstance(RationalMatrix a_, RationalVector b_, ConstraintSet x_,
                                   Objective objective_)
    : a(std::move(a_)), b(std::move(b_)), x(std::move(x_)), objective(objective_) {
  require_nonempty(a, "instance");
  if (b.size() != a.rows()) {
    throw DimensionError("right-hand side has length " + std::to_string(b.size()) + ", expected " +
                         std::to_string(a.rows()));
  }
  if (x.dimension() != a.cols()) {
    throw DimensionError("constraint set has dimension " + std::to_string(x.dimension()) +
                         ", expected " + std::to_string(a.cols()));
  }
}

Rational RecoveryInstance::value_of(const RationalVector& point) const {
  if (objective == Objective::L0) {
    return Rational(static_cast<long>(l0_norm(point)));
  }
  return l1_norm(point);
}

bool RecoveryInstance::is_feasible(const RationalVector& point) const {
  return point.size() == a.cols() && multiply(a, point) == b && x.contains(point);
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::Feasible:
      return "feasible";
    case SolveStatus::LimitReached:
      return "limit";
  }
  return "?";
}

}  // namespace intrec
