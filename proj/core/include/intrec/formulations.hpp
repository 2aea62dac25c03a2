#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "intrec/instance.hpp"
#include "intrec/lp_model.hpp"
#include "intrec/milp.hpp"

namespace intrec {

/// A recovery model plus the map from its variables back to the signal x.
struct RecoveryModel {
  LpModel model;
  /// Variable carrying x_i (P0) or x_i^+ (P1).
  std::vector<std::size_t> positive;
  /// x_i^- of the P1 split; absent when x_i cannot be negative.
  std::vector<std::optional<std::size_t>> negative;
  /// Support indicators of P0 (equal to `positive` when collapsed).
  std::vector<std::size_t> indicators;

  [[nodiscard]] RationalVector signal(const RationalVector& solution) const;
  /// Variables identifying x uniquely, for uniqueness cuts.
  [[nodiscard]] std::vector<std::size_t> signal_variables() const;
};

struct FormulationOptions {
  /// For nonnegative sets without upper bounds: derive exact bounds
  /// x_i <= b_k / a_ki from rows whose coefficients are all nonnegative.
  bool derive_bounds = false;
};

/// min ||x||_0: support indicators y with l_i y_i <= x_i <= u_i y_i. A binary
/// X collapses y onto x (min 1^T x over {0,1}^n).
RecoveryModel build_p0(const RecoveryInstance& instance, const FormulationOptions& options = {});

/// min ||x||_1 through the split x = x^+ - x^-; integrality is inherited.
RecoveryModel build_p1(const RecoveryInstance& instance, const FormulationOptions& options = {});

/// max 1^T v + 1^T w over binary v, w with Av = Aw, 1^T v <= s, 1^T w <= s,
/// v + w <= 1, 1^T v >= 1^T w. Optimum 0 iff A is (s,{0,1}^n,0)-good.
/// Variables: v_1..v_n then w_1..w_n.
LpModel build_goodness_binary(const RationalMatrix& a, std::size_t s);

/// Feasibility variant: adds 1^T(v + w) >= 1 and minimises. Infeasible iff good.
LpModel build_goodness_binary_alt(const RationalMatrix& a, std::size_t s);

/// Continuous v, w in [0,1] with binary support indicators y, z. Optimum 0
/// iff A is (s,[0,1]^n_R,0)-good. Variables: v, w, y, z (n each).
LpModel build_goodness_unit_box(const RationalMatrix& a, std::size_t s);

/// Searches z in ker(A) ∩ C(l,u), z != 0, with one binary indicator per
/// coordinate and admissible region (including zero). Infeasible iff A is
/// (s,[l,u]_Z,0)-good. The first n variables are z.
LpModel build_goodness_general(const RationalMatrix& a, std::size_t s, const IntVector& lower,
                               const IntVector& upper);

/// Excludes exactly the point xstar (restricted to `vars`, default: all
/// integral variables) from the feasible set. Binary variables enter the cut
/// directly; other bounded integers get two indicators each. Requires xstar
/// to be feasible and every cut variable to be integral and bounded.
LpModel add_uniqueness_cut(const LpModel& model, const RationalVector& xstar,
                           std::optional<std::vector<std::size_t>> vars = std::nullopt);

/// Adds the row objective(x) = value.
LpModel pin_objective(const LpModel& model, const Rational& value);

/// Whether `solution` is the only optimum of `model` with respect to `vars`.
/// Integral variables are handled by a uniqueness cut plus objective pin;
/// when any variable is continuous, each one is minimised and maximised over
/// the optimal face instead. nullopt when a solver limit was hit.
std::optional<bool> is_unique_optimum(const LpModel& model, const RationalVector& solution,
                       const std::vector<std::size_t>& vars, const MilpOptions& options = {});

}  // namespace intrec
