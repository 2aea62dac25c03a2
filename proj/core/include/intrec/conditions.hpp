#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "intrec/constraint_set.hpp"
#include "intrec/kernel_enum.hpp"
#include "intrec/matrix.hpp"
#include "intrec/milp.hpp"
#include "intrec/rational.hpp"
#include "intrec/regions.hpp"
#include "intrec/support.hpp"

namespace intrec {

/// Region counts of an integer difference vector z in [l-u, u-l]_Z.
struct RegionProfile {
  std::array<std::size_t, 8> counts{};
  IntVector z;

  [[nodiscard]] std::size_t count(Region r) const { return counts[static_cast<std::size_t>(r)]; }
  /// |Sk+| + |Sk-| for k in 1..4.
  [[nodiscard]] std::size_t level(int k) const;
};

/// Throws PreconditionError when z lies outside [l-u, u-l].
RegionProfile region_profile(const IntVector& z, const IntVector& lower, const IntVector& upper);

/// z in C(l,u): |S4|+|S3| <= s, |S4|+|S2| <= s and 2|S4|+|S3|+|S2|+|S1| <= 2s.
bool in_C(const IntVector& z, std::size_t s, const IntVector& lower, const IntVector& upper);

enum class Method { Auto, Oracle, Milp, Spark, Lp };

std::string to_string(Method method);
Method parse_method(const std::string& text);

/// Outcome of a goodness, nullspace-property or individual-recovery check.
/// `good` is only meaningful when `conclusive`; an inconclusive verdict
/// (limit hit, or a sufficient condition failed) reports good = false.
struct GoodnessVerdict {
  bool good = true;
  bool conclusive = true;
  Method method = Method::Auto;
  /// The characterization that decided the verdict, e.g. "spark", "C(l,u)",
  /// "nsp", "nsp+", "split-nsp+", "tangent-cone".
  std::string route;
  /// Nonzero integral kernel vector violating the condition.
  std::optional<IntVector> witness;
  /// Support (or negative set) the violation refers to.
  std::optional<Support> support;
  /// A second point: for recovery checks the competing solution.
  std::optional<IntVector> partner;

  /// "good", "not-good" or "unknown".
  [[nodiscard]] std::string label() const;
};

std::string verdict_to_json(const GoodnessVerdict& verdict);

struct CheckOptions {
  Method method = Method::Auto;
  EnumerationBudget budget;
  MilpOptions milp;
  /// Individual recovery over Z^n: when the sufficient condition fails,
  /// search the bounded exact condition for a counterexample.
  bool seek_counterexample = true;
};

/// (s,X,0)-goodness. Z^n, R^n: spark(A) > 2s. Z^n_+, R^n_+, [0,u]_R: no
/// nonzero kernel vector with at most s positive and s negative entries
/// (sign-pattern LPs or the unit-box MILP). Integral boxes: ker(A) ∩ C(l,u)
/// = {0} by lattice enumeration or MILP. Auto falls back from enumeration to
/// MILP when the budget is exceeded.
GoodnessVerdict is_s_good_l0(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                             const CheckOptions& options = {});

enum class NspVariant { Nsp, NspPlus };

std::string to_string(NspVariant variant);

/// NSP(V): ||v_S||_1 < ||v_{S^c}||_1; NSP+(V): v_{S^c} >= 0 implies 1^T v > 0;
/// both for every nonzero v in ker(A) ∩ V, either for one support S or for
/// every |S| <= order.
struct NspQuery {
  NspVariant variant = NspVariant::Nsp;
  ConstraintSet v = ConstraintSet::reals(0);
  std::optional<Support> support;
  std::size_t order = 0;

  static NspQuery for_support(NspVariant variant, ConstraintSet v, Support s);
  static NspQuery of_order(NspVariant variant, ConstraintSet v, std::size_t order);
};

/// Integral boxes are enumerated; Z^n, R^n and real boxes use exact LPs
/// (rational kernel vectors scale into any box).
GoodnessVerdict nsp_check(const RationalMatrix& a, const NspQuery& query,
                          const EnumerationBudget& budget = {});

/// NSP+ of (A,-A) over [(-u; l), (u; -l)]_Z, stated in the original
/// coordinates: supports pick a sign per index, with |S| <= order counted in
/// [n]. Exact for (s,[l,u]_Z,1)-goodness.
GoodnessVerdict split_nsp_plus_check(const RationalMatrix& a, const IntVector& lower,
                                     const IntVector& upper, std::optional<Support> support,
                                     std::size_t order, const EnumerationBudget& budget = {});

/// (s,X,1)-goodness through the exact characterization for X: NSP(R^n) for
/// Z^n and R^n, NSP+(R^n) for Z^n_+, R^n_+ and [0,u]_R, NSP+([-u,u]_Z) for
/// [0,u]_Z, and the split NSP+ for [l,u]_Z and [-u,u]_Z.
GoodnessVerdict is_s_good_l1(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                             const CheckOptions& options = {});

/// Whether xhat is the unique minimiser of P1(X) for b = A·xhat. Exact for
/// integral boxes, Z^n_+ and every continuous set; for Z^n the sufficient
/// condition is tried first and the bounded exact condition second.
GoodnessVerdict indiv_recoverable(const RationalVector& xhat, const RationalMatrix& a,
                                  const ConstraintSet& x, const CheckOptions& options = {});

/// The 1×n matrix (1, δ, δ^2, ..., δ^{n-1}) with δ = max(u) + 1.
RationalMatrix delta_ary_matrix(const IntVector& upper);

/// The unique x in [0,u]_Z with Ax = b for the δ-ary matrix of u. Throws
/// NotInRange when b has no such representation.
IntVector delta_ary_decode(const RationalMatrix& a, const Rational& b, const IntVector& upper);

}  // namespace intrec
