#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "intrec/rational.hpp"

namespace intrec {

/// The admissible signal set X. Bounds are integral; l <= 0 <= u and l < u
/// componentwise whenever both are present.
class ConstraintSet {
 public:
  enum class Kind {
    AllIntegers,           // Z^n
    NonnegativeIntegers,   // Z^n_+
    BoxIntegers,           // [l,u]_Z
    SymmetricBoxIntegers,  // [-u,u]_Z
    NonnegBoxIntegers,     // [0,u]_Z
    BoxReals,              // [l,u]_R
    NonnegReals,           // R^n_+
    AllReals,              // R^n
  };

  static ConstraintSet integers(std::size_t n);
  static ConstraintSet nonneg_integers(std::size_t n);
  static ConstraintSet box_integers(IntVector lower, IntVector upper);
  static ConstraintSet symmetric_box(IntVector upper);
  static ConstraintSet nonneg_box(IntVector upper);
  static ConstraintSet box_reals(IntVector lower, IntVector upper);
  static ConstraintSet nonneg_reals(std::size_t n);
  static ConstraintSet reals(std::size_t n);

  /// Uniform bounds: every coordinate in [lower, upper].
  static ConstraintSet uniform_box(std::size_t n, long lower, long upper, bool integral = true);
  /// {0,1}^n.
  static ConstraintSet binary(std::size_t n);

  /// Rounds rational bounds inward (ceil l, floor u) before validation.
  static ConstraintSet from_rational_bounds(Kind kind, std::size_t n,
                                            const std::optional<RationalVector>& lower,
                                            const std::optional<RationalVector>& upper);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] bool is_integral() const;
  /// True when every coordinate has finite lower and upper bounds.
  [[nodiscard]] bool is_bounded() const;
  /// Effective bounds (e.g. 0 for nonnegative kinds, -u for symmetric boxes).
  [[nodiscard]] std::optional<Integer> lower(std::size_t i) const;
  [[nodiscard]] std::optional<Integer> upper(std::size_t i) const;
  /// Requires is_bounded().
  [[nodiscard]] IntVector lower_vector() const;
  [[nodiscard]] IntVector upper_vector() const;
  /// True when the set is {0,1}^n.
  [[nodiscard]] bool is_binary() const;
  /// True when every finite lower bound is zero.
  [[nodiscard]] bool is_nonnegative() const;

  /// Exact membership test (integrality and bounds).
  [[nodiscard]] bool contains(const RationalVector& x) const;
  [[nodiscard]] bool contains(const IntVector& x) const;

  /// The box [lower, upper] with this set's integrality; used to attach a
  /// finite box to Z^n or Z^n_+ before building a MILP.
  [[nodiscard]] ConstraintSet with_box(IntVector lower, IntVector upper) const;

  [[nodiscard]] std::string describe() const;

 private:
  ConstraintSet(Kind kind, std::size_t n, std::optional<IntVector> lower,
                std::optional<IntVector> upper);
  void validate() const;

  Kind kind_;
  std::size_t n_;
  std::optional<IntVector> lower_;
  std::optional<IntVector> upper_;
};

/// membership(x, X).
inline bool membership(const RationalVector& x, const ConstraintSet& set) {
  return set.contains(x);
}

std::string to_string(ConstraintSet::Kind kind);
/// Inverse of to_string: Z, Z+, box, symbox, nnbox, Rbox, R+, R.
ConstraintSet::Kind parse_set_kind(const std::string& text);

}  // namespace intrec
