#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intrec/rational.hpp"

namespace intrec {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearRow {
  RationalVector coeffs;
  Relation relation = Relation::Equal;
  Rational rhs;
  std::string name;
};

/// A linear or mixed-integer program with explicit per-variable bounds.
class LpModel {
 public:
  Sense sense = Sense::Minimize;
  RationalVector objective;
  std::vector<LinearRow> rows;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<bool> integer;
  std::vector<std::string> names;

  std::size_t add_variable(std::string name, std::optional<Rational> lo, std::optional<Rational> hi,
                           bool is_integer, Rational cost = 0);
  /// Binary variable with the given cost.
  std::size_t add_binary(std::string name, Rational cost = 0);

  /// Sparse row given as (variable, coefficient) pairs.
  void add_row(const std::vector<std::pair<std::size_t, Rational>>& terms, Relation relation,
               Rational rhs, std::string name = {});
  void add_dense_row(RationalVector coeffs, Relation relation, Rational rhs,
                     std::string name = {});

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }
  [[nodiscard]] std::size_t num_rows() const { return rows.size(); }
  [[nodiscard]] bool has_integers() const;

  /// Throws DimensionError / PreconditionError when malformed.
  void validate() const;

  [[nodiscard]] Rational objective_value(const RationalVector& x) const;
  /// Rows, bounds and integrality, exactly.
  [[nodiscard]] bool is_feasible(const RationalVector& x) const;
  /// Copy with integrality dropped.
  [[nodiscard]] LpModel relaxation() const;
};

/// LP-style text dump with exact rationals; round-trips through parse_lp_text.
std::string to_lp_text(const LpModel& model);
LpModel parse_lp_text(std::string_view text);

}  // namespace intrec
